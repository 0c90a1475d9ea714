#include "modzeros/qseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace modzeros {

TruncatedSeries::TruncatedSeries(int valuation, std::vector<Rational> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)),
      order_(valuation + static_cast<int>(coeffs_.size()))
{
    normalize();
}

TruncatedSeries::TruncatedSeries(int valuation, std::vector<Rational> coeffs, int order)
    : valuation_(valuation), coeffs_(std::move(coeffs)), order_(order)
{
    if (order < valuation || static_cast<int>(coeffs_.size()) > order - valuation)
        throw std::invalid_argument("TruncatedSeries: coefficients exceed the stated order");
    coeffs_.resize(static_cast<std::size_t>(order - valuation));
    normalize();
}

TruncatedSeries TruncatedSeries::zero(int order) { return TruncatedSeries(order, {}, order); }

TruncatedSeries TruncatedSeries::one(int order) { return monomial(1, 0, order); }

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int power, int order)
{
    if (order <= power)
        return zero(order);
    return TruncatedSeries(power, {c}, order);
}

void TruncatedSeries::normalize()
{
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& x) { return x != 0; });
    const auto lead = static_cast<int>(first - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), first);
    valuation_ += lead;
}

Rational TruncatedSeries::coeff(int power) const
{
    if (power >= order_)
        throw std::out_of_range("coefficient of q^" + std::to_string(power) + " is beyond the series order " +
                                std::to_string(order_));
    if (power < valuation_)
        return 0;
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const
{
    if (new_order >= order_)
        return *this;
    if (new_order <= valuation_)
        return zero(new_order);
    return TruncatedSeries(valuation_,
                           std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + (new_order - valuation_)));
}

TruncatedSeries TruncatedSeries::shifted(int n) const
{
    TruncatedSeries s = *this;
    s.valuation_ += n;
    s.order_ += n;
    return s;
}

bool TruncatedSeries::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int order = std::min(a.order(), b.order());
    const int low = std::min(a.valuation(), b.valuation());
    if (low >= order)
        return TruncatedSeries::zero(order);
    std::vector<Rational> c(static_cast<std::size_t>(order - low));
    for (int p = low; p < order; ++p)
        c[static_cast<std::size_t>(p - low)] = a.coeff(p) + b.coeff(p);
    return TruncatedSeries(low, std::move(c), order);
}

TruncatedSeries operator-(const TruncatedSeries& a) { return Rational(-1) * a; }

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a)
{
    std::vector<Rational> out = a.coeffs();
    for (auto& x : out)
        x *= c;
    return TruncatedSeries(a.valuation(), std::move(out), a.order());
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    const int val = a.valuation() + b.valuation();
    if (a.is_zero() || b.is_zero() || val >= order)
        return TruncatedSeries::zero(order);
    const auto n = static_cast<std::size_t>(order - val);
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < std::min(n, x.size()); ++i) {
        if (x[i] == 0)
            continue;
        const std::size_t jmax = std::min(n - i, y.size());
        for (std::size_t j = 0; j < jmax; ++j)
            c[i + j] += x[i] * y[j];
    }
    return TruncatedSeries(val, std::move(c), order);
}

namespace detail {

namespace {

std::vector<Rational> mul_trunc(const std::vector<Rational>& x, const std::vector<Rational>& y, std::size_t n)
{
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < std::min(n, x.size()); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < std::min(n - i, y.size()); ++j)
            c[i + j] += x[i] * y[j];
    }
    return c;
}

} // namespace

std::vector<Rational> inverse_by_division(const std::vector<Rational>& unit, int terms)
{
    const auto n = static_cast<std::size_t>(std::max(terms, 0));
    std::vector<Rational> b(n);
    if (n == 0)
        return b;
    const Rational lead_inv = 1 / unit.at(0);
    b[0] = lead_inv;
    for (std::size_t i = 1; i < n; ++i) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= std::min(i, unit.size() - 1); ++j)
            acc += unit[j] * b[i - j];
        b[i] = -acc * lead_inv;
    }
    return b;
}

std::vector<Rational> inverse_by_newton(const std::vector<Rational>& unit, int terms)
{
    const auto n = static_cast<std::size_t>(std::max(terms, 0));
    if (n == 0)
        return {};
    // b <- b (2 - u b), doubling the number of correct terms each step.
    std::vector<Rational> b{1 / unit.at(0)};
    std::size_t have = 1;
    while (have < n) {
        const std::size_t next = std::min(2 * have, n);
        std::vector<Rational> ub = mul_trunc(unit, b, next);
        for (auto& x : ub)
            x = -x;
        ub[0] += 2;
        b = mul_trunc(b, ub, next);
        have = next;
    }
    return b;
}

} // namespace detail

TruncatedSeries series_inv(const TruncatedSeries& a, int order)
{
    if (a.is_zero())
        throw std::domain_error("non-invertible: series is zero to its known order");
    const int val = a.valuation();
    const int result_order = std::min(order, a.order() - 2 * val);
    const int terms = result_order + val;
    if (terms <= 0)
        return TruncatedSeries::zero(result_order);
    constexpr int kNewtonThreshold = 16;
    std::vector<Rational> b = terms < kNewtonThreshold ? detail::inverse_by_division(a.coeffs(), terms)
                                                       : detail::inverse_by_newton(a.coeffs(), terms);
    return TruncatedSeries(-val, std::move(b), result_order);
}

TruncatedSeries series_inv(const TruncatedSeries& a) { return series_inv(a, a.order() - 2 * a.valuation()); }

TruncatedSeries series_pow(const TruncatedSeries& a, unsigned exponent)
{
    if (a.is_zero())
        return exponent == 0 ? TruncatedSeries::one(0) : TruncatedSeries::zero(a.order());
    // Relative precision is preserved; valuation scales with the exponent.
    const int rel = a.order() - a.valuation();
    TruncatedSeries base = a.unit_part();
    TruncatedSeries acc = TruncatedSeries::one(rel);
    for (unsigned e = exponent; e != 0; e >>= 1) {
        if (e & 1U)
            acc = series_mul(acc, base);
        if (e > 1)
            base = series_mul(base, base);
    }
    return acc.shifted(a.valuation() * static_cast<int>(exponent));
}

Integer sigma(long n, unsigned s)
{
    if (n <= 0)
        throw std::domain_error("sigma: n must be positive, got " + std::to_string(n));
    Integer total = 0;
    Integer p;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), s);
        total += p;
        const long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), s);
            total += p;
        }
    }
    return total;
}

namespace {

// B_0..B_n from sum_{j<=m} C(m+1, j) B_j = 0 (B_1 = -1/2 convention).
std::vector<Rational> bernoulli_numbers(int n)
{
    std::vector<Rational> b(static_cast<std::size_t>(n + 1));
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational acc = 0;
        Integer binom = 1; // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * b[static_cast<std::size_t>(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[static_cast<std::size_t>(m)] = -acc / (m + 1);
    }
    return b;
}

} // namespace

Rational gamma_k(int k)
{
    if (k == 0)
        return 0;
    if (k < 4 || k > 14 || k % 2 != 0)
        throw std::domain_error("gamma_k: weight " + std::to_string(k) + " not in {0,4,6,8,10,12,14}");
    static const std::vector<Rational> bernoulli = bernoulli_numbers(14);
    return Rational(2 * k) / bernoulli[static_cast<std::size_t>(k)];
}

TruncatedSeries eisenstein_series(int k, int order)
{
    if (k < 4)
        throw std::domain_error("eisenstein_series: weight must be >= 4, got " + std::to_string(k));
    const Rational g = gamma_k(k);
    if (order <= 0)
        return TruncatedSeries::zero(order);
    std::vector<Rational> c(static_cast<std::size_t>(order));
    c[0] = 1;
    for (int n = 1; n < order; ++n)
        c[static_cast<std::size_t>(n)] = -g * Rational(sigma(n, static_cast<unsigned>(k - 1)));
    return TruncatedSeries(0, std::move(c), order);
}

TruncatedSeries eta24_unit(int order)
{
    if (order <= 0)
        return TruncatedSeries::zero(order);
    // prod (1 - q^n) by in-place sparse updates, then the 24th power by
    // binary exponentiation.
    const auto len = static_cast<std::size_t>(order);
    std::vector<Rational> p(len);
    p[0] = 1;
    for (std::size_t n = 1; n < len; ++n)
        for (std::size_t i = len - 1; i >= n; --i)
            p[i] -= p[i - n];
    return series_pow(TruncatedSeries(0, std::move(p), order), 24);
}

TruncatedSeries delta_series(int order)
{
    if (order < 2)
        throw std::domain_error("delta_series: order must be >= 2, got " + std::to_string(order));
    return eta24_unit(order - 1).shifted(1);
}

TruncatedSeries j_series(int order)
{
    if (order < 0)
        throw std::domain_error("j_series: order must be >= 0, got " + std::to_string(order));
    const TruncatedSeries e4 = eisenstein_series(4, order + 1);
    const TruncatedSeries e4_cubed = series_mul(series_mul(e4, e4), e4);
    return series_mul(e4_cubed, series_inv(delta_series(order + 2))).truncated(order);
}

void to_json(nlohmann::json& j, const TruncatedSeries& s)
{
    // Full window from the valuation; a zero series has no coefficients.
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coeffs())
        coeffs.push_back(to_string(c));
    j = nlohmann::json{{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, TruncatedSeries& s)
{
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(parse_rational(c.get<std::string>()));
    s = TruncatedSeries(j.at("valuation").get<int>(), std::move(coeffs), j.at("order").get<int>());
}

} // namespace modzeros
