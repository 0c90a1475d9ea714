#include <doctest.h>

#include <cstdint>
#include <random>

#include "modzeros/qseries.hpp"

using namespace modzeros;

namespace {

TruncatedSeries poly(int valuation, std::vector<long> c, int order)
{
    std::vector<Rational> r;
    for (long x : c)
        r.emplace_back(x);
    return TruncatedSeries(valuation, std::move(r), order);
}

// Naive product of integer polynomials truncated to n terms.
std::vector<std::int64_t> naive_mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::size_t n)
{
    std::vector<std::int64_t> c(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// prod (1 - q^n) from Euler's pentagonal number theorem.
std::vector<Integer> euler_product(std::size_t n)
{
    std::vector<Integer> c(n);
    for (long m = -100; m <= 100; ++m) {
        const long e = m * (3 * m - 1) / 2;
        if (e >= 0 && static_cast<std::size_t>(e) < n)
            c[static_cast<std::size_t>(e)] += (m % 2 == 0) ? 1 : -1;
    }
    return c;
}

TruncatedSeries random_series(std::mt19937& rng, int valuation, int terms, bool unit)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rational> c;
    for (int i = 0; i < terms; ++i)
        c.emplace_back(num(rng), den(rng));
    if (unit && c[0] == 0)
        c[0] = 1;
    for (auto& x : c)
        x.canonicalize();
    return TruncatedSeries(valuation, std::move(c));
}

} // namespace

TEST_CASE("normalized form and order bookkeeping")
{
    const TruncatedSeries s = poly(-1, {0, 0, 3, 4}, 3);
    CHECK(s.valuation() == 1);
    CHECK(s.order() == 3);
    CHECK(s.coeffs().size() == 2);
    CHECK(s.coeff(-5) == 0);
    CHECK_THROWS_AS(s.coeff(3), std::out_of_range);

    const TruncatedSeries z = poly(0, {0, 0}, 2);
    CHECK(z.is_zero());
    CHECK(z.valuation() == z.order());
    CHECK_THROWS_AS(poly(0, {1, 2, 3}, 2), std::invalid_argument);
}

TEST_CASE("series_mul")
{
    SUBCASE("difference of squares")
    {
        const auto p = poly(0, {1, 1}, 3) * poly(0, {1, -1}, 3);
        CHECK(p == poly(0, {1, 0, -1}, 3));
    }
    SUBCASE("result order is the smaller validity")
    {
        const auto p = poly(1, {1, 2}, 4) * poly(-1, {1, 5, 7}, 5);
        // min(4 + (-1), 5 + 1) = 3
        CHECK(p.order() == 3);
        CHECK(p.valuation() == 0);
    }
    SUBCASE("Delta times its inverse")
    {
        const auto d = delta_series(6);
        CHECK(series_mul(d, series_inv(d)).truncated(5) == TruncatedSeries::one(5));
    }
    SUBCASE("q prod_{n<=3} (1-q^n)^24 mod q^4")
    {
        TruncatedSeries p = TruncatedSeries::one(3);
        for (int n = 1; n <= 3; ++n) {
            std::vector<long> f(3, 0);
            f[0] = 1;
            if (n < 3)
                f[static_cast<std::size_t>(n)] = -1;
            p = p * series_pow(poly(0, f, 3), 24);
        }
        CHECK(p.shifted(1) == poly(1, {1, -24, 252}, 4));
    }
}

TEST_CASE("series_inv")
{
    CHECK(series_inv(poly(0, {1, -1}, 4), 4) == poly(0, {1, 1, 1, 1}, 4));

    const auto inv_delta = series_inv(delta_series(4));
    CHECK(inv_delta.valuation() == -1);
    CHECK(inv_delta.order() == 2);
    // 1/(1 - 24q + 252q^2) by hand: 1, 24, 24*24 - 252.
    CHECK(inv_delta == poly(-1, {1, 24, 324}, 2));

    CHECK(series_inv(eisenstein_series(4, 3), 3) == poly(0, {1, -240, 55440}, 3));

    SUBCASE("requested order never exceeds what the operand determines")
    {
        CHECK(series_inv(poly(0, {2, 1}, 2), 10).order() == 2);
    }
    SUBCASE("zero series is not invertible")
    {
        CHECK_THROWS_AS(series_inv(TruncatedSeries::zero(5), 5), std::domain_error);
    }
    SUBCASE("Newton and long division agree")
    {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_series(rng, 0, 40, true);
            CHECK(detail::inverse_by_newton(a.coeffs(), 40) == detail::inverse_by_division(a.coeffs(), 40));
        }
    }
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_series(rng, trial % 3 - 1, 8, true);
        const auto b = random_series(rng, trial % 2, 7, false);
        const auto c = random_series(rng, 0, 9, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        const auto lhs = a * (b + c);
        const auto rhs = a * b + a * c;
        CHECK(lhs == rhs);
        const auto unit = a * series_inv(a);
        CHECK(unit == TruncatedSeries::one(unit.order()));
        CHECK(unit.order() == a.order() - a.valuation());
    }
}

TEST_CASE("sigma")
{
    CHECK(sigma(1, 3) == 1);
    CHECK(sigma(2, 3) == 9);
    CHECK(sigma(2, 5) == 33);
    CHECK(sigma(12, 1) == 28);
    CHECK(sigma(36, 0) == 9);
    CHECK_THROWS_AS(sigma(0, 3), std::domain_error);
    CHECK_THROWS_AS(sigma(-4, 1), std::domain_error);
}

TEST_CASE("gamma_k matches the tabulated values")
{
    CHECK(gamma_k(4) == -240);
    CHECK(gamma_k(6) == 504);
    CHECK(gamma_k(8) == -480);
    CHECK(gamma_k(10) == 264);
    CHECK(gamma_k(12) == Rational(-65520, 691));
    CHECK(gamma_k(14) == 24);
    CHECK(gamma_k(0) == 0);
    CHECK_THROWS_AS(gamma_k(2), std::domain_error);
    CHECK_THROWS_AS(gamma_k(16), std::domain_error);
    CHECK_THROWS_AS(gamma_k(5), std::domain_error);
}

TEST_CASE("eisenstein_series")
{
    CHECK(eisenstein_series(4, 3) == poly(0, {1, 240, 2160}, 3));
    CHECK(eisenstein_series(6, 2) == poly(0, {1, -504}, 2));
    CHECK(eisenstein_series(6, 3) == poly(0, {1, -504, -16632}, 3));
    for (int k : {4, 6, 8, 10, 14})
        CHECK(eisenstein_series(k, 30).is_integral());
    CHECK_FALSE(eisenstein_series(12, 3).is_integral());
    // E_4^2 = E_8 and E_4 E_6 = E_10 (dim M_8 = dim M_10 = 1).
    CHECK(eisenstein_series(4, 25) * eisenstein_series(4, 25) == eisenstein_series(8, 25));
    CHECK(eisenstein_series(4, 25) * eisenstein_series(6, 25) == eisenstein_series(10, 25));
    CHECK_THROWS_AS(eisenstein_series(2, 5), std::domain_error);
}

TEST_CASE("delta_series")
{
    CHECK(delta_series(4) == poly(1, {1, -24, 252}, 4));
    CHECK(delta_series(2) == poly(1, {1}, 2));
    CHECK_THROWS_AS(delta_series(1), std::domain_error);

    SUBCASE("q^4 coefficient from multiplying out prod_{n<=3} (1-q^n)^24")
    {
        std::vector<std::int64_t> p{1};
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::int64_t> f(static_cast<std::size_t>(n) + 1, 0);
            f[0] = 1;
            f[static_cast<std::size_t>(n)] = -1;
            for (int e = 0; e < 24; ++e)
                p = naive_mul(p, f, 4);
        }
        CHECK(delta_series(5).coeff(4) == Rational(p[3]));
        CHECK(delta_series(5).coeff(4) == -1472);
    }
    SUBCASE("agrees with the pentagonal-number product raised to the 24th power")
    {
        constexpr std::size_t n = 40;
        const std::vector<Integer> e = euler_product(n);
        std::vector<Integer> acc(n);
        acc[0] = 1;
        for (int rep = 0; rep < 24; ++rep) {
            std::vector<Integer> next(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; i + j < n; ++j)
                    next[i + j] += acc[i] * e[j];
            acc = std::move(next);
        }
        const TruncatedSeries d = delta_series(static_cast<int>(n) + 1);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(d.coeff(static_cast<int>(i) + 1) == Rational(acc[i]));
    }
}

TEST_CASE("j_series")
{
    const TruncatedSeries j = j_series(21);
    CHECK(j.valuation() == -1);
    CHECK(j.order() == 21);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.is_integral());
    for (int p = 1; p < 21; ++p)
        CHECK(j.coeff(p) > 0);

    for (int n : {10, 20}) {
        const TruncatedSeries e4 = eisenstein_series(4, n);
        const TruncatedSeries lhs = (j_series(n) * delta_series(n + 1)).truncated(n);
        CHECK(lhs == (e4 * e4 * e4).truncated(n));
    }
    CHECK(j_series(0).coeffs().size() == 1);
}

TEST_CASE("series json schema and round trip")
{
    const nlohmann::json j = poly(-1, {1, 0, 3}, 2) * TruncatedSeries(0, {Rational(1, 2), Rational(1, 3)});
    CHECK(j.at("valuation") == -1);
    CHECK(j.at("order") == 1);
    CHECK(j.at("coeffs") == nlohmann::json::array({"1/2", "1/3"}));

    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_series(rng, trial - 5, 6, false);
        const nlohmann::json dumped = s;
        CHECK(nlohmann::json::parse(dumped.dump()).get<TruncatedSeries>() == s);
    }
}
