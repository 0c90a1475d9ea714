#include "modzeros/modforms.hpp"

#include <stdexcept>
#include <string>

namespace modzeros {

WeightDecomposition decompose_weight(int k)
{
    if (k < 0 || k % 2 != 0 || k == 2)
        throw std::domain_error("weight must be even, non-negative and not 2; got " + std::to_string(k));
    const int kp = (k % 12 == 2) ? 14 : k % 12;
    return {k, (k - kp) / 12, kp};
}

ModularFormSpec::ModularFormSpec(WeightDecomposition weight, int m, std::vector<Rational> unit_coeffs)
    : weight_(weight), m_(m), unit_coeffs_(std::move(unit_coeffs))
{
    if (m < 0 || m > weight_.ell)
        throw std::domain_error("vanishing order m=" + std::to_string(m) + " outside [0, " +
                                std::to_string(weight_.ell) + "] for weight " + std::to_string(weight_.k));
    if (static_cast<int>(unit_coeffs_.size()) != degree() + 1)
        throw std::invalid_argument("expected " + std::to_string(degree() + 1) + " leading coefficients, got " +
                                    std::to_string(unit_coeffs_.size()));
    if (unit_coeffs_.front() == 0)
        throw std::invalid_argument("leading coefficient y(0) must be nonzero");
}

ModularFormSpec miller_form_spec(int k, int m)
{
    const WeightDecomposition w = decompose_weight(k);
    if (m < 0 || m > w.ell)
        throw std::domain_error("vanishing order m=" + std::to_string(m) + " outside [0, " + std::to_string(w.ell) +
                                "] for weight " + std::to_string(k));
    std::vector<Rational> y(static_cast<std::size_t>(w.ell - m + 1));
    y[0] = 1;
    return ModularFormSpec(w, m, std::move(y));
}

ModularFormSpec custom_form_spec(int k, int m, const std::vector<Rational>& a)
{
    const WeightDecomposition w = decompose_weight(k);
    if (m < 0 || m > w.ell)
        throw std::domain_error("vanishing order m=" + std::to_string(m) + " outside [0, " + std::to_string(w.ell) +
                                "] for weight " + std::to_string(k));
    if (static_cast<int>(a.size()) != w.ell - m)
        throw std::invalid_argument("custom form of weight " + std::to_string(k) + " with m=" + std::to_string(m) +
                                    " needs " + std::to_string(w.ell - m) + " coefficients, got " +
                                    std::to_string(a.size()));
    std::vector<Rational> y{Rational(1)};
    y.insert(y.end(), a.begin(), a.end());
    return ModularFormSpec(w, m, std::move(y));
}

ModularFormSpec form_spec_from_series(int k, const TruncatedSeries& f)
{
    const WeightDecomposition w = decompose_weight(k);
    if (f.order() < w.ell + 1)
        throw std::invalid_argument("series must be known to order ell+1 = " + std::to_string(w.ell + 1));
    const int m = f.valuation();
    if (f.is_zero() || m > w.ell || m < 0)
        throw std::domain_error("series does not have a vanishing order in [0, ell]");
    std::vector<Rational> y;
    for (int p = m; p <= w.ell; ++p)
        y.push_back(f.coeff(p));
    return ModularFormSpec(w, m, std::move(y));
}

std::vector<TruncatedSeries> miller_basis_series(int k, int order)
{
    const WeightDecomposition w = decompose_weight(k);
    if (order < w.ell + 1)
        throw std::domain_error("miller_basis_series: order must be at least ell+1 = " + std::to_string(w.ell + 1));

    const TruncatedSeries e4 = eisenstein_series(4, order);
    const TruncatedSeries e6 = eisenstein_series(6, order);
    const TruncatedSeries delta = delta_series(order + 1);

    std::vector<TruncatedSeries> rows;
    for (int j = 0; j <= w.ell; ++j) {
        const int rest = k - 12 * j;
        const int b = (rest % 4 == 0) ? 0 : 1;
        const int a = (rest - 6 * b) / 4;
        TruncatedSeries g = series_mul(series_pow(delta, static_cast<unsigned>(j)), series_pow(e4, static_cast<unsigned>(a)));
        if (b == 1)
            g = series_mul(g, e6);
        rows.push_back(g.truncated(order));
    }
    // Row j has valuation j and leading coefficient 1; clear column i above the diagonal.
    for (int i = w.ell; i >= 0; --i) {
        for (int r = 0; r < i; ++r) {
            const Rational c = rows[static_cast<std::size_t>(r)].coeff(i);
            if (c != 0)
                rows[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r)] - c * rows[static_cast<std::size_t>(i)];
        }
    }
    return rows;
}

void to_json(nlohmann::json& j, const ModularFormSpec& spec)
{
    nlohmann::json y = nlohmann::json::array();
    for (const auto& c : spec.unit_coeffs())
        y.push_back(to_string(c));
    j = nlohmann::json{{"k", spec.k()}, {"m", spec.m()}, {"unit_coeffs", y}};
}

ModularFormSpec form_spec_from_json(const nlohmann::json& j)
{
    std::vector<Rational> y;
    for (const auto& c : j.at("unit_coeffs"))
        y.push_back(parse_rational(c.get<std::string>()));
    return ModularFormSpec(decompose_weight(j.at("k").get<int>()), j.at("m").get<int>(), std::move(y));
}

} // namespace modzeros
