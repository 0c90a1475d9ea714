#include "modzeros/faber.hpp"

#include <stdexcept>
#include <string>

namespace modzeros {

JPowerTable j_power_table(int degree)
{
    if (degree < 0)
        throw std::domain_error("j_power_table: degree must be non-negative");
    // j^r = q^-r (1 + 744 q + ...)^r; we need its unit part to D+1 terms.
    const TruncatedSeries unit = j_series(degree + 1).unit_part().truncated(degree + 1);
    std::vector<std::vector<Integer>> rows;
    TruncatedSeries power = TruncatedSeries::one(degree + 1);
    for (int r = 0; r <= degree; ++r) {
        std::vector<Integer> row(static_cast<std::size_t>(r + 1));
        for (int s = 0; s <= r; ++s) {
            const Rational c = power.coeff(r - s);
            row[static_cast<std::size_t>(s)] = c.get_num();
        }
        rows.push_back(std::move(row));
        power = series_mul(power, unit);
    }
    return JPowerTable(std::move(rows));
}

std::vector<Rational> weight_kernel(const WeightDecomposition& weight, int degree)
{
    const int n = degree + 1;
    TruncatedSeries denom = series_pow(eta24_unit(n), static_cast<unsigned>(weight.ell));
    if (weight.k_prime != 0)
        denom = series_mul(denom, eisenstein_series(weight.k_prime, n));
    const TruncatedSeries inv = series_inv(denom, n);
    std::vector<Rational> a(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        a[static_cast<std::size_t>(r)] = inv.coeff(r);
    return a;
}

PrincipalPart principal_part(const ModularFormSpec& spec)
{
    const int n = spec.degree() + 1;
    const std::vector<Rational> kernel = weight_kernel(spec.weight(), spec.degree());
    const TruncatedSeries y(0, spec.unit_coeffs(), n);
    const TruncatedSeries p = series_mul(y, TruncatedSeries(0, kernel, n));
    PrincipalPart out;
    out.A.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        out.A[static_cast<std::size_t>(r)] = p.coeff(r);
    return out;
}

Rational FaberPoly::operator()(const Rational& t) const
{
    Rational acc = 0;
    for (const auto& c : coeffs)
        acc = acc * t + c;
    return acc;
}

FaberPoly faber_polynomial(const ModularFormSpec& spec)
{
    const int degree = spec.degree();
    const PrincipalPart pp = principal_part(spec);
    const JPowerTable c = j_power_table(degree);

    // sum_{r=s}^{D} c(r,s) x_{D-r} = A(D-s), unitriangular; s = D gives x_0.
    std::vector<Rational> x(static_cast<std::size_t>(degree + 1));
    for (int s = degree; s >= 0; --s) {
        Rational rhs = pp.A[static_cast<std::size_t>(degree - s)];
        for (int r = s + 1; r <= degree; ++r)
            rhs -= Rational(c.at(r, s)) * x[static_cast<std::size_t>(degree - r)];
        x[static_cast<std::size_t>(degree - s)] = rhs;
    }
    return FaberPoly{spec.k(), spec.m(), std::move(x)};
}

FaberPoly closed_form_faber(int k, int m)
{
    const WeightDecomposition w = decompose_weight(k);
    if (w.k_prime != 0 || w.ell < 1)
        throw std::domain_error("closed forms are known only for k = 12 ell, ell >= 1; got k=" + std::to_string(k));
    const Integer l = w.ell;
    const int degree = w.ell - m;
    if (m < 0)
        throw std::domain_error("vanishing order must be non-negative");
    switch (degree) {
    case 1:
        return FaberPoly{k, m, {1, Rational(2 * Integer(k) - 744)}};
    case 2:
        return FaberPoly{k, m, {1, Rational(24 * (l - 62)), Rational(36 * (8 * l * l - 495 * l + 4438))}};
    case 3:
        return FaberPoly{k, m,
                         {1, Rational(24 * (l - 93)), Rational(36 * (29721 - 991 * l + 8 * l * l)),
                          Rational(32 * (-1152093 + 118990 * l - 6669 * l * l + 72 * l * l * l))}};
    default:
        throw std::domain_error("no closed form for m=" + std::to_string(m) + " at weight " + std::to_string(k) +
                                " (need m in {ell-1, ell-2, ell-3})");
    }
}

bool closed_form_check(int k, int m)
{
    const FaberPoly expected = closed_form_faber(k, m);
    return faber_polynomial(miller_form_spec(k, m)) == expected;
}

std::vector<Rational> renormalized_coeffs(const FaberPoly& f, int k)
{
    std::vector<Rational> out;
    Rational limit = 1; // (2k)^s / s!
    for (int s = 0; s <= f.degree(); ++s) {
        if (s > 0)
            limit = limit * (2 * k) / s;
        out.push_back(f.coeffs[static_cast<std::size_t>(s)] / limit - 1);
    }
    return out;
}

void to_json(nlohmann::json& j, const FaberPoly& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coeffs)
        coeffs.push_back(to_string(c));
    j = nlohmann::json{{"k", f.k}, {"m", f.m}, {"D", f.degree()}, {"coeffs_desc", coeffs}};
}

} // namespace modzeros
