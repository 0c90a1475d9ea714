#pragma once

#include <vector>

#include <json.hpp>

#include "modzeros/modforms.hpp"
#include "modzeros/rational.hpp"

namespace modzeros {

/// c(r, s) = coefficient of q^(-s) in j^r for 0 <= s <= r <= D.
class JPowerTable {
public:
    explicit JPowerTable(std::vector<std::vector<Integer>> rows) : rows_(std::move(rows)) {}

    int degree() const { return static_cast<int>(rows_.size()) - 1; }
    const Integer& at(int r, int s) const { return rows_.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(s)); }

private:
    std::vector<std::vector<Integer>> rows_;
};

JPowerTable j_power_table(int degree);

/// Coefficients A_k(0..D) of 1 / (U^ell E_{k'}) modulo q^(D+1), where
/// U = prod (1 - q^n)^24. Depends on the weight only.
std::vector<Rational> weight_kernel(const WeightDecomposition& weight, int degree);

/// Principal part of f / (Delta^ell E_{k'}): the coefficients of
/// q^(-D)..q^0, i.e. y * weight_kernel modulo q^(D+1).
struct PrincipalPart {
    std::vector<Rational> A;
};

PrincipalPart principal_part(const ModularFormSpec& spec);

/// F_f(t) = x_0 t^D + x_1 t^(D-1) + ... + x_D with f = Delta^ell E_{k'} F_f(j).
struct FaberPoly {
    int k = 0;
    int m = 0;
    std::vector<Rational> coeffs; // x_0..x_D, descending powers

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rational operator()(const Rational& t) const;

    friend bool operator==(const FaberPoly&, const FaberPoly&) = default;
};

FaberPoly faber_polynomial(const ModularFormSpec& spec);

/// Known closed forms of F_{12 ell, m} for m = ell-1, ell-2, ell-3.
/// Throws std::domain_error unless k = 12 ell with ell >= 1 and m in that set (m >= 0).
FaberPoly closed_form_faber(int k, int m);

/// True iff the computed Faber polynomial of f_{k,m} equals closed_form_faber(k, m).
bool closed_form_check(int k, int m);

/// x_s / ((2k)^s / s!) - 1 for s = 0..D.
std::vector<Rational> renormalized_coeffs(const FaberPoly& f, int k);

void to_json(nlohmann::json& j, const FaberPoly& f);

} // namespace modzeros
