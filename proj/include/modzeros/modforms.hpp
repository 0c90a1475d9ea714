#pragma once

#include <vector>

#include <json.hpp>

#include "modzeros/qseries.hpp"
#include "modzeros/rational.hpp"

namespace modzeros {

/// k = 12 * ell + k_prime with k_prime in {0, 4, 6, 8, 10, 14}.
struct WeightDecomposition {
    int k = 0;
    int ell = 0;
    int k_prime = 0;

    friend bool operator==(const WeightDecomposition&, const WeightDecomposition&) = default;
};

/// Throws std::domain_error for odd k, k < 0 or k == 2 (M_2 = {0}).
WeightDecomposition decompose_weight(int k);

/// A form f = q^m (y(0) + y(1) q + ... + y(D) q^D) + O(q^(ell+1)) of weight k.
/// Only this leading window enters the Faber polynomial, so it is all we keep.
class ModularFormSpec {
public:
    /// Throws std::domain_error if m is outside [0, ell], and
    /// std::invalid_argument if unit_coeffs has the wrong length or y(0) == 0.
    ModularFormSpec(WeightDecomposition weight, int m, std::vector<Rational> unit_coeffs);

    const WeightDecomposition& weight() const { return weight_; }
    int k() const { return weight_.k; }
    int m() const { return m_; }
    int degree() const { return weight_.ell - m_; }
    const std::vector<Rational>& unit_coeffs() const { return unit_coeffs_; }

    friend bool operator==(const ModularFormSpec&, const ModularFormSpec&) = default;

private:
    WeightDecomposition weight_;
    int m_;
    std::vector<Rational> unit_coeffs_;
};

/// Miller basis element f_{k,m} = q^m + O(q^(ell+1)): window (1, 0, ..., 0).
ModularFormSpec miller_form_spec(int k, int m);

/// f = q^m (1 + a(1) q + ... + a(D) q^D) + O(q^(ell+1)); a must hold D = ell - m values.
ModularFormSpec custom_form_spec(int k, int m, const std::vector<Rational>& a);

/// Reads the window q^m..q^ell off a full expansion of a weight-k form.
/// The series must be known to order >= ell + 1 and start at valuation m <= ell.
ModularFormSpec form_spec_from_series(int k, const TruncatedSeries& f);

/// The ell + 1 Miller basis series of M_k modulo q^order (order >= ell + 1),
/// element i equal to q^i + O(q^(ell+1)).
///
/// Spanning set: Delta^j E_4^a E_6^b with 4a + 6b = k - 12j, b in {0, 1},
/// j = 0..ell; the coefficient matrix on q^0..q^ell is upper unitriangular
/// and is cleared above the diagonal by exact row operations.
std::vector<TruncatedSeries> miller_basis_series(int k, int order);

void to_json(nlohmann::json& j, const ModularFormSpec& spec);
ModularFormSpec form_spec_from_json(const nlohmann::json& j);

} // namespace modzeros
