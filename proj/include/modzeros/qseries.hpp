#pragma once

#include <vector>

#include <json.hpp>

#include "modzeros/rational.hpp"

namespace modzeros {

/// Laurent series in the nome q with exact rational coefficients, known
/// modulo q^order.
///
/// coeffs()[i] is the coefficient of q^(valuation + i) and
/// coeffs().size() == order - valuation. A nonzero series is kept
/// normalized: its coefficient at the valuation is nonzero. The series
/// that is zero modulo q^order has valuation == order and no coefficients.
///
/// No operation ever extends precision: the order of every result is the
/// largest order that the operands actually determine.
class TruncatedSeries {
public:
    TruncatedSeries() = default;

    /// Series with order = valuation + coeffs.size().
    TruncatedSeries(int valuation, std::vector<Rational> coeffs);

    /// Explicit order; coeffs are zero-padded up to it. Throws
    /// std::invalid_argument if coeffs do not fit below q^order.
    TruncatedSeries(int valuation, std::vector<Rational> coeffs, int order);

    static TruncatedSeries zero(int order);
    static TruncatedSeries one(int order);
    static TruncatedSeries monomial(const Rational& c, int power, int order);

    int valuation() const { return valuation_; }
    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of q^power; zero below the valuation. Throws
    /// std::out_of_range for power >= order.
    Rational coeff(int power) const;

    /// Same series known modulo q^min(order, new_order).
    TruncatedSeries truncated(int new_order) const;

    /// Multiply by q^n (valuation and order both move by n).
    TruncatedSeries shifted(int n) const;

    /// Unit part q^(-valuation) * this; valuation 0.
    TruncatedSeries unit_part() const { return shifted(-valuation_); }

    bool is_integral() const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    void normalize();

    int valuation_ = 0;
    std::vector<Rational> coeffs_;
    int order_ = 0;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a);

/// Exact product. Valuations add; the result order is
/// min(a.order + b.valuation, b.order + a.valuation).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

/// Multiplicative inverse, known modulo q^order (capped by what `a`
/// determines: a.order - 2 * a.valuation). Result valuation is -a.valuation.
/// Throws std::domain_error("non-invertible") for the zero series.
TruncatedSeries series_inv(const TruncatedSeries& a, int order);
TruncatedSeries series_inv(const TruncatedSeries& a);

/// Binary exponentiation; a^0 is 1 with a's relative precision.
TruncatedSeries series_pow(const TruncatedSeries& a, unsigned exponent);

namespace detail {
// Both inversion routes work on the unit part, returning `terms` coefficients.
std::vector<Rational> inverse_by_newton(const std::vector<Rational>& unit, int terms);
std::vector<Rational> inverse_by_division(const std::vector<Rational>& unit, int terms);
} // namespace detail

/// Divisor power sum sigma_s(n). Throws std::domain_error for n <= 0.
Integer sigma(long n, unsigned s);

/// 2k / B_k for k in {4, 6, 8, 10, 12, 14}; gamma_k(0) = 0 (E_0 = 1).
Rational gamma_k(int k);

/// E_k = 1 - gamma(k) sum sigma_{k-1}(n) q^n modulo q^order, k in {4,...,14}.
TruncatedSeries eisenstein_series(int k, int order);

/// prod_{n>=1} (1 - q^n)^24 modulo q^order (the unit part of Delta).
TruncatedSeries eta24_unit(int order);

/// Delta = q prod (1 - q^n)^24 modulo q^order, order >= 2.
TruncatedSeries delta_series(int order);

/// j = E_4^3 / Delta modulo q^order (valuation -1), order >= 0.
TruncatedSeries j_series(int order);

void to_json(nlohmann::json& j, const TruncatedSeries& s);
void from_json(const nlohmann::json& j, TruncatedSeries& s);

} // namespace modzeros
