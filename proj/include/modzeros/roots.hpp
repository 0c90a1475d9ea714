#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <string>

#include "modzeros/faber.hpp"

namespace modzeros {

using Complex = std::complex<double>;

/// Monic polynomial with complex double coefficients in descending order.
class ComplexPoly {
public:
    /// Divides through by the leading coefficient. Throws std::invalid_argument
    /// if the degree is < 1, the leading coefficient is zero, or any
    /// coefficient is not finite.
    explicit ComplexPoly(std::vector<Complex> coeffs_desc);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    Complex operator()(Complex z) const;

private:
    std::vector<Complex> coeffs_;
};

struct RootSet {
    std::vector<Complex> roots;
    double residual = 0.0; // max |p(root)|
};

class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, std::vector<Complex> best)
        : std::runtime_error(what), best_iterate_(std::move(best))
    {
    }
    const std::vector<Complex>& best_iterate() const { return best_iterate_; }

private:
    std::vector<Complex> best_iterate_;
};

/// Aberth-Ehrlich simultaneous iteration. Every root satisfies
/// |p(root)| <= tol * max|coeff|, or NumericalFailure is thrown with the
/// best iterate. Deterministic; roots come back sorted (see sort_by_argument).
RootSet find_roots(const ComplexPoly& p, double tol = 1e-10);

/// Orders by argument in [-pi, pi), then by modulus.
void sort_by_argument(std::vector<Complex>& zs);

/// Argument mapped into [-pi, pi).
double arg_half_open(Complex z);

/// Inverse zeros z_{D,r} of 1 + t + ... + t^D/D!, i.e. 1/t_r.
RootSet truncated_exp_inverse_zeros(int degree);

/// Perturbation bound 2D (sum |a_v - b_v| G^(D-v))^(1/D) on matched root
/// distances, G = max(1, |a_v|^(1/v), |b_v|^(1/v)). Throws
/// std::invalid_argument on degree mismatch.
double ostrowski_bound(const ComplexPoly& p, const ComplexPoly& q);

struct RootMatching {
    std::vector<std::size_t> pairing; // a[i] <-> b[pairing[i]]
    double max_distance = 0.0;
};

/// Bijection minimizing the largest pairwise distance; ties broken by the
/// smaller distance sum, then lexicographically. Exhaustive up to 8 roots,
/// threshold bisection with bipartite matching beyond.
RootMatching match_roots(std::span<const Complex> a, std::span<const Complex> b);

/// g_k(z) = F(2k z) / (2k)^D / x_0, monic, with coefficients rounded from
/// exact values.
ComplexPoly rescaled_faber(const FaberPoly& f, int k);

struct ScaledRoots {
    RootSet t;                  // roots of F
    std::vector<Complex> z;     // t / (2k), same order
};

/// Roots of F computed on g_k and multiplied back by 2k. Empty for D = 0.
ScaledRoots scaled_faber_roots(const FaberPoly& f, int k, double tol = 1e-10);

/// {"roots": [{"re": x, "im": y}, ...], "residual": r}, doubles at 17 significant digits.
std::string root_set_json(const RootSet& roots);

} // namespace modzeros
