#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modzeros/modforms.hpp"
#include "modzeros/roots.hpp"

namespace modzeros {

/// Points on the unit circle are recognised up to this slack in |tau|^2.
inline constexpr double kUnitCircleSlack = 1e-12;

/// Faber roots below this modulus are not inverted through j.
inline constexpr double kInversionThreshold = 2000.0;

/// evaluate_j refuses points below this height.
inline constexpr double kMinEvaluationHeight = 0.8;

/// Number of exact j coefficients (q^-1 .. q^(kJTerms-2)) kept for evaluation.
inline constexpr int kJTerms = 120;

struct HalfPlanePoint {
    Complex tau;
    bool reduced = false;
};

/// Re in [-1/2, 1/2), |tau| >= 1, and Re <= 0 on the unit circle.
bool in_fundamental_domain(Complex tau);

/// x shifted by an integer into [-1/2, 1/2).
double wrap_real_part(double x);

/// |a - b| after moving Re(a - b) into [-1/2, 1/2); translations are in SL(2,Z).
double translation_distance(Complex a, Complex b);

struct JValue {
    Complex value;
    double tail_bound = 0.0; // estimate of the dropped terms
};

/// Partial sum of the q-expansion of j with `terms` coefficients (1..kJTerms).
/// Throws std::domain_error if Im(tau) < kMinEvaluationHeight.
JValue evaluate_j(Complex tau, int terms = 60);

/// tau with |j(tau) - t| <= tol |t|, by Newton iteration in q from q = 1/t.
/// Throws std::domain_error for |t| < kInversionThreshold and
/// NumericalFailure if Newton does not converge.
HalfPlanePoint invert_j(Complex t, double tol = 1e-10);

/// SL(2,Z)-equivalent point of the fundamental domain. Throws
/// std::domain_error for Im(tau) <= 0.
HalfPlanePoint reduce_to_fundamental_domain(Complex tau);

/// -arg(z)/(2 pi) + i log(2k|z|)/(2 pi), arg in [-pi, pi), Re wrapped into [-1/2, 1/2).
HalfPlanePoint predicted_zero(int k, Complex z);

struct NontrivialZero {
    Complex t;                          // root of F_f
    std::optional<HalfPlanePoint> tau;  // empty: |t| < kInversionThreshold
    double residual = 0.0;              // |F(j(tau))| / (x_0 (2k)^D); 0 when not inverted
};

/// Pulls every root of F_f back through j. Roots outside the inversion
/// regime are kept with an empty tau.
std::vector<NontrivialZero> nontrivial_zeros(const ModularFormSpec& spec, double tol = 1e-10);

struct ZeroReportRow {
    int r = 0;                           // 1-based index into z_{D,r} (argument order)
    Complex t;                           // matched Faber root
    Complex limit_z;                     // z_{D,r}
    std::optional<HalfPlanePoint> tau;   // actual zero, when inverted
    HalfPlanePoint tau_hat;              // prediction from z_{D,r}
    std::optional<double> abs_err;       // |tau - tau_hat| up to translation
    std::optional<double> k_times_err;
    double corollary_err = 0.0;          // |t - 2k z_{D,r}|
};

struct ZeroReport {
    int k = 0;
    int m = 0;
    int degree = 0;
    std::vector<ZeroReportRow> rows;

    bool all_inverted() const;
    std::optional<double> max_k_times_err() const;
    double max_corollary_err() const;
};

ZeroReport verify_theorem1(const ModularFormSpec& spec, double tol = 1e-10);

inline constexpr const char* kZeroReportHeader =
    "k,m,D,r,t_re,t_im,tau_re,tau_im,pred_re,pred_im,abs_err,k_times_err";
inline constexpr const char* kOutsideRegime = "outside inversion regime";

/// Rows in the kZeroReportHeader layout, one per line, 17 significant digits.
std::string zero_report_csv_rows(const ZeroReport& report);

} // namespace modzeros
