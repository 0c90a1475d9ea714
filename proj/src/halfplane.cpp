#include "modzeros/halfplane.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "modzeros/faber.hpp"

namespace modzeros {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// c[i] is the coefficient of q^(i-1) in j.
const std::vector<double>& j_coefficients()
{
    static const std::vector<double> table = [] {
        const TruncatedSeries j = j_series(kJTerms - 1);
        std::vector<double> c;
        for (int p = -1; p < kJTerms - 1; ++p)
            c.push_back(to_double(j.coeff(p)));
        return c;
    }();
    return table;
}

double coefficient_or_estimate(int index)
{
    const auto& c = j_coefficients();
    if (index < static_cast<int>(c.size()))
        return c[static_cast<std::size_t>(index)];
    // c(n+1)/c(n) ~ exp(2 pi / sqrt(n)) for the tail beyond the table.
    double v = c.back();
    for (int i = static_cast<int>(c.size()); i <= index; ++i)
        v *= std::exp(kTwoPi / std::sqrt(static_cast<double>(i - 1)));
    return v;
}

// Bound on sum_{i >= terms} c[i] |q|^(i-1).
double tail_estimate(double abs_q, int terms)
{
    const int power = terms - 1;
    const double ratio = abs_q * std::exp(kTwoPi / std::sqrt(std::max(1.0, static_cast<double>(power))));
    if (ratio >= 1.0)
        return std::numeric_limits<double>::infinity();
    return coefficient_or_estimate(terms) * std::pow(abs_q, power) / (1.0 - ratio);
}

struct SeriesValue {
    Complex value;
    Complex derivative;
};

SeriesValue j_of_nome(Complex q, int terms)
{
    const auto& c = j_coefficients();
    // 1/q + sum_{n>=0} c_n q^n, Horner on the regular part.
    Complex v = 0.0, dv = 0.0;
    for (int i = terms - 1; i >= 1; --i) {
        dv = dv * q + v;
        v = v * q + c[static_cast<std::size_t>(i)];
    }
    return {v + 1.0 / q, dv - 1.0 / (q * q)};
}

HalfPlanePoint from_nome(Complex q)
{
    const Complex tau(std::arg(q) / kTwoPi, -std::log(std::abs(q)) / kTwoPi);
    const Complex wrapped(wrap_real_part(tau.real()), tau.imag());
    return {wrapped, in_fundamental_domain(wrapped)};
}

} // namespace

double wrap_real_part(double x)
{
    double r = x - std::floor(x + 0.5);
    if (r < -0.5)
        r += 1.0;
    if (r >= 0.5)
        r -= 1.0;
    return r;
}

double translation_distance(Complex a, Complex b)
{
    const Complex d = a - b;
    return std::abs(Complex(wrap_real_part(d.real()), d.imag()));
}

bool in_fundamental_domain(Complex tau)
{
    if (!(tau.imag() > 0.0))
        return false;
    if (tau.real() < -0.5 || tau.real() >= 0.5)
        return false;
    const double n2 = std::norm(tau);
    if (n2 < 1.0 - kUnitCircleSlack)
        return false;
    if (n2 <= 1.0 + kUnitCircleSlack && tau.real() > 0.0)
        return false;
    return true;
}

JValue evaluate_j(Complex tau, int terms)
{
    if (!(tau.imag() >= kMinEvaluationHeight))
        throw std::domain_error("evaluate_j: Im(tau) must be at least 0.8; reduce the point first");
    if (terms < 1 || terms > kJTerms)
        throw std::domain_error("evaluate_j: terms must be in [1, " + std::to_string(kJTerms) + "]");
    const Complex q = std::exp(Complex(0.0, kTwoPi) * tau);
    return {j_of_nome(q, terms).value, tail_estimate(std::abs(q), terms)};
}

HalfPlanePoint invert_j(Complex t, double tol)
{
    const double target = std::abs(t);
    if (!(target >= kInversionThreshold))
        throw std::domain_error("invert_j: |t| = " + std::to_string(target) + " is below the inversion threshold " +
                                std::to_string(kInversionThreshold));
    constexpr int kMaxIterations = 100;
    Complex q = 1.0 / t;
    double best_residual = std::numeric_limits<double>::infinity();
    Complex best_q = q;
    int stalled = 0;
    for (int it = 0; it < kMaxIterations && stalled < 3; ++it) {
        const double abs_q = std::abs(q);
        int terms = 3;
        while (terms < kJTerms && tail_estimate(abs_q, terms) > 1e-3 * tol * target)
            ++terms;
        const SeriesValue jv = j_of_nome(q, terms);
        const double residual = std::abs(jv.value - t);
        if (residual < best_residual) {
            best_residual = residual;
            best_q = q;
        }
        const Complex step = (jv.value - t) / jv.derivative;
        q -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(q))
            ++stalled;
    }
    if (!(best_residual <= tol * target))
        throw NumericalFailure("invert_j: Newton iteration did not converge", {best_q});
    return from_nome(best_q);
}

HalfPlanePoint reduce_to_fundamental_domain(Complex tau)
{
    if (!(tau.imag() > 0.0))
        throw std::domain_error("reduce_to_fundamental_domain: Im(tau) must be positive");
    constexpr int kMaxSteps = 10000;
    for (int step = 0; step < kMaxSteps; ++step) {
        tau = Complex(wrap_real_part(tau.real()), tau.imag());
        if (std::norm(tau) < 1.0 - kUnitCircleSlack)
            tau = -1.0 / tau;
        else
            break;
    }
    // On the unit circle -1/tau = -conj(tau): take the representative with Re <= 0.
    if (std::abs(std::norm(tau) - 1.0) <= kUnitCircleSlack && tau.real() > 0.0)
        tau = Complex(wrap_real_part(-tau.real()), tau.imag());
    return {tau, in_fundamental_domain(tau)};
}

HalfPlanePoint predicted_zero(int k, Complex z)
{
    if (z == Complex(0.0))
        throw std::domain_error("predicted_zero: z must be nonzero");
    const double scale = 2.0 * k * std::abs(z);
    if (!(scale > 1.0))
        throw std::domain_error("predicted_zero: 2k|z| must exceed 1");
    const Complex tau(wrap_real_part(-arg_half_open(z) / kTwoPi), std::log(scale) / kTwoPi);
    return {tau, in_fundamental_domain(tau)};
}

std::vector<NontrivialZero> nontrivial_zeros(const ModularFormSpec& spec, double tol)
{
    const FaberPoly f = faber_polynomial(spec);
    std::vector<NontrivialZero> out;
    if (f.degree() < 1)
        return out;
    const int k = spec.k();
    const ComplexPoly g = rescaled_faber(f, k);
    const ScaledRoots roots = scaled_faber_roots(f, k, tol);
    for (const auto& t : roots.t.roots) {
        NontrivialZero zero{t, std::nullopt, 0.0};
        if (std::abs(t) >= kInversionThreshold) {
            const HalfPlanePoint tau = invert_j(t, tol);
            const Complex jt = evaluate_j(tau.tau, kJTerms).value;
            zero.tau = tau;
            zero.residual = std::abs(g(jt / (2.0 * k)));
        }
        out.push_back(zero);
    }
    return out;
}

bool ZeroReport::all_inverted() const
{
    for (const auto& row : rows)
        if (!row.tau)
            return false;
    return true;
}

std::optional<double> ZeroReport::max_k_times_err() const
{
    if (!all_inverted())
        return std::nullopt;
    double m = 0.0;
    for (const auto& row : rows)
        m = std::max(m, *row.k_times_err);
    return m;
}

double ZeroReport::max_corollary_err() const
{
    double m = 0.0;
    for (const auto& row : rows)
        m = std::max(m, row.corollary_err);
    return m;
}

ZeroReport verify_theorem1(const ModularFormSpec& spec, double tol)
{
    ZeroReport report{spec.k(), spec.m(), spec.degree(), {}};
    if (spec.degree() < 1)
        return report;
    const int k = spec.k();
    const std::vector<NontrivialZero> zeros = nontrivial_zeros(spec, tol);
    const RootSet limits = truncated_exp_inverse_zeros(spec.degree());

    std::vector<Complex> scaled;
    for (const auto& z : zeros)
        scaled.push_back(z.t / (2.0 * k));
    const RootMatching match = match_roots(limits.roots, scaled);

    for (std::size_t r = 0; r < limits.roots.size(); ++r) {
        const NontrivialZero& zero = zeros[match.pairing[r]];
        ZeroReportRow row;
        row.r = static_cast<int>(r) + 1;
        row.t = zero.t;
        row.limit_z = limits.roots[r];
        row.tau = zero.tau;
        row.tau_hat = predicted_zero(k, row.limit_z);
        if (zero.tau) {
            row.abs_err = translation_distance(zero.tau->tau, row.tau_hat.tau);
            row.k_times_err = k * *row.abs_err;
        }
        row.corollary_err = std::abs(zero.t - 2.0 * k * row.limit_z);
        report.rows.push_back(row);
    }
    return report;
}

std::string zero_report_csv_rows(const ZeroReport& report)
{
    const auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::string out;
    for (const auto& row : report.rows) {
        out += std::to_string(report.k) + "," + std::to_string(report.m) + "," + std::to_string(report.degree) + "," +
               std::to_string(row.r) + "," + num(row.t.real()) + "," + num(row.t.imag()) + ",";
        if (row.tau)
            out += num(row.tau->tau.real()) + "," + num(row.tau->tau.imag()) + ",";
        else
            out += std::string(kOutsideRegime) + "," + kOutsideRegime + ",";
        out += num(row.tau_hat.tau.real()) + "," + num(row.tau_hat.tau.imag()) + ",";
        if (row.abs_err)
            out += num(*row.abs_err) + "," + num(*row.k_times_err);
        else
            out += std::string(kOutsideRegime) + "," + kOutsideRegime;
        out += "\n";
    }
    return out;
}

} // namespace modzeros
