#include "modzeros/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace modzeros {

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs_desc) : coeffs_(std::move(coeffs_desc))
{
    if (coeffs_.size() < 2)
        throw std::invalid_argument("ComplexPoly: degree must be at least 1");
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("ComplexPoly: non-finite coefficient");
    const Complex lead = coeffs_.front();
    if (lead == Complex(0.0))
        throw std::invalid_argument("ComplexPoly: leading coefficient is zero");
    if (lead != Complex(1.0)) {
        for (auto& c : coeffs_)
            c /= lead;
        coeffs_.front() = 1.0;
    }
}

Complex ComplexPoly::operator()(Complex z) const
{
    Complex acc = 0.0;
    for (const auto& c : coeffs_)
        acc = acc * z + c;
    return acc;
}

namespace {

template <typename T>
void horner_with_derivative(const std::vector<Complex>& a, std::complex<T> z, std::complex<T>& p, std::complex<T>& dp)
{
    p = 0;
    dp = 0;
    for (const auto& c : a) {
        dp = dp * z + p;
        p = p * z + std::complex<T>(c);
    }
}

double max_modulus(const std::vector<Complex>& a)
{
    double m = 0.0;
    for (const auto& c : a)
        m = std::max(m, std::abs(c));
    return m;
}

double residual_of(const ComplexPoly& p, const std::vector<Complex>& zs)
{
    double r = 0.0;
    for (const auto& z : zs)
        r = std::max(r, std::abs(p(z)));
    return r;
}

} // namespace

double arg_half_open(Complex z)
{
    const double a = std::arg(z);
    return a >= std::numbers::pi ? a - 2 * std::numbers::pi : a;
}

void sort_by_argument(std::vector<Complex>& zs)
{
    std::stable_sort(zs.begin(), zs.end(), [](Complex x, Complex y) {
        const double ax = arg_half_open(x);
        const double ay = arg_half_open(y);
        if (ax != ay)
            return ax < ay;
        return std::abs(x) < std::abs(y);
    });
}

RootSet find_roots(const ComplexPoly& p, double tol)
{
    constexpr int kMaxIterations = 500;
    constexpr double kRotation = 0.4;
    const auto& a = p.coeffs();
    const int n = p.degree();

    double sum = 1.0;
    for (int v = 1; v <= n; ++v)
        sum += std::abs(a[static_cast<std::size_t>(v)]);
    const double radius = std::pow(sum, 1.0 / n);

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] = std::polar(radius, 2 * std::numbers::pi * i / n + kRotation);

    int quiet_sweeps = 0;
    for (int it = 0; it < kMaxIterations && quiet_sweeps < 2; ++it) {
        bool moved = false;
        for (std::size_t i = 0; i < z.size(); ++i) {
            Complex pv, dv;
            horner_with_derivative<double>(a, z[i], pv, dv);
            if (pv == Complex(0.0))
                continue;
            const Complex newton = pv / dv;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i)
                    repulsion += 1.0 / (z[i] - z[j]);
            const Complex step = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                continue;
            z[i] -= step;
            if (std::abs(step) > 1e-14 * std::max(std::abs(z[i]), 1e-300))
                moved = true;
        }
        quiet_sweeps = moved ? 0 : quiet_sweeps + 1;
    }

    const double limit = tol * max_modulus(a);
    double residual = residual_of(p, z);
    if (residual > limit) {
        for (auto& root : z) {
            std::complex<long double> pv, dv;
            const std::complex<long double> zl(root.real(), root.imag());
            horner_with_derivative<long double>(a, zl, pv, dv);
            if (dv != std::complex<long double>(0))
                root = Complex(zl - pv / dv);
        }
        residual = residual_of(p, z);
    }
    if (!(residual <= limit)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "root finder did not reach residual %.3g (got %.3g)", limit, residual);
        throw NumericalFailure(msg, z);
    }
    sort_by_argument(z);
    return RootSet{std::move(z), residual};
}

RootSet truncated_exp_inverse_zeros(int degree)
{
    if (degree < 1)
        throw std::invalid_argument("truncated_exp_inverse_zeros: degree must be at least 1");
    // D! E_D(t) = sum_r D!/r! t^r, descending from t^D.
    std::vector<Complex> e(static_cast<std::size_t>(degree + 1));
    double falling = 1.0;
    for (int i = 0; i <= degree; ++i) {
        e[static_cast<std::size_t>(i)] = falling;
        falling *= degree - i;
    }
    const RootSet t = find_roots(ComplexPoly(e));

    // z^D E_D(1/z) = sum_r z^(D-r) / r! is monic with the z_{D,r} as roots.
    std::vector<Complex> g(static_cast<std::size_t>(degree + 1));
    double fact = 1.0;
    for (int r = 0; r <= degree; ++r) {
        if (r > 0)
            fact *= r;
        g[static_cast<std::size_t>(r)] = 1.0 / fact;
    }
    const ComplexPoly gp(g);
    std::vector<Complex> z;
    for (const auto& root : t.roots) {
        std::complex<long double> zl = 1.0L / std::complex<long double>(root.real(), root.imag());
        for (int polish = 0; polish < 2; ++polish) {
            std::complex<long double> pv, dv;
            horner_with_derivative<long double>(gp.coeffs(), zl, pv, dv);
            zl -= pv / dv;
        }
        z.emplace_back(zl);
    }
    sort_by_argument(z);
    return RootSet{z, residual_of(gp, z)};
}

double ostrowski_bound(const ComplexPoly& p, const ComplexPoly& q)
{
    if (p.degree() != q.degree())
        throw std::invalid_argument("ostrowski_bound: degree mismatch");
    const int n = p.degree();
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    double gamma = 1.0;
    for (int v = 1; v <= n; ++v) {
        gamma = std::max(gamma, std::pow(std::abs(a[static_cast<std::size_t>(v)]), 1.0 / v));
        gamma = std::max(gamma, std::pow(std::abs(b[static_cast<std::size_t>(v)]), 1.0 / v));
    }
    double sum = 0.0;
    for (int v = 1; v <= n; ++v)
        sum += std::abs(a[static_cast<std::size_t>(v)] - b[static_cast<std::size_t>(v)]) * std::pow(gamma, n - v);
    return 2.0 * n * std::pow(sum, 1.0 / n);
}

namespace {

bool try_kuhn(std::size_t u, const std::vector<std::vector<char>>& ok, std::vector<char>& seen,
              std::vector<std::size_t>& match_of_b)
{
    for (std::size_t v = 0; v < ok.size(); ++v) {
        if (!ok[u][v] || seen[v])
            continue;
        seen[v] = 1;
        if (match_of_b[v] == SIZE_MAX || try_kuhn(match_of_b[v], ok, seen, match_of_b)) {
            match_of_b[v] = u;
            return true;
        }
    }
    return false;
}

} // namespace

RootMatching match_roots(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("match_roots: cardinality mismatch");
    const std::size_t n = a.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dist[i][j] = std::abs(a[i] - b[j]);

    RootMatching best;
    best.pairing.resize(n);
    std::iota(best.pairing.begin(), best.pairing.end(), std::size_t{0});
    if (n == 0)
        return best;

    if (n <= 8) {
        std::vector<std::size_t> perm = best.pairing;
        double best_max = std::numeric_limits<double>::infinity();
        double best_sum = std::numeric_limits<double>::infinity();
        do {
            double mx = 0.0, sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mx = std::max(mx, dist[i][perm[i]]);
                sum += dist[i][perm[i]];
            }
            if (mx < best_max || (mx == best_max && sum < best_sum)) {
                best_max = mx;
                best_sum = sum;
                best.pairing = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        best.max_distance = best_max;
        return best;
    }

    std::vector<double> levels;
    for (const auto& row : dist)
        levels.insert(levels.end(), row.begin(), row.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<std::size_t> match_of_b;
    const auto feasible = [&](double threshold) {
        std::vector<std::vector<char>> ok(n, std::vector<char>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ok[i][j] = dist[i][j] <= threshold;
        match_of_b.assign(n, SIZE_MAX);
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<char> seen(n);
            if (!try_kuhn(u, ok, seen, match_of_b))
                return false;
        }
        return true;
    };
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    feasible(levels[lo]);
    for (std::size_t j = 0; j < n; ++j)
        best.pairing[match_of_b[j]] = j;
    best.max_distance = levels[lo];
    return best;
}

ComplexPoly rescaled_faber(const FaberPoly& f, int k)
{
    std::vector<Complex> g;
    Rational scale = 1;
    const Rational two_k = 2 * k;
    for (int s = 0; s <= f.degree(); ++s) {
        g.emplace_back(to_double(f.coeffs[static_cast<std::size_t>(s)] / (f.coeffs[0] * scale)));
        scale *= two_k;
    }
    return ComplexPoly(std::move(g));
}

ScaledRoots scaled_faber_roots(const FaberPoly& f, int k, double tol)
{
    ScaledRoots out;
    if (f.degree() < 1)
        return out;
    const RootSet zr = find_roots(rescaled_faber(f, k), tol);
    out.z = zr.roots;
    out.t.residual = zr.residual;
    for (const auto& z : zr.roots)
        out.t.roots.push_back(2.0 * k * z);
    return out;
}

std::string root_set_json(const RootSet& roots)
{
    char buf[64];
    std::string s = "{\"roots\": [";
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        if (i > 0)
            s += ", ";
        std::snprintf(buf, sizeof buf, "%.17g", roots.roots[i].real());
        s += std::string("{\"re\": ") + buf;
        std::snprintf(buf, sizeof buf, "%.17g", roots.roots[i].imag());
        s += std::string(", \"im\": ") + buf + "}";
    }
    std::snprintf(buf, sizeof buf, "%.17g", roots.residual);
    s += std::string("], \"residual\": ") + buf + "}";
    return s;
}

} // namespace modzeros
