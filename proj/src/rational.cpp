#include "modzeros/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modzeros {

std::string to_string(const Rational& x) { return x.get_str(10); }

std::string to_string(const Integer& x) { return x.get_str(10); }

Rational parse_rational(std::string_view text)
{
    const auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    if (text.empty())
        throw bad();
    const auto slash = text.find('/');
    const auto digits_ok = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den.front() == '-' || den.front() == '+')
        throw bad();
    if (num.front() == '+')
        num.remove_prefix(1);
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0)
        throw bad();
    Rational r(n, d);
    r.canonicalize();
    return r;
}

double to_double(const Rational& x)
{
    // mpq_get_d truncates toward zero; compare against the neighbour away from zero.
    const double truncated = x.get_d();
    if (!std::isfinite(truncated) || x == 0)
        return truncated;
    const double away = std::nextafter(truncated, sgn(x) > 0 ? std::numeric_limits<double>::infinity()
                                                             : -std::numeric_limits<double>::infinity());
    if (!std::isfinite(away))
        return truncated;
    const Rational err_t = abs(x - Rational(truncated));
    const Rational err_a = abs(x - Rational(away));
    if (err_a < err_t)
        return away;
    if (err_t < err_a)
        return truncated;
    // Tie: pick the even mantissa.
    int exp_t = 0;
    const double frac_t = std::frexp(truncated, &exp_t);
    const auto mantissa = static_cast<long long>(std::ldexp(frac_t, std::numeric_limits<double>::digits));
    return (mantissa % 2 == 0) ? truncated : away;
}

} // namespace modzeros
