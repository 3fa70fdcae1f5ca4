#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mtorus {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int rat_floor(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

/// Fractional part in [0, 1).
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

inline double rat_d(const Rat& r) { return r.convert_to<double>(); }

inline long rat_to_long(const Rat& r) {
    if (!is_integer(r)) throw std::invalid_argument("rat_to_long: not an integer");
    return rat_num(r).convert_to<long>();
}

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("rat_parse: denominator must be positive: " + s);
    return Rat(n, d);
}

/// exp(2*pi*i*turns), with the angle reduced mod 1 exactly before rounding.
inline Complex unit_phase(const Rat& turns) {
    Rat f = rat_frac(turns);
    if (f == 0) return {1.0, 0.0};
    if (2 * f == 1) return {-1.0, 0.0};
    if (4 * f == 1) return {0.0, 1.0};
    if (4 * f == 3) return {0.0, -1.0};
    double ang = 2.0 * std::numbers::pi * rat_d(f);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace mtorus
