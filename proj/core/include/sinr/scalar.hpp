#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include "sinr/errors.hpp"

namespace sinr {

// Exact scalar: arbitrary-precision rational. Inputs enter as decimal
// strings and are converted without rounding, so every downstream
// comparison on this type is a statement about the input itself.
using Rat = mpq_class;

enum class BackendKind { Exact, Float64 };

inline const char* backend_name(BackendKind b) {
    return b == BackendKind::Exact ? "exact" : "f64";
}

// "0.125", "-3", "2.5e-3" -> exact rational. Throws ParseError.
Rat rat_from_decimal(const std::string& text);

// Number of base-10 fractional digits needed to write the value exactly
// (after exponent folding); used to pick integer scaling factors.
int decimal_places(const std::string& text);

double parse_double(const std::string& text);

inline double to_double(double x) { return x; }
inline double to_double(const Rat& x) { return x.get_d(); }

template <class T>
inline T scalar_abs(const T& x) {
    return x < T(0) ? T(-x) : x;
}

template <class T>
inline int scalar_sgn(const T& x) {
    if (x < T(0)) return -1;
    if (T(0) < x) return 1;
    return 0;
}

inline int scalar_sgn(const Rat& x) { return sgn(x); }

template <class T>
inline T scalar_pow(T base, unsigned e) {
    T r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

// 10^k as an exact rational (k may be negative).
Rat pow10_rat(int k);

// Fixed-format decimal rendering for reports; exact values are rounded to
// 17 significant digits, doubles round-trip.
std::string format_quantity(double v);
std::string format_quantity(const Rat& v);

template <class T>
constexpr bool is_exact_scalar = std::is_same_v<T, Rat>;

}  // namespace sinr
