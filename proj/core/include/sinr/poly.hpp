#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sinr/errors.hpp"
#include "sinr/fft.hpp"
#include "sinr/kronecker.hpp"
#include "sinr/scalar.hpp"

namespace sinr {

// Dense univariate polynomial, coefficient of x^i at index i.
// Canonical form: the zero polynomial is the empty sequence, otherwise the
// stored leading coefficient is nonzero (exact backend; float coefficients
// are trimmed only when they are exact zeros).
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(T v) {
        Poly p;
        if (!(v == T(0))) p.c.push_back(std::move(v));
        return p;
    }
    // c0 + c1*x
    static Poly linear(T c0, T c1) {
        Poly p;
        p.c = {std::move(c0), std::move(c1)};
        p.trim();
        return p;
    }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    void trim() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
};

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

template <class T>
Poly<T> poly_sub(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

template <class T>
Poly<T> poly_scale(const Poly<T>& a, const T& s) {
    if (s == T(0)) return Poly<T>::zero();
    Poly<T> r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

template <class T>
Poly<T> poly_mul_naive(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>::zero();
    Poly<T> r;
    r.c.assign(a.c.size() + b.c.size() - 1, T(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

namespace detail {

// FFT crossover; below this the naive product is faster and exact.
inline constexpr size_t kFloatNaiveCutoff = 32;
inline constexpr size_t kExactNaiveCutoff = 8;

Poly<Rat> poly_mul_kronecker(const Poly<Rat>& a, const Poly<Rat>& b);

inline Poly<double> poly_mul_fft(const Poly<double>& a, const Poly<double>& b) {
    Poly<double> r;
    r.c = fft_convolve(a.c, b.c);
    r.trim();
    return r;
}

}  // namespace detail

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>::zero();
    const size_t m = std::min(a.c.size(), b.c.size());
    if constexpr (is_exact_scalar<T>) {
        if (m < detail::kExactNaiveCutoff) return poly_mul_naive(a, b);
        return detail::poly_mul_kronecker(a, b);
    } else {
        if (m < detail::kFloatNaiveCutoff) return poly_mul_naive(a, b);
        return detail::poly_mul_fft(a, b);
    }
}

template <class T>
Poly<T> poly_pow(Poly<T> base, unsigned e) {
    Poly<T> r = Poly<T>::constant(T(1));
    while (e) {
        if (e & 1u) r = poly_mul(r, base);
        e >>= 1u;
        if (e) base = poly_mul(base, base);
    }
    return r;
}

template <class T>
T poly_eval(const Poly<T>& a, const T& x) {
    T acc(0);
    for (size_t i = a.c.size(); i-- > 0;) acc = acc * x + a.c[i];
    return acc;
}

template <class T>
Poly<T> poly_derivative(const Poly<T>& a) {
    Poly<T> r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * T(static_cast<int>(i));
    r.trim();
    return r;
}

// Value representation: parallel point/value sequences.
template <class T>
struct ValueTable {
    std::vector<T> points;
    std::vector<T> values;
};

}  // namespace sinr
