#pragma once

#include <string>
#include <vector>

#include "sinr/multipoint.hpp"
#include "sinr/poly.hpp"

namespace sinr {

// num/den pair; den not identically zero. Never reduced to lowest terms:
// reduction would dominate the runtime and nothing downstream needs it.
template <class T>
struct Fraction {
    Poly<T> num;
    Poly<T> den;

    Fraction() : num(Poly<T>::zero()), den(Poly<T>::constant(T(1))) {}
    Fraction(Poly<T> n, Poly<T> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw ValidationError("fraction with zero denominator");
    }
};

template <class T>
Fraction<T> frac_add(const Fraction<T>& f, const Fraction<T>& g) {
    Fraction<T> r;
    r.num = poly_add(poly_mul(f.num, g.den), poly_mul(g.num, f.den));
    r.den = poly_mul(f.den, g.den);
    return r;
}

// Balanced pairwise merge; O(log n) rounds, degree of the result bounded
// by the degree sums.
template <class T>
Fraction<T> frac_sum(std::vector<Fraction<T>> fs) {
    if (fs.empty()) throw EmptyInput("frac_sum of empty sequence");
    while (fs.size() > 1) {
        std::vector<Fraction<T>> nxt;
        nxt.reserve((fs.size() + 1) / 2);
        for (size_t i = 0; i + 1 < fs.size(); i += 2) nxt.push_back(frac_add(fs[i], fs[i + 1]));
        if (fs.size() % 2) nxt.push_back(std::move(fs.back()));
        fs = std::move(nxt);
    }
    return std::move(fs.front());
}

template <class T>
T frac_eval(const Fraction<T>& f, const T& x) {
    return poly_eval(f.num, x) / poly_eval(f.den, x);
}

// Numerator/denominator values of the fully merged sum on a prepared
// point set; division is left to the caller.
template <class T>
struct FracParts {
    std::vector<T> num;
    std::vector<T> den;
};

template <class T>
FracParts<T> frac_eval_parts(const std::vector<Fraction<T>>& fs, const MultipointPlan<T>& plan) {
    Fraction<T> merged = frac_sum(fs);
    FracParts<T> out;
    // the explicit merged pipeline always runs the remainder tree; callers
    // wanting the float64 accuracy guard use frac_eval_batch(..., Direct)
    out.num = plan.eval_tree(merged.num);
    out.den = plan.eval_tree(merged.den);
    return out;
}

enum class FracEvalMode {
    // One merged fraction, remainder-tree evaluation. The fast path, and
    // exact on the rational backend.
    Merged,
    // Per-point term values combined by balanced summation. Quadratic in
    // (terms x points) but conditioned like the defining sum itself; the
    // float64 accuracy default. Identical results up to rounding.
    Direct,
};

template <class T>
constexpr FracEvalMode default_frac_eval_mode = is_exact_scalar<T> ? FracEvalMode::Merged : FracEvalMode::Direct;

inline constexpr double kPoleGuard = 1e-300;

namespace detail {

template <class T>
bool den_vanishes(const T& d) {
    if constexpr (is_exact_scalar<T>) {
        return d == T(0);
    } else {
        return !(d > kPoleGuard) && !(d < -kPoleGuard);
    }
}

}  // namespace detail

namespace detail {

// balanced in-place pairwise summation
template <class T>
T balanced_sum(std::vector<T>& vals) {
    size_t n = vals.size();
    while (n > 1) {
        size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) vals[i] = vals[2 * i] + vals[2 * i + 1];
        if (n % 2) {
            vals[half] = vals[n - 1];
            ++half;
        }
        n = half;
    }
    return vals.empty() ? T(0) : vals[0];
}

}  // namespace detail

// out[j] = sum_i fs[i](xs[j]); throws PoleAtQuery when a denominator
// vanishes at some evaluation point.
template <class T>
std::vector<T> frac_eval_batch(const std::vector<Fraction<T>>& fs, const std::vector<T>& xs,
                               FracEvalMode mode = default_frac_eval_mode<T>) {
    if (fs.empty()) throw EmptyInput("frac_eval_batch of empty sequence");
    std::vector<T> out(xs.size(), T(0));
    if (xs.empty()) return out;

    if (mode == FracEvalMode::Merged) {
        MultipointPlan<T> plan(xs);
        FracParts<T> parts = frac_eval_parts(fs, plan);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (detail::den_vanishes(parts.den[j]))
                throw PoleAtQuery("merged denominator vanishes at evaluation point " + std::to_string(j));
            out[j] = parts.num[j] / parts.den[j];
        }
        return out;
    }

    std::vector<T> terms(fs.size());
    for (size_t j = 0; j < xs.size(); ++j) {
        for (size_t i = 0; i < fs.size(); ++i) {
            T dv = poly_eval(fs[i].den, xs[j]);
            if (detail::den_vanishes(dv))
                throw PoleAtQuery("denominator of term " + std::to_string(i) +
                                  " vanishes at evaluation point " + std::to_string(j));
            terms[i] = poly_eval(fs[i].num, xs[j]) / dv;
        }
        out[j] = detail::balanced_sum(terms);
        terms.resize(fs.size());
    }
    return out;
}

}  // namespace sinr
