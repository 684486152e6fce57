#pragma once

#include <utility>

#include "sinr/scalar.hpp"

namespace sinr {

// Exact sign tests for one- and two-radical expressions over Q, used by
// the exact envelope breakpoints.

// sign of a + b*sqrt(u), with u >= 0 rational
inline int sign_radical1(const Rat& a, const Rat& b, const Rat& u) {
    if (sgn(u) == 0 || sgn(b) == 0) return sgn(a);
    if (sgn(a) == 0) return sgn(b);
    if (sgn(a) > 0 && sgn(b) > 0) return 1;
    if (sgn(a) < 0 && sgn(b) < 0) return -1;
    // opposite signs: compare a^2 with b^2 u
    const Rat lhs = a * a, rhs = b * b * u;
    const int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    // |a| dominates -> sign of a, else sign of b
    return c > 0 ? sgn(a) : sgn(b);
}

// sign of a + b*sqrt(u) + c*sqrt(v), with u, v >= 0 rational
inline int sign_radical2(const Rat& a, const Rat& b, const Rat& u, const Rat& c, const Rat& v) {
    if (sgn(u) == 0 || sgn(b) == 0) return sign_radical1(a, c, v);
    if (sgn(v) == 0 || sgn(c) == 0) return sign_radical1(a, b, u);
    const int sA = sign_radical1(a, b, u);  // A = a + b*sqrt(u)
    const int sC = sgn(c);                  // C = c*sqrt(v)
    if (sA == 0) return sC;
    if (sA == sC) return sA;
    // A and C have opposite (nonzero) signs: compare |A|^2 with |C|^2.
    // A^2 - C^2 = (a^2 + b^2 u - c^2 v) + 2ab*sqrt(u)
    const int s2 = sign_radical1(a * a + b * b * u - c * c * v, 2 * a * b, u);
    if (s2 == 0) return 0;
    return s2 > 0 ? sA : sC;
}

// Dyadic enclosure of sqrt(r) for rational r >= 0: returns [lo, hi] with
// hi - lo <= sqrt-scale * 2^-prec, via exact integer square roots.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& r, unsigned prec) {
    if (sgn(r) == 0) return {Rat(0), Rat(0)};
    // sqrt(n/d) = sqrt(n*d)/d
    const mpz_class nd = r.get_num() * r.get_den();
    mpz_class shifted = nd << (2 * prec);
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), shifted.get_mpz_t());
    // s <= sqrt(nd)*2^prec < s+1
    mpz_class denom = r.get_den() << prec;
    Rat lo(s, denom), hi(s + 1, denom);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace sinr
