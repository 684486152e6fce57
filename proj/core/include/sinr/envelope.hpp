#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sinr/errors.hpp"
#include "sinr/points.hpp"
#include "sinr/radicals.hpp"
#include "sinr/scalar.hpp"

namespace sinr {

// ---------------------------------------------------------------------------
// Exact breakpoint values for lower envelopes over the rational backend.
// Rational and single-square-root forms compare exactly; the remaining
// algebraic forms (irrational weight ratios at alpha >= 4) carry a
// rational sign-test bracket and compare by bisection.
// ---------------------------------------------------------------------------
class XBP {
  public:
    enum class Kind { Rational, Sqrt, Algebraic };

    static XBP rational(Rat v) {
        XBP b;
        b.kind_ = Kind::Rational;
        b.p_ = std::move(v);
        b.lo_ = b.p_;
        b.hi_ = b.p_;
        return b;
    }

    // (p + q*sqrt(r)) / s with r >= 0, s != 0; collapses to Rational when
    // the radical vanishes or r is a perfect square.
    static XBP sqrt_form(Rat p, Rat q, Rat r, Rat s) {
        if (sgn(r) < 0) throw ValidationError("sqrt_form with negative radicand");
        if (sgn(s) == 0) throw ValidationError("sqrt_form with zero denominator");
        if (sgn(q) == 0 || sgn(r) == 0) return rational(Rat(p / s));
        // perfect square check
        mpz_class num = r.get_num(), den = r.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
            mpz_class sn, sd;
            mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
            Rat rt(sn, sd);
            rt.canonicalize();
            return rational(Rat((p + q * rt) / s));
        }
        XBP b;
        b.kind_ = Kind::Sqrt;
        b.p_ = std::move(p);
        b.q_ = std::move(q);
        b.r_ = std::move(r);
        b.s_ = std::move(s);
        b.prec_ = 16;
        b.recompute_sqrt_bounds();
        return b;
    }

    // Root of a continuous function with exactly one sign change in
    // (lo, hi); dsign evaluates the exact sign at rational arguments.
    static XBP algebraic(std::function<int(const Rat&)> dsign, Rat lo, Rat hi) {
        XBP b;
        b.kind_ = Kind::Algebraic;
        b.dsign_ = std::move(dsign);
        b.lo_ = std::move(lo);
        b.hi_ = std::move(hi);
        b.slo_ = b.dsign_(b.lo_);
        return b;
    }

    Kind kind() const { return kind_; }
    const Rat& lower() const { return lo_; }
    const Rat& upper() const { return hi_; }
    double approx() const { return (to_double(lo_) + to_double(hi_)) / 2.0; }

    // sign(value - x), exact for every kind
    int cmp_rat(const Rat& x) const {
        switch (kind_) {
            case Kind::Rational:
                return cmp(p_, x);
            case Kind::Sqrt:
                return sign_radical1(p_ - x * s_, q_, r_) * sgn(s_);
            case Kind::Algebraic: {
                if (cmp(x, lo_) <= 0) return 1;   // value in (lo, hi)
                if (cmp(x, hi_) >= 0) return -1;
                const int s = dsign_(x);
                if (s == 0) return 0;
                return s == slo_ ? 1 : -1;
            }
        }
        return 0;
    }

    static int compare(const XBP& a, const XBP& b) {
        if (a.kind_ == Kind::Rational) return -b.cmp_rat(a.p_);
        if (b.kind_ == Kind::Rational) return a.cmp_rat(b.p_);
        if (a.kind_ == Kind::Sqrt && b.kind_ == Kind::Sqrt) {
            // (pa + qa sqrt(ra))/sa - (pb + qb sqrt(rb))/sb
            const Rat t0 = a.p_ * b.s_ - b.p_ * a.s_;
            const Rat t1 = a.q_ * b.s_;
            const Rat t2 = -b.q_ * a.s_;
            return sign_radical2(t0, t1, a.r_, t2, b.r_) * sgn(a.s_ * b.s_);
        }
        // at least one Algebraic: interval refinement with a cap
        XBP x = a, y = b;
        for (int round = 0; round < kRefineCap; ++round) {
            if (cmp(x.hi_, y.lo_) < 0) return -1;
            if (cmp(y.hi_, x.lo_) < 0) return 1;
            if (cmp(x.lo_, x.hi_) == 0 && cmp(y.lo_, y.hi_) == 0)
                return cmp(x.lo_, y.lo_);
            x.refine();
            y.refine();
        }
        throw UnresolvedTie("could not separate two algebraic envelope breakpoints");
    }

    // A rational point strictly between a and b; requires a < b.
    static Rat witness_between(const XBP& a, const XBP& b) {
        XBP x = a, y = b;
        for (int round = 0; round < kRefineCap; ++round) {
            if (cmp(x.hi_, y.lo_) < 0) return Rat((x.hi_ + y.lo_) / 2);
            x.refine();
            y.refine();
        }
        throw UnresolvedTie("could not find witness between breakpoints");
    }

    void refine() {
        switch (kind_) {
            case Kind::Rational:
                return;
            case Kind::Sqrt:
                prec_ *= 2;
                recompute_sqrt_bounds();
                return;
            case Kind::Algebraic: {
                if (cmp(lo_, hi_) == 0) return;
                Rat mid((lo_ + hi_) / 2);
                const int s = dsign_(mid);
                if (s == 0) {
                    lo_ = mid;
                    hi_ = mid;
                } else if (s == slo_) {
                    lo_ = mid;
                } else {
                    hi_ = mid;
                }
                return;
            }
        }
    }

  private:
    static constexpr int kRefineCap = 220;

    void recompute_sqrt_bounds() {
        auto [slo, shi] = sqrt_enclosure(r_, prec_);
        Rat n0 = p_ + q_ * (sgn(q_) > 0 ? slo : shi);
        Rat n1 = p_ + q_ * (sgn(q_) > 0 ? shi : slo);
        if (sgn(s_) > 0) {
            lo_ = n0 / s_;
            hi_ = n1 / s_;
        } else {
            lo_ = n1 / s_;
            hi_ = n0 / s_;
        }
    }

    Kind kind_ = Kind::Rational;
    Rat p_, q_, r_, s_;
    unsigned prec_ = 16;
    std::function<int(const Rat&)> dsign_;
    int slo_ = 0;
    Rat lo_, hi_;
};

// ---------------------------------------------------------------------------
// Minimization diagram of a curve family on the line.
// Cells are half-open: cell k covers [breakpoints[k-1], breakpoints[k]),
// so a query equal to a breakpoint belongs to the cell beginning there.
// ---------------------------------------------------------------------------
template <class BPT>
struct EnvelopeT {
    std::vector<BPT> breakpoints;
    std::vector<int> owners;  // external ids; size = breakpoints.size() + 1
};

using EnvelopeF64 = EnvelopeT<double>;
using EnvelopeExact = EnvelopeT<XBP>;

template <class T>
using EnvelopeOf = std::conditional_t<is_exact_scalar<T>, EnvelopeExact, EnvelopeF64>;

namespace detail {

// Rational interval helpers for the algebraic-crossing isolation.
struct RInt {
    Rat lo, hi;
    RInt operator+(const RInt& o) const { return {Rat(lo + o.lo), Rat(hi + o.hi)}; }
    RInt operator-(const RInt& o) const { return {Rat(lo - o.hi), Rat(hi - o.lo)}; }
    RInt operator*(const RInt& o) const {
        Rat a(lo * o.lo), b(lo * o.hi), c(hi * o.lo), d(hi * o.hi);
        return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
    }
    static RInt point(const Rat& v) { return {v, v}; }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact family of curves h_i(x) = ((x-u_i)^2 + v_i)^{alpha/2} / p_i.
// This covers plain quadratics (alpha=2, arbitrary v, p = 1/lead) as well
// as alpha-powered weighted distances along a line (v = squared offset,
// which is >= 0 exactly when a genuine distance is involved).
// ---------------------------------------------------------------------------
class PowFamily {
  public:
    struct Curve {
        Rat u, v, p;  // p > 0
    };
    using BP = XBP;

    PowFamily(std::vector<Curve> curves, unsigned alpha, std::vector<int> ids)
        : curves_(std::move(curves)), ids_(std::move(ids)), a2_(alpha / 2) {
        if (alpha < 2 || alpha % 2 != 0) throw ValidationError("alpha must be even and >= 2");
        for (const auto& c : curves_)
            if (sgn(c.p) <= 0) throw ValidationError("non-positive weight in envelope family");
    }

    size_t size() const { return curves_.size(); }
    int ext_id(size_t i) const { return ids_[i]; }

    static int bp_cmp(const XBP& a, const XBP& b) { return XBP::compare(a, b); }

    // sign of h_i - h_j in a neighbourhood of -infinity; 0 iff identical
    int order_at_neg_inf(size_t i, size_t j) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        if (ci.p != cj.p) return sgn(cj.p - ci.p);
        if (ci.u != cj.u) return sgn(ci.u - cj.u);  // linear term at -infinity
        const Rat d = (ci.u * ci.u + ci.v) - (cj.u * cj.u + cj.v);
        return sgn(d);
    }

    // exact sign of h_i(x) - h_j(x) at a rational point
    int value_cmp(size_t i, size_t j, const Rat& x) const { return dsign(i, j, x); }

    // Sign-changing crossings of h_i and h_j, ascending. Tangencies are
    // omitted (the minimum does not switch there).
    std::vector<XBP> crossings(size_t i, size_t j) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        std::vector<XBP> out;
        if (ci.p == cj.p) {
            // Q_i - Q_j is linear
            const Rat l1 = 2 * (cj.u - ci.u);
            if (sgn(l1) == 0) return out;
            const Rat l0 = (ci.u * ci.u + ci.v) - (cj.u * cj.u + cj.v);
            out.push_back(XBP::rational(Rat(-l0 / l1)));
            return out;
        }
        if (a2_ == 1) return quad_crossings(Rat(cj.p - ci.p),
                                            Rat(-2 * (ci.u * cj.p - cj.u * ci.p)),
                                            Rat((ci.u * ci.u + ci.v) * cj.p - (cj.u * cj.u + cj.v) * ci.p));
        // alpha >= 4: compare Q_i with c * Q_j, c = (p_i/p_j)^{1/a2}
        Rat w(ci.p / cj.p);
        w.canonicalize();
        Rat c;
        if (exact_root(w, a2_, c))
            return quad_crossings(Rat(1 - c), Rat(-2 * (ci.u - c * cj.u)),
                                  Rat((ci.u * ci.u + ci.v) - c * (cj.u * cj.u + cj.v)));
        return algebraic_crossings(i, j, w);
    }

  private:
    std::vector<Curve> curves_;
    std::vector<int> ids_;
    unsigned a2_;

    int dsign(size_t i, size_t j, const Rat& x) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        const Rat qi = (x - ci.u) * (x - ci.u) + ci.v;
        const Rat qj = (x - cj.u) * (x - cj.u) + cj.v;
        return sgn(scalar_pow(qi, a2_) * cj.p - scalar_pow(qj, a2_) * ci.p);
    }

    static bool exact_root(const Rat& w, unsigned k, Rat& out) {
        if (k == 1) {
            out = w;
            return true;
        }
        mpz_class rn, rd;
        const int en = mpz_root(rn.get_mpz_t(), w.get_num().get_mpz_t(), k);
        const int ed = mpz_root(rd.get_mpz_t(), w.get_den().get_mpz_t(), k);
        if (!en || !ed) return false;
        out = Rat(rn, rd);
        out.canonicalize();
        return true;
    }

    static std::vector<XBP> quad_crossings(const Rat& A, const Rat& B, const Rat& C) {
        std::vector<XBP> out;
        if (sgn(A) == 0) {
            if (sgn(B) == 0) return out;
            out.push_back(XBP::rational(Rat(-C / B)));
            return out;
        }
        const Rat disc = B * B - 4 * A * C;
        if (sgn(disc) <= 0) return out;  // none or tangency
        XBP r1 = XBP::sqrt_form(-B, Rat(1), disc, Rat(2 * A));
        XBP r2 = XBP::sqrt_form(-B, Rat(-1), disc, Rat(2 * A));
        if (XBP::compare(r1, r2) > 0) std::swap(r1, r2);
        out.push_back(std::move(r1));
        out.push_back(std::move(r2));
        return out;
    }

    // c irrational: isolate the sign changes of D(x) with exact rational
    // sign probes, bracketing around the vertex of Q_i - c Q_j.
    std::vector<XBP> algebraic_crossings(size_t i, size_t j, const Rat& w) const {
        const Curve ci = curves_[i], cj = curves_[j];
        if (sgn(ci.v) < 0 || sgn(cj.v) < 0)
            throw ValidationError("powered envelope with negative offset and irrational weight ratio");
        const int s_inf = sgn(cj.p - ci.p);  // sign of D at both infinities
        // self-contained: the breakpoint outlives the family
        auto ds = [ci, cj, a2 = a2_](const Rat& x) {
            const Rat qi = (x - ci.u) * (x - ci.u) + ci.v;
            const Rat qj = (x - cj.u) * (x - cj.u) + cj.v;
            return sgn(scalar_pow(qi, a2) * cj.p - scalar_pow(qj, a2) * ci.p);
        };

        // dyadic enclosure of c = w^{1/a2}
        auto c_enclosure = [&](unsigned prec) -> detail::RInt {
            mpz_class N = w.get_num();
            for (unsigned t = 1; t < a2_; ++t) N *= w.get_den();
            mpz_class shifted = N;
            mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), prec * a2_);
            mpz_class root;
            mpz_root(root.get_mpz_t(), shifted.get_mpz_t(), a2_);
            mpz_class den = w.get_den() << prec;
            Rat lo(root, den), hi(root + 1, den);
            lo.canonicalize();
            hi.canonicalize();
            return {lo, hi};
        };

        for (unsigned prec = 32; prec <= 1u << 14; prec *= 2) {
            const detail::RInt c = c_enclosure(prec);
            // disc(c) of (1-c)x^2 - 2(u_i - c u_j)x + (Q0_i - c Q0_j)
            const detail::RInt one = detail::RInt::point(Rat(1));
            const detail::RInt ui = detail::RInt::point(ci.u), uj = detail::RInt::point(cj.u);
            const detail::RInt k_i = detail::RInt::point(Rat(ci.u * ci.u + ci.v));
            const detail::RInt k_j = detail::RInt::point(Rat(cj.u * cj.u + cj.v));
            const detail::RInt A = one - c;
            const detail::RInt B = (ui - c * uj) * detail::RInt::point(Rat(-2));
            const detail::RInt C = k_i - c * k_j;
            const detail::RInt disc = B * B - (A * C) * detail::RInt::point(Rat(4));
            if (sgn(disc.hi) < 0) return {};  // conclusively no real crossing
            // probe near the vertex -B/(2A); A cannot straddle 0 (c != 1: w != 1)
            if (sgn(A.lo) > 0 || sgn(A.hi) < 0) {
                const Rat vx = Rat(-(B.lo + B.hi) / (2 * (A.lo + A.hi)));
                if (ds(vx) == -s_inf) {
                    // two sign changes straddle vx; expand brackets
                    Rat left = vx - 1, right = vx + 1, step(1);
                    int guard = 0;
                    while (ds(left) != s_inf) {
                        step *= 2;
                        left -= step;
                        if (++guard > 300) throw UnresolvedTie("crossing bracket expansion failed");
                    }
                    step = 1;
                    guard = 0;
                    while (ds(right) != s_inf) {
                        step *= 2;
                        right += step;
                        if (++guard > 300) throw UnresolvedTie("crossing bracket expansion failed");
                    }
                    std::vector<XBP> out;
                    out.push_back(XBP::algebraic(ds, left, vx));
                    out.push_back(XBP::algebraic(ds, vx, right));
                    return out;
                }
                if (ds(vx) == 0) {
                    // vertex probe hit the crossing itself: split around it
                    std::vector<XBP> out;
                    out.push_back(XBP::rational(vx));
                    // the second root, if distinct, lies on one side
                    Rat left = vx - 1, right = vx + 1, step(1);
                    int guard = 0;
                    while (ds(left) == 0 && ++guard < 64) left -= (step *= 2);
                    guard = 0;
                    step = 1;
                    while (ds(right) == 0 && ++guard < 64) right += (step *= 2);
                    if (ds(left) == s_inf && ds(right) == s_inf) return out;  // double rational root
                    // treat as tangency at vx plus a genuine change elsewhere
                    if (ds(left) != s_inf)
                        out.insert(out.begin(), XBP::algebraic(ds, left - 1, left));
                    if (ds(right) != s_inf) out.push_back(XBP::algebraic(ds, right, right + 1));
                    return out;
                }
            }
            if (sgn(disc.lo) > 0) continue;  // roots exist but probe missed: refine c
        }
        throw UnresolvedTie("could not resolve near-tangent crossing of powered curves");
    }
};

// ---------------------------------------------------------------------------
// Float64 family of plain quadratics a x^2 + b x + c.
// ---------------------------------------------------------------------------
class QuadFamilyF64 {
  public:
    struct Curve {
        double a, b, c;
    };
    using BP = double;

    QuadFamilyF64(std::vector<Curve> curves, std::vector<int> ids)
        : curves_(std::move(curves)), ids_(std::move(ids)) {}

    size_t size() const { return curves_.size(); }
    int ext_id(size_t i) const { return ids_[i]; }

    static int bp_cmp(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

    int order_at_neg_inf(size_t i, size_t j) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        if (ci.a != cj.a) return ci.a < cj.a ? -1 : 1;
        if (ci.b != cj.b) return ci.b > cj.b ? -1 : 1;  // larger slope is lower at -inf
        if (ci.c != cj.c) return ci.c < cj.c ? -1 : 1;
        return 0;
    }

    int value_cmp(size_t i, size_t j, double x) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        const double vi = (ci.a * x + ci.b) * x + ci.c;
        const double vj = (cj.a * x + cj.b) * x + cj.c;
        return vi < vj ? -1 : (vi > vj ? 1 : 0);
    }

    std::vector<double> crossings(size_t i, size_t j) const {
        const Curve &ci = curves_[i], &cj = curves_[j];
        const double A = ci.a - cj.a, B = ci.b - cj.b, C = ci.c - cj.c;
        std::vector<double> out;
        if (A == 0.0) {
            if (B == 0.0) return out;
            out.push_back(-C / B);
            return out;
        }
        const double disc = B * B - 4.0 * A * C;
        if (!(disc > 0.0)) return out;
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
        double r1 = q / A;
        double r2 = (q != 0.0) ? C / q : -B / A - r1;
        if (r1 > r2) std::swap(r1, r2);
        if (r1 == r2) return out;
        out = {r1, r2};
        return out;
    }

  private:
    std::vector<Curve> curves_;
    std::vector<int> ids_;
};

// ---------------------------------------------------------------------------
// Envelope construction: divide and conquer with a breakpoint-ordered merge.
// Within a strip where each sub-envelope has a fixed owner, the winner
// flips exactly at the sign-changing crossings of that pair, so the merge
// needs only crossing lists and the order at -infinity.
// ---------------------------------------------------------------------------
namespace detail {

template <class Fam>
class EnvelopeBuilder {
  public:
    using BP = typename Fam::BP;
    using Env = EnvelopeT<BP>;

    explicit EnvelopeBuilder(const Fam& fam) : fam_(fam) {}

    Env build() {
        if (fam_.size() == 0) throw EmptyInput("envelope of empty family");
        return rec(0, fam_.size());
    }

  private:
    const Fam& fam_;

    Env rec(size_t lo, size_t hi) {
        if (hi - lo == 1) {
            Env e;
            e.owners = {static_cast<int>(lo)};
            return e;
        }
        const size_t mid = lo + (hi - lo) / 2;
        Env a = rec(lo, mid);
        Env b = rec(mid, hi);
        return merge(a, b);
    }

    // winner sign convention: -1 => first curve below, +1 => second below
    int tie_lower_id(int i, int j) const { return fam_.ext_id(i) < fam_.ext_id(j) ? i : j; }

    Env merge(const Env& A, const Env& B) {
        Env out;
        size_t ia = 0, ib = 0;
        std::optional<BP> cur;

        auto push_piece = [&](int curve, const std::optional<BP>& left) {
            if (!out.owners.empty() && out.owners.back() == curve) return;
            if (!out.owners.empty()) out.breakpoints.push_back(*left);
            out.owners.push_back(curve);
        };

        while (true) {
            const int o1 = A.owners[ia], o2 = B.owners[ib];
            std::optional<BP> hi;
            bool adva = false, advb = false;
            if (ia < A.breakpoints.size() && ib < B.breakpoints.size()) {
                const int c = Fam::bp_cmp(A.breakpoints[ia], B.breakpoints[ib]);
                hi = (c <= 0) ? A.breakpoints[ia] : B.breakpoints[ib];
                adva = c <= 0;
                advb = c >= 0;
            } else if (ia < A.breakpoints.size()) {
                hi = A.breakpoints[ia];
                adva = true;
            } else if (ib < B.breakpoints.size()) {
                hi = B.breakpoints[ib];
                advb = true;
            }

            const bool empty_strip = cur && hi && Fam::bp_cmp(*cur, *hi) == 0;
            if (!empty_strip) emit_strip(push_piece, o1, o2, cur, hi);

            if (!hi) break;
            cur = hi;
            if (adva) ++ia;
            if (advb) ++ib;
        }
        return out;
    }

    template <class Push>
    void emit_strip(Push&& push, int o1, int o2, const std::optional<BP>& lo,
                    const std::optional<BP>& hi) {
        const int base = fam_.order_at_neg_inf(o1, o2);
        if (base == 0) {
            push(tie_lower_id(o1, o2), lo);
            return;
        }
        std::vector<BP> xs = fam_.crossings(o1, o2);
        int flips = 0;
        std::vector<BP> inner;
        for (const auto& x : xs) {
            if (lo && Fam::bp_cmp(x, *lo) <= 0) {
                ++flips;
                continue;
            }
            if (hi && Fam::bp_cmp(x, *hi) >= 0) continue;
            inner.push_back(x);
        }
        int w = (flips % 2 == 0) ? base : -base;
        std::optional<BP> left = lo;
        for (const auto& x : inner) {
            push(w < 0 ? o1 : o2, left);
            left = x;
            w = -w;
        }
        push(w < 0 ? o1 : o2, left);
    }
};

template <class Fam>
EnvelopeT<typename Fam::BP> build_envelope(const Fam& fam) {
    EnvelopeT<typename Fam::BP> env = EnvelopeBuilder<Fam>(fam).build();
    for (auto& o : env.owners) o = fam.ext_id(static_cast<size_t>(o));
    return env;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point location. Cells are half-open [b, b'), so the count of
// breakpoints <= x indexes the owning cell.
// ---------------------------------------------------------------------------
struct LocateResult {
    int owner = -1;
    // set when x falls exactly on a breakpoint: the owner left of it
    std::optional<int> boundary_left_owner;
};

inline LocateResult envelope_locate_detail(const EnvelopeF64& env, double x) {
    const size_t idx = static_cast<size_t>(
        std::upper_bound(env.breakpoints.begin(), env.breakpoints.end(), x) - env.breakpoints.begin());
    LocateResult r;
    r.owner = env.owners[idx];
    if (idx > 0 && env.breakpoints[idx - 1] == x) r.boundary_left_owner = env.owners[idx - 1];
    return r;
}

inline LocateResult envelope_locate_detail(const EnvelopeExact& env, const Rat& x) {
    size_t lo = 0, hi = env.breakpoints.size();
    while (lo < hi) {
        const size_t mid = lo + (hi - lo) / 2;
        const int c = env.breakpoints[mid].cmp_rat(x);  // sign(bp - x)
        if (c <= 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    LocateResult r;
    r.owner = env.owners[lo];
    if (lo > 0 && env.breakpoints[lo - 1].cmp_rat(x) == 0) r.boundary_left_owner = env.owners[lo - 1];
    return r;
}

template <class Env, class X>
int envelope_locate(const Env& env, const X& x) {
    return envelope_locate_detail(env, x).owner;
}

// ---------------------------------------------------------------------------
// Public constructions.
// ---------------------------------------------------------------------------
template <class T>
struct QuadSpec {
    T a, b, c;  // a > 0
    int id = 0;
};

inline EnvelopeExact envelope_quadratics(const std::vector<QuadSpec<Rat>>& quads) {
    std::vector<PowFamily::Curve> curves;
    std::vector<int> ids;
    curves.reserve(quads.size());
    for (const auto& q : quads) {
        if (sgn(q.a) <= 0) throw ValidationError("envelope quadratic with non-positive leading coefficient");
        // a x^2 + b x + c == ((x-u)^2 + v)/p with p = 1/a
        Rat u(-q.b / (2 * q.a));
        Rat v(q.c / q.a - u * u);
        curves.push_back({u, v, Rat(1 / q.a)});
        ids.push_back(q.id);
    }
    return detail::build_envelope(PowFamily(std::move(curves), 2, std::move(ids)));
}

inline EnvelopeF64 envelope_quadratics(const std::vector<QuadSpec<double>>& quads) {
    std::vector<QuadFamilyF64::Curve> curves;
    std::vector<int> ids;
    for (const auto& q : quads) {
        if (!(q.a > 0)) throw ValidationError("envelope quadratic with non-positive leading coefficient");
        curves.push_back({q.a, q.b, q.c});
        ids.push_back(q.id);
    }
    return detail::build_envelope(QuadFamilyF64(std::move(curves), std::move(ids)));
}

// Minimization diagram of |x - s_i| / p_i^{1/alpha} on the line.
inline EnvelopeExact weighted_voronoi_1d(const std::vector<WeightedSite1D<Rat>>& sites, unsigned alpha) {
    std::vector<PowFamily::Curve> curves;
    std::vector<int> ids;
    for (const auto& s : sites) {
        curves.push_back({s.pos, Rat(0), s.power});
        ids.push_back(s.id);
    }
    return detail::build_envelope(PowFamily(std::move(curves), alpha, std::move(ids)));
}

inline EnvelopeF64 weighted_voronoi_1d(const std::vector<WeightedSite1D<double>>& sites, unsigned alpha) {
    std::vector<QuadFamilyF64::Curve> curves;
    std::vector<int> ids;
    for (const auto& s : sites) {
        const double w2 = std::pow(s.power, 2.0 / static_cast<double>(alpha));
        curves.push_back({1.0 / w2, -2.0 * s.pos / w2, s.pos * s.pos / w2});
        ids.push_back(s.id);
    }
    return detail::build_envelope(QuadFamilyF64(std::move(curves), std::move(ids)));
}

// Restriction of the weighted planar diagram to the line origin + t*dir;
// dir need not be unit, the parameterization just stretches.
inline EnvelopeExact voronoi_slice_2d(const std::vector<WeightedSite2D<Rat>>& sites, unsigned alpha,
                                      const Pt2<Rat>& origin, const Pt2<Rat>& dir) {
    const Rat d2 = dir.x * dir.x + dir.y * dir.y;
    if (sgn(d2) == 0) throw ValidationError("slice direction is zero");
    std::vector<PowFamily::Curve> curves;
    std::vector<int> ids;
    for (const auto& s : sites) {
        const Rat rx = s.pos.x - origin.x, ry = s.pos.y - origin.y;
        // |origin + t dir - s|^2 = d2 (t - u)^2 + v * d2, u = <dir, r>/d2
        Rat u((dir.x * rx + dir.y * ry) / d2);
        Rat v((rx * rx + ry * ry) / d2 - u * u);
        curves.push_back({u, v, s.power});
        ids.push_back(s.id);
    }
    return detail::build_envelope(PowFamily(std::move(curves), alpha, std::move(ids)));
}

inline EnvelopeF64 voronoi_slice_2d(const std::vector<WeightedSite2D<double>>& sites, unsigned alpha,
                                    const Pt2<double>& origin, const Pt2<double>& dir) {
    const double d2 = dir.x * dir.x + dir.y * dir.y;
    if (d2 == 0.0) throw ValidationError("slice direction is zero");
    std::vector<QuadFamilyF64::Curve> curves;
    std::vector<int> ids;
    for (const auto& s : sites) {
        const double rx = s.pos.x - origin.x, ry = s.pos.y - origin.y;
        const double u = (dir.x * rx + dir.y * ry) / d2;
        const double v = (rx * rx + ry * ry) / d2 - u * u;
        const double w2 = std::pow(s.power, 2.0 / static_cast<double>(alpha));
        // (t-u)^2 + v, scaled by d2/w2: leading coefficient d2/w2
        const double a = d2 / w2;
        curves.push_back({a, -2.0 * u * a, (u * u + v) * a});
        ids.push_back(s.id);
    }
    return detail::build_envelope(QuadFamilyF64(std::move(curves), std::move(ids)));
}

}  // namespace sinr
