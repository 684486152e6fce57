#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "sinr/poly.hpp"

namespace sinr {

namespace detail {

template <class T>
Poly<T> poly_truncate(const Poly<T>& a, size_t k) {
    Poly<T> r;
    r.c.assign(a.c.begin(), a.c.begin() + std::min(a.c.size(), k));
    r.trim();
    return r;
}

// reverse of a viewed as a length-len coefficient vector
template <class T>
Poly<T> poly_reverse(const Poly<T>& a, size_t len) {
    Poly<T> r;
    r.c.assign(len, T(0));
    for (size_t i = 0; i < a.c.size() && i < len; ++i) r.c[len - 1 - i] = a.c[i];
    r.trim();
    return r;
}

// Newton continuation of the power-series inverse of f from precision cur
// to precision need; g is the inverse mod x^cur. Requires f.c[0] == 1.
template <class T>
Poly<T> extend_series_inverse(const Poly<T>& f, Poly<T> g, size_t cur, size_t need) {
    while (cur < need) {
        size_t nxt = std::min(cur * 2, need);
        Poly<T> fg = poly_mul(poly_truncate(f, nxt), g);
        Poly<T> two_minus = poly_sub(Poly<T>::constant(T(2)), fg);
        g = poly_truncate(poly_mul(g, two_minus), nxt);
        cur = nxt;
    }
    return g;
}

template <class T>
Poly<T> series_inverse(const Poly<T>& f, size_t k) {
    return extend_series_inverse(f, Poly<T>::constant(T(1)), 1, k);
}

// Schoolbook remainder for a monic divisor; fine for short divisors or
// short quotients.
template <class T>
void divmod_monic_naive(const Poly<T>& a, const Poly<T>& m, Poly<T>& r) {
    const int dm = m.deg();
    r = a;
    for (int i = r.deg(); i >= dm; --i) {
        T t = r.c[static_cast<size_t>(i)];
        if (t == T(0)) continue;
        for (int j = 0; j < dm; ++j)
            r.c[static_cast<size_t>(i - dm + j)] -= t * m.c[static_cast<size_t>(j)];
        r.c[static_cast<size_t>(i)] = T(0);
    }
    r.c.resize(static_cast<size_t>(std::max(dm, 0)));
    r.trim();
}

// a mod m for monic m, via the reversed-series inverse of m (precision
// >= deg a - deg m + 1; extended here if short).
template <class T>
void mod_monic_fast(const Poly<T>& a, const Poly<T>& m, const Poly<T>& invrev, size_t invprec,
                    Poly<T>& r) {
    const int da = a.deg(), dm = m.deg();
    if (da < dm) {
        r = a;
        return;
    }
    const size_t need = static_cast<size_t>(da - dm + 1);
    if (dm <= 24 || need <= 24) {
        divmod_monic_naive(a, m, r);
        return;
    }
    Poly<T> inv = invrev;
    if (invprec < need)
        inv = extend_series_inverse(poly_reverse(m, static_cast<size_t>(dm + 1)), inv, invprec, need);
    Poly<T> ra = poly_reverse(a, static_cast<size_t>(da + 1));
    Poly<T> rq = poly_truncate(poly_mul(ra, poly_truncate(inv, need)), need);
    Poly<T> q = poly_reverse(rq, need);
    Poly<T> qm = poly_mul(q, m);
    r = poly_truncate(poly_sub(a, qm), static_cast<size_t>(dm));
}

}  // namespace detail

// Subproduct tree over a fixed point set, reusable across dividends.
// eval() runs the remainder tree; interpolate() the matching linear
// combination going up.
//
// Float64 caveat: remainder trees lose about log2 of the subproduct and
// inverse-series coefficient norms, which grows linearly in the point
// count for points spread over an interval. eval() therefore checks a
// build-time loss estimate and falls back to per-point evaluation when
// the tree would be inaccurate; eval_tree() always runs the tree (the
// benchmark path). The exact backend is unaffected.
template <class T>
class MultipointPlan {
  public:
    explicit MultipointPlan(std::vector<T> points) : pts_(std::move(points)) {
        if (pts_.empty()) return;
        root_ = build(0, pts_.size());
        prepare_inverses();
        if constexpr (!is_exact_scalar<T>) estimate_float_loss();
    }

    const std::vector<T>& points() const { return pts_; }

    const Poly<T>& modulus() const { return nodes_[root_].prod; }

    // true when the remainder tree keeps enough float64 bits for ~1e-6
    bool tree_is_float_safe() const { return float_loss_bits_ <= 20.0; }

    bool has_duplicate_points() const {
        std::vector<size_t> idx(pts_.size());
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return pts_[i] < pts_[j]; });
        for (size_t i = 1; i < idx.size(); ++i)
            if (pts_[idx[i - 1]] == pts_[idx[i]]) return true;
        return false;
    }

    std::vector<T> eval(const Poly<T>& a) const {
        if constexpr (!is_exact_scalar<T>) {
            if (!tree_is_float_safe()) {
                std::vector<T> out(pts_.size(), T(0));
                for (size_t i = 0; i < pts_.size(); ++i) out[i] = poly_eval(a, pts_[i]);
                return out;
            }
        }
        return eval_tree(a);
    }

    std::vector<T> eval_tree(const Poly<T>& a) const {
        std::vector<T> out(pts_.size(), T(0));
        if (pts_.empty()) return out;
        if (a.is_zero()) return out;
        if (static_cast<size_t>(a.deg()) <= 2 || pts_.size() <= 16) {
            for (size_t i = 0; i < pts_.size(); ++i) out[i] = poly_eval(a, pts_[i]);
            return out;
        }
        eval_rec(root_, a, out);
        return out;
    }

    // Interpolating polynomial of (points, values); degree < #points.
    Poly<T> interpolate(const std::vector<T>& values) const {
        if (values.size() != pts_.size())
            throw ValidationError("interpolation value count does not match point count");
        if (pts_.empty()) return Poly<T>::zero();
        if (has_duplicate_points()) throw DuplicatePoint("duplicate interpolation point");
        Poly<T> md = poly_derivative(nodes_[root_].prod);
        std::vector<T> mdv = eval(md);
        std::vector<T> coef(pts_.size());
        for (size_t i = 0; i < pts_.size(); ++i) coef[i] = values[i] / mdv[i];
        return combine(root_, coef);
    }

  private:
    static constexpr size_t kLeafSize = 8;

    struct Node {
        size_t lo = 0, hi = 0;
        size_t left = npos, right = npos;
        Poly<T> prod;
        Poly<T> invrev;
        size_t invprec = 0;
    };
    static constexpr size_t npos = static_cast<size_t>(-1);

    std::vector<T> pts_;
    std::vector<Node> nodes_;
    size_t root_ = npos;
    double float_loss_bits_ = 0.0;

    void estimate_float_loss() {
        if constexpr (!is_exact_scalar<T>) {
            auto norm1 = [](const Poly<T>& p) {
                double s = 0;
                for (const auto& c : p.c) s += std::abs(static_cast<double>(c));
                return s;
            };
            for (const auto& n : nodes_) {
                if (n.left == npos) continue;
                double bits = std::log2(std::max(norm1(n.prod), 1.0));
                if (!n.invrev.is_zero()) bits += std::log2(std::max(norm1(n.invrev), 1.0));
                float_loss_bits_ = std::max(float_loss_bits_, bits);
            }
        }
    }

    size_t build(size_t lo, size_t hi) {
        Node n;
        n.lo = lo;
        n.hi = hi;
        if (hi - lo <= kLeafSize) {
            n.prod = Poly<T>::constant(T(1));
            for (size_t i = lo; i < hi; ++i)
                n.prod = poly_mul_naive(n.prod, Poly<T>::linear(T(-pts_[i]), T(1)));
            nodes_.push_back(std::move(n));
            return nodes_.size() - 1;
        }
        size_t mid = lo + (hi - lo) / 2;
        n.left = build(lo, mid);
        n.right = build(mid, hi);
        n.prod = poly_mul(nodes_[n.left].prod, nodes_[n.right].prod);
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    void prepare_inverses() {
        for (size_t v = 0; v < nodes_.size(); ++v) {
            Node& n = nodes_[v];
            const int d = n.prod.deg();
            if (n.left == npos || d <= 24) continue;  // naive division path
            size_t prec = static_cast<size_t>(d);
            if (v == root_) prec += 4;
            n.invrev = detail::series_inverse(detail::poly_reverse(n.prod, static_cast<size_t>(d + 1)), prec);
            n.invprec = prec;
        }
    }

    void eval_rec(size_t v, const Poly<T>& a, std::vector<T>& out) const {
        const Node& n = nodes_[v];
        Poly<T> r;
        if (a.deg() >= n.prod.deg())
            detail::mod_monic_fast(a, n.prod, n.invrev, n.invprec, r);
        else
            r = a;
        if (n.left == npos) {
            for (size_t i = n.lo; i < n.hi; ++i) out[i] = poly_eval(r, pts_[i]);
            return;
        }
        eval_rec(n.left, r, out);
        eval_rec(n.right, r, out);
    }

    Poly<T> combine(size_t v, const std::vector<T>& coef) const {
        const Node& n = nodes_[v];
        if (n.left == npos) {
            Poly<T> acc = Poly<T>::zero();
            for (size_t i = n.lo; i < n.hi; ++i) {
                Poly<T> term = Poly<T>::constant(coef[i]);
                for (size_t j = n.lo; j < n.hi; ++j)
                    if (j != i) term = poly_mul_naive(term, Poly<T>::linear(T(-pts_[j]), T(1)));
                acc = poly_add(acc, term);
            }
            return acc;
        }
        Poly<T> l = combine(n.left, coef);
        Poly<T> r = combine(n.right, coef);
        return poly_add(poly_mul(l, nodes_[n.right].prod), poly_mul(r, nodes_[n.left].prod));
    }
};

// a evaluated at each xs[j], via the remainder tree.
template <class T>
std::vector<T> poly_eval_batch(const Poly<T>& a, const std::vector<T>& xs) {
    return MultipointPlan<T>(xs).eval(a);
}

// Coefficient form of the unique degree < n interpolant.
template <class T>
Poly<T> poly_interpolate(const ValueTable<T>& table) {
    MultipointPlan<T> plan(table.points);
    return plan.interpolate(table.values);
}

}  // namespace sinr
