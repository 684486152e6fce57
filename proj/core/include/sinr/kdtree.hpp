#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sinr/errors.hpp"
#include "sinr/points.hpp"

namespace sinr {

// Static 2-d tree for exact nearest-neighbor queries; ties resolve to the
// lowest point id. Works over both scalar backends (comparisons only).
template <class T>
class KdTree2 {
  public:
    explicit KdTree2(std::vector<Pt2<T>> pts) : pts_(std::move(pts)) {
        if (pts_.empty()) throw EmptyInput("kd-tree of empty point set");
        idx_.resize(pts_.size());
        std::iota(idx_.begin(), idx_.end(), 0);
        build(0, pts_.size(), 0);
    }

    int nearest(const Pt2<T>& q) const {
        int best = -1;
        T best_d2(0);
        search(0, pts_.size(), 0, q, best, best_d2);
        return best;
    }

  private:
    std::vector<Pt2<T>> pts_;
    std::vector<int> idx_;

    void build(size_t lo, size_t hi, int axis) {
        if (hi - lo <= 1) return;
        const size_t mid = lo + (hi - lo) / 2;
        auto cmp = [&](int a, int b) {
            const T& va = axis == 0 ? pts_[a].x : pts_[a].y;
            const T& vb = axis == 0 ? pts_[b].x : pts_[b].y;
            if (va < vb) return true;
            if (vb < va) return false;
            return a < b;
        };
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi, cmp);
        build(lo, mid, 1 - axis);
        build(mid + 1, hi, 1 - axis);
    }

    void consider(int id, const Pt2<T>& q, int& best, T& best_d2) const {
        const T d2 = dist2(pts_[id], q);
        if (best < 0 || d2 < best_d2 || (d2 == best_d2 && id < best)) {
            best = id;
            best_d2 = d2;
        }
    }

    void search(size_t lo, size_t hi, int axis, const Pt2<T>& q, int& best, T& best_d2) const {
        if (lo >= hi) return;
        const size_t mid = lo + (hi - lo) / 2;
        const int id = idx_[mid];
        consider(id, q, best, best_d2);
        if (hi - lo == 1) return;
        const T& qa = axis == 0 ? q.x : q.y;
        const T& pa = axis == 0 ? pts_[id].x : pts_[id].y;
        const T gap = qa < pa ? T(pa - qa) : T(qa - pa);
        const bool left_first = qa < pa;
        if (left_first) {
            search(lo, mid, 1 - axis, q, best, best_d2);
            if (!(gap * gap > best_d2)) search(mid + 1, hi, 1 - axis, q, best, best_d2);
        } else {
            search(mid + 1, hi, 1 - axis, q, best, best_d2);
            if (!(gap * gap > best_d2)) search(lo, mid, 1 - axis, q, best, best_d2);
        }
    }
};

// Euclidean nearest point id for each query; ties to the lowest id.
template <class T>
std::vector<int> nn_batch_2d(const std::vector<Pt2<T>>& points, const std::vector<Pt2<T>>& queries) {
    KdTree2<T> tree(points);
    std::vector<int> out(queries.size());
    for (size_t i = 0; i < queries.size(); ++i) out[i] = tree.nearest(queries[i]);
    return out;
}

template <class T>
struct WeightedNNResult {
    int id = -1;
    // |q - p|^alpha / power of the returned site: rational on the exact
    // backend, monotone in the weighted distance |q-p|/power^{1/alpha}
    T powered_ratio{};
};

// Multiplicatively weighted nearest neighbor. The default implementation
// is an exact scan, which meets the (1+eps) contract with eps = 0;
// substitute structures may plug in behind the same signature.
template <class T>
WeightedNNResult<T> weighted_nn(const std::vector<WeightedSite2D<T>>& sites, const Pt2<T>& q,
                                unsigned alpha, double eps = 0.0) {
    (void)eps;
    if (sites.empty()) throw EmptyInput("weighted_nn with no sites");
    WeightedNNResult<T> best;
    for (const auto& s : sites) {
        const T d2 = dist2(s.pos, q);
        T score = scalar_pow(d2, alpha / 2) / s.power;
        if (best.id < 0 || score < best.powered_ratio ||
            (score == best.powered_ratio && s.id < best.id)) {
            best.id = s.id;
            best.powered_ratio = score;
        }
    }
    return best;
}

}  // namespace sinr
