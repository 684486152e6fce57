#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sinr/points.hpp"

namespace sinr {

// Family {(left_i, right_i)} of index-set pairs whose products cover each
// dominating pair exactly once.
struct PairDecomposition {
    struct Pair {
        std::vector<int> left;   // indices into P
        std::vector<int> right;  // indices into Q
    };
    std::vector<Pair> pairs;

    size_t total_weight() const {
        size_t s = 0;
        for (const auto& p : pairs) s += p.left.size() + p.right.size();
        return s;
    }
    size_t product_size() const {
        size_t s = 0;
        for (const auto& p : pairs) s += p.left.size() * p.right.size();
        return s;
    }
};

// Rank-space core: keys are integers, dominance is non-strict (<=) on
// both coordinates. Strict variants are encoded by the caller through
// key perturbation (2*rank + side tag).
//
// Structure: a mergesort tree over P ordered by x-key. The x-prefix of a
// query decomposes into aligned power-of-two blocks; inside each block
// the y-sorted order is a level array of the tree, and the y-prefix
// decomposes again into aligned sub-blocks. Each (block, sub-block) is a
// canonical subset; queries are routed to O(log^2 n) of them.
class DominancePairsBuilder {
  public:
    DominancePairsBuilder(std::vector<std::pair<int64_t, int64_t>> P)
        : n_(P.size()) {
        if (n_ == 0) return;
        std::vector<int> order(n_);
        for (size_t i = 0; i < n_; ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (P[a].first != P[b].first) return P[a].first < P[b].first;
            if (P[a].second != P[b].second) return P[a].second < P[b].second;
            return a < b;
        });
        xs_.resize(n_);
        levels_.emplace_back(n_);
        for (size_t i = 0; i < n_; ++i) {
            xs_[i] = P[order[i]].first;
            levels_[0][i] = {P[order[i]].second, order[i]};
        }
        for (size_t width = 1; width < n_; width *= 2) {
            const auto& prev = levels_.back();
            std::vector<Entry> cur(n_);
            for (size_t lo = 0; lo < n_; lo += 2 * width) {
                const size_t mid = std::min(lo + width, n_);
                const size_t hi = std::min(lo + 2 * width, n_);
                std::merge(prev.begin() + lo, prev.begin() + mid, prev.begin() + mid,
                           prev.begin() + hi, cur.begin() + lo);
            }
            levels_.push_back(std::move(cur));
        }
    }

    void route(int q_index, int64_t qx, int64_t qy) {
        if (n_ == 0) return;
        const size_t cntx = static_cast<size_t>(
            std::upper_bound(xs_.begin(), xs_.end(), qx) - xs_.begin());
        size_t pos = 0;
        size_t remaining = cntx;
        // aligned power-of-two blocks of the x-prefix, largest first
        for (size_t j = levels_.size(); j-- > 0;) {
            const size_t width = size_t{1} << j;
            if (remaining < width) continue;
            route_block(q_index, j, pos, qy);
            pos += width;
            remaining -= width;
        }
    }

    PairDecomposition finish() {
        PairDecomposition out;
        out.pairs.resize(slots_.size());
        for (size_t s = 0; s < slots_.size(); ++s) {
            const Slot& sl = slots_[s];
            auto& pr = out.pairs[s];
            pr.right = std::move(sl.right);
            const auto& lvl = levels_[sl.level];
            pr.left.reserve(sl.len);
            for (size_t t = sl.start; t < sl.start + sl.len; ++t)
                pr.left.push_back(lvl[t].second);
        }
        return out;
    }

  private:
    using Entry = std::pair<int64_t, int>;  // (y-key, original index)

    struct Slot {
        size_t level, start, len;
        std::vector<int> right;
    };

    size_t n_;
    std::vector<int64_t> xs_;
    std::vector<std::vector<Entry>> levels_;
    std::vector<Slot> slots_;
    std::unordered_map<uint64_t, size_t> slot_index_;

    void route_block(int q_index, size_t level, size_t block_start, int64_t qy) {
        const auto& lvl = levels_[level];
        const size_t width = size_t{1} << level;
        const auto begin = lvl.begin() + block_start;
        const size_t cnty = static_cast<size_t>(
            std::upper_bound(begin, begin + width, Entry{qy, INT32_MAX}) - begin);
        size_t pos = 0;
        size_t remaining = cnty;
        for (size_t l = level + 1; l-- > 0;) {
            const size_t sub = size_t{1} << l;
            if (remaining < sub) continue;
            add_to_slot(q_index, level, block_start + pos, sub);
            pos += sub;
            remaining -= sub;
        }
    }

    void add_to_slot(int q_index, size_t level, size_t start, size_t len) {
        const uint64_t key = (static_cast<uint64_t>(level) << 56) |
                             (static_cast<uint64_t>(start) << 28) | static_cast<uint64_t>(len);
        auto [it, inserted] = slot_index_.try_emplace(key, slots_.size());
        if (inserted) slots_.push_back(Slot{level, start, len, {}});
        slots_[it->second].right.push_back(q_index);
    }
};

inline PairDecomposition dominance_pairs_ranked(const std::vector<std::pair<int64_t, int64_t>>& P,
                                                const std::vector<std::pair<int64_t, int64_t>>& Q) {
    DominancePairsBuilder builder(P);
    for (size_t i = 0; i < Q.size(); ++i) builder.route(static_cast<int>(i), Q[i].first, Q[i].second);
    return builder.finish();
}

// Non-strict dominance p <= q on both coordinates, arbitrary scalar type.
template <class T>
PairDecomposition dominance_pairs(const std::vector<Pt2<T>>& P, const std::vector<Pt2<T>>& Q) {
    auto rank_axis = [&](auto get) {
        std::vector<T> vals;
        vals.reserve(P.size() + Q.size());
        for (const auto& p : P) vals.push_back(get(p));
        for (const auto& q : Q) vals.push_back(get(q));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    };
    auto xs = rank_axis([](const Pt2<T>& p) { return p.x; });
    auto ys = rank_axis([](const Pt2<T>& p) { return p.y; });
    auto rank_of = [](const std::vector<T>& vals, const T& v) {
        return static_cast<int64_t>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
    };
    std::vector<std::pair<int64_t, int64_t>> pr(P.size()), qr(Q.size());
    for (size_t i = 0; i < P.size(); ++i) pr[i] = {rank_of(xs, P[i].x), rank_of(ys, P[i].y)};
    for (size_t i = 0; i < Q.size(); ++i) qr[i] = {rank_of(xs, Q[i].x), rank_of(ys, Q[i].y)};
    return dominance_pairs_ranked(pr, qr);
}

}  // namespace sinr
