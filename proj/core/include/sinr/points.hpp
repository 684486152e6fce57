#pragma once

#include <vector>

#include "sinr/scalar.hpp"

namespace sinr {

template <class T>
struct Pt2 {
    T x{}, y{};
};

template <class T>
T dist2(const Pt2<T>& a, const Pt2<T>& b) {
    T dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Site with a multiplicative weight; the weight enters comparisons as
// weight = power^{1/alpha}, so exact code carries (power, alpha) instead
// of the (generally irrational) root.
template <class T>
struct WeightedSite1D {
    T pos{};
    T power{};  // > 0
    int id = 0;
};

template <class T>
struct WeightedSite2D {
    Pt2<T> pos{};
    T power{};  // > 0
    int id = 0;
};

}  // namespace sinr
