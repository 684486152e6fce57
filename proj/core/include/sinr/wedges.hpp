#pragma once

#include <cmath>
#include <vector>

#include "sinr/errors.hpp"

namespace sinr {

// One of k/2 double wedges partitioning the directions of the plane.
// Frame j is centered on the normal u_j = (cos 2pi j/k, sin 2pi j/k);
// membership of a direction maps to a two-sided dominance test in the
// (axis_a, axis_b) cone basis via to_frame.
struct WedgeFrame {
    int index = 0;
    double axis_a[2] = {0, 0};  // boundary direction at angle theta - pi/k
    double axis_b[2] = {0, 0};  // boundary direction at angle theta + pi/k
    double normal[2] = {0, 0};  // u_j
    double to_frame[2][2] = {{0, 0}, {0, 0}};  // d -> (mu, nu) cone coordinates
};

inline void check_wedge_k(int k) {
    if (k < 4 || k % 2 != 0) throw InvalidK("wedge count k must be even and >= 4");
}

// For k > 4 the polygon is rotated by a fixed generic angle. Inputs are
// decimal coordinates, so realizable direction ratios are rational; the
// offset keeps them off the wedge boundaries, where floating-point
// membership and rank comparisons could otherwise disagree. Any rotation
// of the circumscribed polygon satisfies the same norm sandwich. k = 4
// stays axis-aligned: its two frames split on |dx| >= |dy| exactly.
inline constexpr double kFrameRotation = 0.1234567891011127;

inline double frame_angle(int k, int j) {
    return 2.0 * M_PI * j / k + (k == 4 ? 0.0 : kFrameRotation);
}

inline std::vector<WedgeFrame> wedge_frames(int k) {
    check_wedge_k(k);
    std::vector<WedgeFrame> out(static_cast<size_t>(k / 2));
    for (int j = 0; j < k / 2; ++j) {
        WedgeFrame& f = out[static_cast<size_t>(j)];
        f.index = j;
        const double theta = frame_angle(k, j);
        const double half = M_PI / k;
        f.normal[0] = std::cos(theta);
        f.normal[1] = std::sin(theta);
        f.axis_a[0] = std::cos(theta - half);
        f.axis_a[1] = std::sin(theta - half);
        f.axis_b[0] = std::cos(theta + half);
        f.axis_b[1] = std::sin(theta + half);
        const double det = f.axis_a[0] * f.axis_b[1] - f.axis_a[1] * f.axis_b[0];
        f.to_frame[0][0] = f.axis_b[1] / det;
        f.to_frame[0][1] = -f.axis_b[0] / det;
        f.to_frame[1][0] = -f.axis_a[1] / det;
        f.to_frame[1][1] = f.axis_a[0] / det;
    }
    return out;
}

// Norm whose unit ball is the regular k-gon circumscribed about the unit
// disk: |v|_k = max_j |<v, u_j>|. Satisfies |v|_k <= |v|_2 <= sec(pi/k)|v|_k.
inline double polygonal_norm(double vx, double vy, int k) {
    check_wedge_k(k);
    if (k == 4) return std::max(std::abs(vx), std::abs(vy));
    double best = 0.0;
    for (int j = 0; j < k / 2; ++j) {
        const double theta = frame_angle(k, j);
        best = std::max(best, std::abs(vx * std::cos(theta) + vy * std::sin(theta)));
    }
    return best;
}

// Index of the frame whose double wedge claims direction d, each
// direction claimed exactly once. For k = 4 the first frame takes
// |dx| >= |dy| including ties and the second the strict complement; for
// larger k the angular intervals are half-open around each normal.
inline int claiming_frame(double dx, double dy, int k) {
    check_wedge_k(k);
    if (k == 4) return std::abs(dx) >= std::abs(dy) ? 0 : 1;
    double phi = std::atan2(dy, dx) - kFrameRotation;  // relative to frame 0
    while (phi < 0) phi += M_PI;  // direction class in [0, pi)
    while (phi >= M_PI) phi -= M_PI;
    const double cell = 2.0 * M_PI / k;
    int j = static_cast<int>(std::floor((phi + cell / 2) / cell));
    if (j >= k / 2) j = 0;
    return j;
}

}  // namespace sinr
