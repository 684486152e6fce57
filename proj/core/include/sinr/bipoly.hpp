#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sinr/fraction.hpp"
#include "sinr/multipoint.hpp"
#include "sinr/poly.hpp"

namespace sinr {

template <class T>
struct Grid2D {
    size_t rows = 0, cols = 0;
    std::vector<T> v;

    Grid2D() = default;
    Grid2D(size_t r, size_t c) : rows(r), cols(c), v(r * c, T(0)) {}
    T& at(size_t r, size_t c) { return v[r * cols + c]; }
    const T& at(size_t r, size_t c) const { return v[r * cols + c]; }
};

// Dense bivariate polynomial; entry (i, j) multiplies x^i y^j.
// Canonical zero is the 0x0 array.
template <class T>
struct BiPoly {
    size_t nx = 0, ny = 0;  // degx+1, degy+1 for nonzero polynomials
    std::vector<T> a;

    BiPoly() = default;
    BiPoly(size_t nx_, size_t ny_) : nx(nx_), ny(ny_), a(nx_ * ny_, T(0)) {}

    static BiPoly constant(T v) {
        BiPoly p(1, 1);
        p.a[0] = std::move(v);
        p.trim();
        return p;
    }

    int degx() const { return static_cast<int>(nx) - 1; }
    int degy() const { return static_cast<int>(ny) - 1; }
    bool is_zero() const { return a.empty(); }

    T& at(size_t i, size_t j) { return a[i * ny + j]; }
    const T& at(size_t i, size_t j) const { return a[i * ny + j]; }

    void trim() {
        size_t mx = 0, my = 0;
        for (size_t i = 0; i < nx; ++i)
            for (size_t j = 0; j < ny; ++j)
                if (!(a[i * ny + j] == T(0))) {
                    mx = std::max(mx, i + 1);
                    my = std::max(my, j + 1);
                }
        if (mx == nx && my == ny) return;
        std::vector<T> b(mx * my, T(0));
        for (size_t i = 0; i < mx; ++i)
            for (size_t j = 0; j < my; ++j) b[i * my + j] = a[i * ny + j];
        a = std::move(b);
        nx = mx;
        ny = my;
    }

    bool operator==(const BiPoly& o) const { return nx == o.nx && ny == o.ny && a == o.a; }
};

template <class T>
BiPoly<T> bipoly_add(const BiPoly<T>& p, const BiPoly<T>& q) {
    BiPoly<T> r(std::max(p.nx, q.nx), std::max(p.ny, q.ny));
    for (size_t i = 0; i < p.nx; ++i)
        for (size_t j = 0; j < p.ny; ++j) r.at(i, j) += p.at(i, j);
    for (size_t i = 0; i < q.nx; ++i)
        for (size_t j = 0; j < q.ny; ++j) r.at(i, j) += q.at(i, j);
    r.trim();
    return r;
}

// Product through Kronecker substitution y -> x^S, one univariate
// multiplication; S leaves an empty guard band between y-slices.
template <class T>
BiPoly<T> bipoly_mul(const BiPoly<T>& p, const BiPoly<T>& q) {
    if (p.is_zero() || q.is_zero()) return BiPoly<T>();
    const size_t dx_out = (p.nx - 1) + (q.nx - 1);
    const size_t dy_out = (p.ny - 1) + (q.ny - 1);
    const size_t stride = 2 * dx_out + 1;

    auto pack = [&](const BiPoly<T>& f) {
        Poly<T> u;
        u.c.assign((f.ny - 1) * stride + f.nx, T(0));
        for (size_t i = 0; i < f.nx; ++i)
            for (size_t j = 0; j < f.ny; ++j) u.c[i + stride * j] = f.at(i, j);
        u.trim();
        return u;
    };

    Poly<T> prod = poly_mul(pack(p), pack(q));
    BiPoly<T> r(dx_out + 1, dy_out + 1);
    for (size_t idx = 0; idx < prod.c.size(); ++idx) {
        const size_t j = idx / stride, i = idx % stride;
        if (i <= dx_out && j <= dy_out)
            r.at(i, j) = prod.c[idx];
    }
    r.trim();
    return r;
}

// out.at(j, k) = a(xs[j], ys[k]); multipoint evaluation per y-slice in x,
// then per grid column in y, sharing the two point trees.
template <class T>
Grid2D<T> bipoly_grid_eval(const BiPoly<T>& a, const std::vector<T>& xs, const std::vector<T>& ys) {
    Grid2D<T> out(xs.size(), ys.size());
    if (a.is_zero() || xs.empty() || ys.empty()) return out;
    MultipointPlan<T> plan_x(xs), plan_y(ys);

    // slice_vals[j] = values of B_j on xs, where a = sum_j B_j(x) y^j
    std::vector<std::vector<T>> slice_vals(a.ny);
    for (size_t j = 0; j < a.ny; ++j) {
        Poly<T> bj;
        bj.c.resize(a.nx);
        for (size_t i = 0; i < a.nx; ++i) bj.c[i] = a.at(i, j);
        bj.trim();
        slice_vals[j] = plan_x.eval(bj);
    }
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        Poly<T> py;
        py.c.resize(a.ny);
        for (size_t j = 0; j < a.ny; ++j) py.c[j] = slice_vals[j][xi];
        py.trim();
        std::vector<T> row = plan_y.eval(py);
        for (size_t yi = 0; yi < ys.size(); ++yi) out.at(xi, yi) = row[yi];
    }
    return out;
}

// Tensorized inverse of grid evaluation: interpolate each grid row in y,
// then each resulting coefficient column in x.
template <class T>
BiPoly<T> bipoly_grid_interpolate(const std::vector<T>& xs, const std::vector<T>& ys,
                                  const Grid2D<T>& values) {
    if (values.rows != xs.size() || values.cols != ys.size())
        throw ValidationError("grid interpolation dimensions mismatch");
    if (xs.empty() || ys.empty()) return BiPoly<T>();
    MultipointPlan<T> plan_x(xs), plan_y(ys);
    if (plan_x.has_duplicate_points() || plan_y.has_duplicate_points())
        throw DuplicatePoint("duplicate grid coordinate");

    // y-interpolation per x row
    std::vector<std::vector<T>> ycoef(xs.size());
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        std::vector<T> vals(ys.size());
        for (size_t yi = 0; yi < ys.size(); ++yi) vals[yi] = values.at(xi, yi);
        Poly<T> p = plan_y.interpolate(vals);
        p.c.resize(ys.size(), T(0));
        ycoef[xi] = std::move(p.c);
    }
    BiPoly<T> out(xs.size(), ys.size());
    for (size_t j = 0; j < ys.size(); ++j) {
        std::vector<T> vals(xs.size());
        for (size_t xi = 0; xi < xs.size(); ++xi) vals[xi] = ycoef[xi][j];
        Poly<T> p = plan_x.interpolate(vals);
        for (size_t i = 0; i < p.c.size(); ++i) out.at(i, j) = p.c[i];
    }
    out.trim();
    return out;
}

template <class T>
struct BiFraction {
    BiPoly<T> num;
    BiPoly<T> den;

    BiFraction() : num(), den(BiPoly<T>::constant(T(1))) {}
    BiFraction(BiPoly<T> n, BiPoly<T> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw ValidationError("bivariate fraction with zero denominator");
    }
};

template <class T>
BiFraction<T> bifrac_add(const BiFraction<T>& f, const BiFraction<T>& g) {
    BiFraction<T> r;
    r.num = bipoly_add(bipoly_mul(f.num, g.den), bipoly_mul(g.num, f.den));
    r.den = bipoly_mul(f.den, g.den);
    return r;
}

template <class T>
BiFraction<T> bifrac_sum(std::vector<BiFraction<T>> fs) {
    if (fs.empty()) throw EmptyInput("bifrac_sum of empty sequence");
    while (fs.size() > 1) {
        std::vector<BiFraction<T>> nxt;
        nxt.reserve((fs.size() + 1) / 2);
        for (size_t i = 0; i + 1 < fs.size(); i += 2) nxt.push_back(bifrac_add(fs[i], fs[i + 1]));
        if (fs.size() % 2) nxt.push_back(std::move(fs.back()));
        fs = std::move(nxt);
    }
    return std::move(fs.front());
}

template <class T>
struct BiFracGridParts {
    Grid2D<T> num;
    Grid2D<T> den;
};

template <class T>
BiFracGridParts<T> bifrac_grid_parts(const std::vector<BiFraction<T>>& fs, const std::vector<T>& xs,
                                     const std::vector<T>& ys) {
    BiFraction<T> merged = bifrac_sum(fs);
    BiFracGridParts<T> parts;
    parts.num = bipoly_grid_eval(merged.num, xs, ys);
    parts.den = bipoly_grid_eval(merged.den, xs, ys);
    return parts;
}

// out.at(j, k) = sum_i fs[i](xs[j], ys[k]); throws PoleAtQuery when the
// merged denominator vanishes at a grid point.
template <class T>
Grid2D<T> bifrac_grid_eval(const std::vector<BiFraction<T>>& fs, const std::vector<T>& xs,
                           const std::vector<T>& ys) {
    if (fs.empty()) throw EmptyInput("bifrac_grid_eval of empty sequence");
    BiFracGridParts<T> parts = bifrac_grid_parts(fs, xs, ys);
    Grid2D<T> out(xs.size(), ys.size());
    for (size_t j = 0; j < xs.size(); ++j)
        for (size_t k = 0; k < ys.size(); ++k) {
            if (detail::den_vanishes(parts.den.at(j, k)))
                throw PoleAtQuery("denominator vanishes at grid point (" + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
            out.at(j, k) = parts.num.at(j, k) / parts.den.at(j, k);
        }
    return out;
}

}  // namespace sinr
