#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sinr/multipoint.hpp"
#include "sinr/poly.hpp"
#include "testutil.hpp"

using namespace sinr;
using testutil::Rng;

TEST_CASE("poly_mul hand examples") {
    Poly<Rat> a({Rat(1), Rat(2)}), b({Rat(3), Rat(1)});
    Poly<Rat> p = poly_mul(a, b);
    CHECK(p == Poly<Rat>({Rat(3), Rat(7), Rat(2)}));

    CHECK(poly_mul(a, Poly<Rat>::zero()).is_zero());
    CHECK(poly_mul(Poly<Rat>::zero(), b).is_zero());
}

TEST_CASE("poly_mul matches schoolbook, exact, degree 50") {
    Rng rng(1001);
    for (int rep = 0; rep < 8; ++rep) {
        Poly<Rat> a = testutil::random_poly_exact(rng, 50);
        Poly<Rat> b = testutil::random_poly_exact(rng, 50);
        CHECK(poly_mul(a, b) == poly_mul_naive(a, b));
        CHECK(poly_mul(a, b).deg() == a.deg() + b.deg());
    }
}

TEST_CASE("poly_mul float64 within 1e-12 of the exact product, degree 50") {
    Rng rng(1002);
    for (int rep = 0; rep < 4; ++rep) {
        Poly<Rat> ax = testutil::random_poly_exact(rng, 50);
        Poly<Rat> bx = testutil::random_poly_exact(rng, 50);
        Poly<double> a, b;
        for (const auto& c : ax.c) a.c.push_back(to_double(c));
        for (const auto& c : bx.c) b.c.push_back(to_double(c));
        Poly<Rat> exact = poly_mul(ax, bx);
        Poly<double> got = poly_mul(a, b);
        REQUIRE(got.c.size() == exact.c.size());
        for (size_t i = 0; i < got.c.size(); ++i) {
            const double want = to_double(exact.c[i]);
            CHECK(testutil::rel_err(got.c[i], want) <= 1e-12);
        }
    }
}

TEST_CASE("ring laws on random inputs, exact, degrees <= 64") {
    Rng rng(1003);
    for (int rep = 0; rep < 6; ++rep) {
        Poly<Rat> a = testutil::random_poly_exact(rng, static_cast<int>(rng.below(65)));
        Poly<Rat> b = testutil::random_poly_exact(rng, static_cast<int>(rng.below(65)));
        Poly<Rat> c = testutil::random_poly_exact(rng, static_cast<int>(rng.below(65)));
        CHECK(poly_mul(a, b) == poly_mul(b, a));
        CHECK(poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c)));
        CHECK(poly_mul(a, poly_add(b, c)) == poly_add(poly_mul(a, b), poly_mul(a, c)));
    }
}

TEST_CASE("evaluation homomorphism, exact") {
    Rng rng(1004);
    for (int rep = 0; rep < 8; ++rep) {
        Poly<Rat> a = testutil::random_poly_exact(rng, 20);
        Poly<Rat> b = testutil::random_poly_exact(rng, 17);
        Rat x = rng.rat_unit();
        CHECK(poly_eval(poly_mul(a, b), x) == poly_eval(a, x) * poly_eval(b, x));
    }
}

TEST_CASE("poly_eval_batch hand examples") {
    // x^3 at {-1, 0, 2}
    Poly<Rat> cube({Rat(0), Rat(0), Rat(0), Rat(1)});
    auto vals = poly_eval_batch(cube, std::vector<Rat>{Rat(-1), Rat(0), Rat(2)});
    CHECK(vals == std::vector<Rat>{Rat(-1), Rat(0), Rat(8)});

    Poly<Rat> c5 = Poly<Rat>::constant(Rat(5));
    auto v5 = poly_eval_batch(c5, std::vector<Rat>{Rat(3), Rat(-7), Rat(0)});
    for (const auto& v : v5) CHECK(v == 5);
}

TEST_CASE("poly_eval_batch equals Horner, exact, degree 200 at 300 points") {
    Rng rng(1005);
    Poly<Rat> a = testutil::random_poly_exact(rng, 200);
    std::vector<Rat> xs;
    for (int i = 0; i < 300; ++i) xs.push_back(rng.rat_unit());
    auto got = poly_eval_batch(a, xs);
    for (size_t i = 0; i < xs.size(); ++i) CHECK(got[i] == poly_eval(a, xs[i]));
}

TEST_CASE("poly_eval_batch float64 relative error within budget at degree 200") {
    // oracle: exact rational evaluation of the same double coefficients,
    // at points where the value is not catastrophically small
    Rng rng(1006);
    Poly<double> a = testutil::random_poly_f64(rng, 200);
    Poly<Rat> ax;
    for (double c : a.c) ax.c.push_back(Rat(c));
    ax.trim();
    double norm1 = 0;
    for (double c : a.c) norm1 += std::abs(c);

    std::vector<double> xs;
    std::vector<Rat> xr;
    while (xs.size() < 300) {
        const double x = rng.in(-1.0, 1.0);
        const Rat v = poly_eval(ax, Rat(x));
        if (std::abs(to_double(v)) < 1e-4 * norm1) continue;  // conditioning guard
        xs.push_back(x);
        xr.push_back(Rat(x));
    }
    auto got = poly_eval_batch(a, xs);
    auto want = poly_eval_batch(ax, xr);
    for (size_t i = 0; i < xs.size(); ++i)
        CHECK(testutil::rel_err(got[i], to_double(want[i])) <= 1e-6);
}

TEST_CASE("poly_interpolate hand examples") {
    // line through (0,1), (1,3)
    Poly<Rat> line = poly_interpolate<Rat>({{Rat(0), Rat(1)}, {Rat(1), Rat(3)}});
    CHECK(line == Poly<Rat>({Rat(1), Rat(2)}));

    // parabola through (-1,1), (0,0), (1,1)
    Poly<Rat> sq = poly_interpolate<Rat>({{Rat(-1), Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(1)}});
    CHECK(sq == Poly<Rat>({Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("interpolation round trip recovers random polynomials, exact") {
    Rng rng(1007);
    for (int deg : {0, 1, 7, 40, 120}) {
        Poly<Rat> a = testutil::random_poly_exact(rng, deg);
        std::vector<Rat> xs;
        for (int i = 0; i <= deg; ++i) {
            Rat x(i * 2 - deg, deg + 3);
            x.canonicalize();
            xs.push_back(x);
        }
        auto vals = poly_eval_batch(a, xs);
        Poly<Rat> back = poly_interpolate<Rat>({xs, vals});
        CHECK(back == a);
    }
}

TEST_CASE("duplicate interpolation points rejected") {
    CHECK_THROWS_AS(poly_interpolate<Rat>({{Rat(1), Rat(1)}, {Rat(2), Rat(3)}}), DuplicatePoint);
    CHECK_THROWS_AS(poly_interpolate<double>({{0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}}), DuplicatePoint);
}

TEST_CASE("derivative and trim behave") {
    Poly<Rat> p({Rat(4), Rat(0), Rat(3)});  // 4 + 3x^2
    CHECK(poly_derivative(p) == Poly<Rat>({Rat(0), Rat(6)}));
    Poly<Rat> z({Rat(0), Rat(0)});
    CHECK(z.is_zero());
    CHECK(poly_derivative(Poly<Rat>::constant(Rat(7))).is_zero());
}
