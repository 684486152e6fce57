#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sinr/fraction.hpp"
#include "testutil.hpp"

using namespace sinr;
using testutil::Rng;

namespace {

Fraction<Rat> inv_linear(const Rat& root) {  // 1/(x - root)
    return {Poly<Rat>::constant(Rat(1)), Poly<Rat>::linear(Rat(-root), Rat(1))};
}

Fraction<Rat> inv_square(const Rat& root) {  // 1/(x - root)^2
    return {Poly<Rat>::constant(Rat(1)),
            poly_mul(Poly<Rat>::linear(Rat(-root), Rat(1)), Poly<Rat>::linear(Rat(-root), Rat(1)))};
}

}  // namespace

TEST_CASE("frac_add partial fraction identity") {
    auto s = frac_add(inv_linear(Rat(1)), inv_linear(Rat(-1)));
    CHECK(s.num == Poly<Rat>({Rat(0), Rat(2)}));
    CHECK(s.den == Poly<Rat>({Rat(-1), Rat(0), Rat(1)}));
}

TEST_CASE("frac_add additive identity") {
    Fraction<Rat> f(Poly<Rat>({Rat(2), Rat(5)}), Poly<Rat>({Rat(1), Rat(1), Rat(3)}));
    Fraction<Rat> zero;  // 0/1
    auto s = frac_add(f, zero);
    // equal as functions: num stays (den multiplied by 1)
    CHECK(s.num == f.num);
    CHECK(s.den == f.den);
}

TEST_CASE("frac_add pointwise oracle at safe points") {
    Rng rng(2001);
    for (int rep = 0; rep < 6; ++rep) {
        Fraction<Rat> f(testutil::random_poly_exact(rng, 3), testutil::random_poly_exact(rng, 2));
        Fraction<Rat> g(testutil::random_poly_exact(rng, 2), testutil::random_poly_exact(rng, 3));
        if (f.den.is_zero() || g.den.is_zero()) continue;
        auto s = frac_add(f, g);
        for (int t = 0; t < 10; ++t) {
            Rat x = rng.rat_unit();
            const Rat fd = poly_eval(f.den, x), gd = poly_eval(g.den, x);
            if (fd == 0 || gd == 0) continue;
            CHECK(frac_eval(s, x) == poly_eval(f.num, x) / fd + poly_eval(g.num, x) / gd);
        }
    }
}

TEST_CASE("frac_sum two-term and identical-term cases") {
    auto s = frac_sum<Rat>({inv_linear(Rat(1)), inv_linear(Rat(-1))});
    CHECK(s.num == Poly<Rat>({Rat(0), Rat(2)}));
    CHECK(s.den == Poly<Rat>({Rat(-1), Rat(0), Rat(1)}));

    std::vector<Fraction<Rat>> copies(7, inv_linear(Rat(0)));  // 7 copies of 1/x
    auto t = frac_sum(copies);
    const Rat x0(3, 2);
    CHECK(frac_eval(t, x0) == Rat(7) / x0);
}

TEST_CASE("frac_sum of empty input throws") {
    CHECK_THROWS_AS(frac_sum(std::vector<Fraction<Rat>>{}), EmptyInput);
    CHECK_THROWS_AS(frac_eval_batch(std::vector<Fraction<double>>{}, std::vector<double>{0.5}),
                    EmptyInput);
}

TEST_CASE("frac_sum equals direct summation, 64 inverse squares at 5 points") {
    Rng rng(2002);
    std::vector<Fraction<Rat>> fs;
    std::vector<Rat> roots;
    for (int i = 0; i < 64; ++i) {
        roots.push_back(rng.rat_unit(512));
        fs.push_back(inv_square(roots.back()));
    }
    auto merged = frac_sum(fs);
    // balanced-tree degree bound
    size_t den_degs = 0;
    for (const auto& f : fs) den_degs += static_cast<size_t>(f.den.deg());
    CHECK(static_cast<size_t>(merged.den.deg()) <= den_degs);

    int checked = 0;
    for (int t = 0; checked < 5 && t < 100; ++t) {
        Rat x = rng.rat_unit(1777);
        bool safe = true;
        Rat direct(0);
        for (const auto& r : roots) {
            if (x == r) {
                safe = false;
                break;
            }
            direct += Rat(1) / ((x - r) * (x - r));
        }
        if (!safe || poly_eval(merged.den, x) == 0) continue;
        CHECK(frac_eval(merged, x) == direct);
        ++checked;
    }
    CHECK(checked == 5);
}

TEST_CASE("frac_eval_batch hand examples") {
    auto odd = frac_eval_batch<Rat>({inv_linear(Rat(1)), inv_linear(Rat(-1))}, {Rat(0)});
    CHECK(odd[0] == 0);

    auto sq = frac_eval_batch<Rat>({inv_square(Rat(0))}, {Rat(1), Rat(2)});
    CHECK(sq[0] == 1);
    CHECK(sq[1] == Rat(1, 4));
}

TEST_CASE("frac_eval_batch exact equals double loop, n = m = 128") {
    Rng rng(2003);
    std::vector<Fraction<Rat>> fs;
    std::vector<Rat> roots;
    for (int i = 0; i < 128; ++i) {
        roots.push_back(rng.rat_unit(4096));
        fs.push_back(inv_square(roots.back()));
    }
    std::vector<Rat> xs;
    while (xs.size() < 128) {
        Rat x = rng.rat_unit(8192);
        bool ok = true;
        for (const auto& r : roots)
            if (x == r) ok = false;
        if (ok) xs.push_back(x);
    }
    auto got = frac_eval_batch(fs, xs, FracEvalMode::Merged);
    for (size_t j = 0; j < xs.size(); ++j) {
        Rat direct(0);
        for (const auto& r : roots) direct += Rat(1) / ((xs[j] - r) * (xs[j] - r));
        CHECK(got[j] == direct);
    }
}

TEST_CASE("frac_eval_batch float64 within 1e-6 of the double loop, n = m = 128, sep 1e-3") {
    Rng rng(2004);
    // real poles on [-1, 1] separated from every evaluation point by 1e-3
    std::vector<double> roots;
    for (int i = 0; i < 128; ++i) roots.push_back(rng.in(-1.0, 1.0));
    std::vector<Fraction<double>> fs;
    for (double r : roots) {
        Poly<double> lin = Poly<double>::linear(-r, 1.0);
        fs.emplace_back(Poly<double>::constant(1.0), poly_mul(lin, lin));
    }
    std::vector<double> xs;
    while (xs.size() < 128) {
        const double x = rng.in(-1.0, 1.0);
        bool ok = true;
        for (double r : roots)
            if (std::abs(x - r) < 1e-3) ok = false;
        if (ok) xs.push_back(x);
    }
    auto got = frac_eval_batch(fs, xs);  // Direct by default on float64
    for (size_t j = 0; j < xs.size(); ++j) {
        double direct = 0;
        for (double r : roots) direct += 1.0 / ((xs[j] - r) * (xs[j] - r));
        CHECK(testutil::rel_err(got[j], direct) <= 1e-6);
    }
}

TEST_CASE("frac_sum equivalence holds at 512 float terms under the direct mode") {
    Rng rng(2005);
    std::vector<double> roots;
    for (int i = 0; i < 512; ++i) roots.push_back(rng.in(-1.0, 1.0));
    std::vector<Fraction<double>> fs;
    for (double r : roots) {
        Poly<double> lin = Poly<double>::linear(-r, 1.0);
        fs.emplace_back(Poly<double>::constant(1.0), poly_mul(lin, lin));
    }
    std::vector<double> xs;
    while (xs.size() < 64) {
        const double x = rng.in(-1.0, 1.0);
        bool ok = true;
        for (double r : roots)
            if (std::abs(x - r) < 1e-3) ok = false;
        if (ok) xs.push_back(x);
    }
    auto got = frac_eval_batch(fs, xs, FracEvalMode::Direct);
    for (size_t j = 0; j < xs.size(); ++j) {
        double direct = 0;
        for (double r : roots) direct += 1.0 / ((xs[j] - r) * (xs[j] - r));
        CHECK(testutil::rel_err(got[j], direct) <= 1e-6);
    }
}

TEST_CASE("pole at an evaluation point raises") {
    auto f = inv_linear(Rat(1, 2));
    CHECK_THROWS_AS(frac_eval_batch<Rat>({f}, {Rat(1, 2)}), PoleAtQuery);
}
