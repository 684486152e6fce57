#include "sinr/kronecker.hpp"

#include <algorithm>
#include <cstddef>
#include <cstring>

namespace sinr {

namespace {

size_t max_bits(const std::vector<mpz_class>& v) {
    size_t m = 1;
    for (const auto& x : v)
        if (sgn(x) != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
    return m;
}

size_t ceil_log2(size_t n) {
    size_t b = 0;
    while ((size_t{1} << b) < n) ++b;
    return b;
}

}  // namespace

std::vector<mpz_class> conv_mpz(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    if (a.empty() || b.empty()) return {};
    const size_t la = a.size(), lb = b.size();
    const size_t lout = la + lb - 1;

    const size_t ka = max_bits(a);
    const size_t kb = max_bits(b);
    const size_t L = std::min(la, lb);
    size_t K = ka + kb + 3 + ceil_log2(L);
    const size_t W = (K + 7) / 8;  // slot width in bytes
    K = 8 * W;

    const mpz_class ha = mpz_class(1) << ka;
    const mpz_class hb = mpz_class(1) << kb;

    auto pack = [&](const std::vector<mpz_class>& v, const mpz_class& h) {
        std::vector<unsigned char> buf(v.size() * W, 0);
        mpz_class t;
        for (size_t i = 0; i < v.size(); ++i) {
            t = v[i] + h;  // in [1, 2^{k+1})
            size_t count = 0;
            mpz_export(buf.data() + i * W, &count, -1, 1, 0, 0, t.get_mpz_t());
        }
        mpz_class packed;
        mpz_import(packed.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
        return packed;
    };

    mpz_class prod = pack(a, ha) * pack(b, hb);

    std::vector<unsigned char> obuf((lout + 1) * W, 0);
    size_t count = 0;
    mpz_export(obuf.data(), &count, -1, 1, 0, 0, prod.get_mpz_t());

    // prefix sums for the offset cross terms
    std::vector<mpz_class> pa(la + 1), pb(lb + 1);
    pa[0] = 0;
    for (size_t i = 0; i < la; ++i) pa[i + 1] = pa[i] + a[i];
    pb[0] = 0;
    for (size_t i = 0; i < lb; ++i) pb[i + 1] = pb[i] + b[i];
    auto window = [](const std::vector<mpz_class>& p, size_t len, size_t i, size_t w) {
        // sum of v[j] for max(0, i-w+1+...)  -- window of the other degree
        // here: sum_{j=i-wd}^{i} v[j] clipped to [0, len-1], wd = w-1
        size_t lo = i >= (w - 1) ? i - (w - 1) : 0;
        size_t hi = std::min(i, len - 1);
        if (lo > hi) return mpz_class(0);
        return mpz_class(p[hi + 1] - p[lo]);
    };

    std::vector<mpz_class> out(lout);
    mpz_class digit, corr;
    const mpz_class hh = ha * hb;
    for (size_t i = 0; i < lout; ++i) {
        mpz_import(digit.get_mpz_t(), W, -1, 1, 0, 0, obuf.data() + i * W);
        // digit = (a*b)_i + ha*(sum_b window) + hb*(sum_a window) + ha*hb*cnt
        const size_t cnt = std::min({i, la - 1, lb - 1, lout - 1 - i}) + 1;
        corr = ha * window(pb, lb, i, la) + hb * window(pa, la, i, lb) + hh * static_cast<unsigned long>(cnt);
        out[i] = digit - corr;
    }
    return out;
}

}  // namespace sinr
