#include "sinr/poly.hpp"

namespace sinr::detail {

Poly<Rat> poly_mul_kronecker(const Poly<Rat>& a, const Poly<Rat>& b) {
    mpz_class da(1), db(1);
    bool int_a = true, int_b = true;
    for (const auto& x : a.c)
        if (x.get_den() != 1) {
            int_a = false;
            mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), x.get_den().get_mpz_t());
        }
    for (const auto& x : b.c)
        if (x.get_den() != 1) {
            int_b = false;
            mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), x.get_den().get_mpz_t());
        }

    std::vector<mpz_class> A(a.c.size()), B(b.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        A[i] = int_a ? a.c[i].get_num() : mpz_class(a.c[i].get_num() * (da / a.c[i].get_den()));
    for (size_t i = 0; i < b.c.size(); ++i)
        B[i] = int_b ? b.c[i].get_num() : mpz_class(b.c[i].get_num() * (db / b.c[i].get_den()));

    std::vector<mpz_class> C = conv_mpz(A, B);

    const mpz_class dd = da * db;
    Poly<Rat> r;
    r.c.resize(C.size());
    for (size_t i = 0; i < C.size(); ++i) {
        if (dd == 1) {
            r.c[i] = Rat(C[i]);
        } else {
            r.c[i] = Rat(C[i], dd);
            r.c[i].canonicalize();
        }
    }
    r.trim();
    return r;
}

}  // namespace sinr::detail
