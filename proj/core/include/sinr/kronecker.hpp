#pragma once

#include <gmpxx.h>

#include <vector>

namespace sinr {

// Exact convolution of signed big-integer sequences through Kronecker
// substitution: both operands are offset to non-negative digits, packed
// into single integers, multiplied once by GMP, and the offset cross
// terms (window sums) are subtracted back out. One big multiplication
// total, so the asymptotics are those of integer multiplication.
std::vector<mpz_class> conv_mpz(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

}  // namespace sinr
