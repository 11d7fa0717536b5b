// Closed-form moment quantities used as independent cross-checks on the
// recursion and as fast evaluators: the first moment, the second moment at
// k = 1, individual polynomial coefficients, and the sandwich bounds.
#pragma once

#include <gmpxx.h>

namespace moments {

mpz_class factorial(long m);
mpz_class binomial(long n, long k);  // zero outside 0 <= k <= n

// m!! with (-1)!! = 0!! = 1. Rejects m < -1.
mpz_class double_factorial(long m);

// M1(k,n) = (2n-1)!! * k(k+2)...(k+2n-2), as a product so real k works.
double first_moment(double k, int n);
long double first_moment_log(double k, int n);  // natural log of M1
mpz_class first_moment_exact(const mpz_class& k, int n);

// M2(1,n) = ((2n-1)!!)^4 * 4^n.
mpz_class second_moment_k1(int n);

// Leading coefficient of M2(k,n)/(2n-1)!!: closed form (2n)!! and the
// equivalent explicit sum over the per-column split.
mpz_class c_2n(int n);
mpz_class c_2n_sum(int n);

// Next-to-leading coefficient: closed form (2n)!!(3n-2)n and the nine-term
// sum it collapses from.
mpz_class c_2n_minus_1(int n);
mpz_class c_2n_minus_1_sum(int n);

// Coefficient of k^1, via the Eulerian-circuit triple sum with exact
// rational handling of the 2^(n-3) prefactor.
mpz_class c_1(int n);

struct MomentBounds {
  mpz_class upper;          // ((2n-1)!!)^4 4^n k^(2n)
  mpz_class lower_leading;  // (2n)! k^(2n)
  mpz_class lower_count;    // ((2n-1)!!)^4 4^n
};

MomentBounds moment_bounds(const mpz_class& k, int n);

}  // namespace moments
