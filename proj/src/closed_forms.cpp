#include "moments/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include "moments/polynomial.hpp"

namespace moments {

mpz_class factorial(long m) {
  if (m < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

mpz_class double_factorial(long m) {
  if (m < -1) throw std::invalid_argument("double_factorial: argument < -1");
  mpz_class r = 1;
  for (long v = m; v > 1; v -= 2) r *= v;
  return r;
}

double first_moment(double k, int n) {
  if (n < 1) throw std::invalid_argument("first_moment: n < 1");
  double r = mpz_get_d(double_factorial(2 * n - 1).get_mpz_t());
  for (int j = 1; j <= n; ++j) r *= k + 2 * j - 2;
  return r;
}

long double first_moment_log(double k, int n) {
  if (n < 1) throw std::invalid_argument("first_moment_log: n < 1");
  if (!(k > 0)) throw std::invalid_argument("first_moment_log: k <= 0");
  long double acc = 0.0L;
  for (int j = 1; j <= n; ++j) {
    acc += std::log(static_cast<long double>(k) + 2 * j - 2);
  }
  return acc + log_mpz(double_factorial(2 * n - 1));
}

mpz_class first_moment_exact(const mpz_class& k, int n) {
  if (n < 1) throw std::invalid_argument("first_moment_exact: n < 1");
  mpz_class r = double_factorial(2 * n - 1);
  for (int j = 1; j <= n; ++j) r *= k + 2 * (j - 1);
  return r;
}

mpz_class second_moment_k1(int n) {
  if (n < 1) throw std::invalid_argument("second_moment_k1: n < 1");
  mpz_class df = double_factorial(2 * n - 1);
  mpz_class four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  return df * df * df * df * four_n;
}

mpz_class c_2n(int n) {
  if (n < 1) throw std::invalid_argument("c_2n: n < 1");
  return double_factorial(2 * n);
}

mpz_class c_2n_sum(int n) {
  if (n < 1) throw std::invalid_argument("c_2n_sum: n < 1");
  mpz_class sum = 0;
  for (int p = 0; p <= n; ++p) {
    sum += binomial(n, p) * double_factorial(2 * p - 1) *
           double_factorial(2 * (n - p) - 1);
  }
  return sum;
}

mpz_class c_2n_minus_1(int n) {
  if (n < 1) throw std::invalid_argument("c_2n_minus_1: n < 1");
  return double_factorial(2 * n) * (3 * n - 2) * n;
}

mpz_class c_2n_minus_1_sum(int n) {
  if (n < 1) throw std::invalid_argument("c_2n_minus_1_sum: n < 1");
  // Terms multiply a binomial count by double factorials of the columns left
  // in each group; each binomial is evaluated first and zero counts skip the
  // term, so no double factorial below -1 is ever formed.
  auto dfac = [](long m) { return double_factorial(m); };
  mpz_class sum = 0;
  for (long p = 0; p <= n; ++p) {
    long q = n - p;
    mpz_class inner = 0;
    mpz_class b;
    b = binomial(p, 2);
    if (b != 0) inner += 2 * b * dfac(2 * p - 1) * dfac(2 * q - 1);
    b = binomial(q, 2);
    if (b != 0) inner += 2 * b * dfac(2 * p - 1) * dfac(2 * q - 1);
    b = binomial(p, 1) * binomial(2 * q, 2);
    if (b != 0) inner += 2 * b * dfac(2 * p - 1) * dfac(2 * (q - 1) - 1);
    b = binomial(q, 1) * binomial(2 * p, 2);
    if (b != 0) inner += 2 * b * dfac(2 * (p - 1) - 1) * dfac(2 * q - 1);
    b = binomial(2 * p, 4);
    if (b != 0) inner += 6 * b * dfac(2 * (p - 2) - 1) * dfac(2 * q - 1);
    b = binomial(2 * q, 4);
    if (b != 0) inner += 6 * b * dfac(2 * p - 1) * dfac(2 * (q - 2) - 1);
    b = binomial(2 * p, 2) * binomial(2 * q, 2);
    if (b != 0) inner += 2 * b * dfac(2 * (p - 1) - 1) * dfac(2 * (q - 1) - 1);
    sum += binomial(n, p) * inner;
  }
  for (long p = 0; p <= n - 1; ++p) {
    long q = n - p - 1;
    sum += 2 * binomial(n, 1) * binomial(n - 1, p) * (2 * p + 1) *
           (2 * q + 1) * dfac(2 * p - 1) * dfac(2 * q - 1);
  }
  for (long p = 0; p <= n - 2; ++p) {
    long q = n - p - 2;
    sum += 4 * binomial(n, 2) * binomial(n - 2, p) * dfac(2 * p + 1) *
           dfac(2 * q + 1);
  }
  return sum;
}

mpz_class c_1(int n) {
  if (n < 1) throw std::invalid_argument("c_1: n < 1");
  mpq_class sum = 0;
  for (long p1 = 0; p1 <= n; ++p1) {
    for (long p4 = 0; p4 + p1 <= n; ++p4) {
      long span = n - p1 - p4;
      for (long w = -span; w <= span; w += 2) {
        mpz_class b1 = binomial(n - p1 + p4, (n - p1 + p4 + w) / 2);
        if (b1 == 0) continue;
        mpz_class b2 = binomial(n + p1 - p4, (n + p1 - p4 + w) / 2);
        if (b2 == 0) continue;
        long weight = w * w + 3L * n * n - (p1 - p4) * (p1 - p4) -
                      2L * n * (p1 + p4);
        if (weight == 0) continue;
        mpz_class num = b1 * b2 * weight;
        mpz_class den = factorial(p1) * factorial(p4) *
                        factorial((span - w) / 2) * factorial((span + w) / 2);
        sum += mpq_class(num) / mpq_class(den);
      }
    }
  }
  // Prefactor n!((n-1)!)^3 2^(n-3); the power of two is fractional for
  // n <= 2, so the assembly stays rational until the end.
  mpq_class pre = mpq_class(factorial(n));
  mpz_class f3 = factorial(n - 1);
  pre *= mpq_class(f3 * f3 * f3);
  if (n >= 3) {
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(n - 3));
    pre *= mpq_class(two);
  } else {
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(3 - n));
    pre /= mpq_class(two);
  }
  mpq_class total = pre * sum;
  total.canonicalize();
  if (total.get_den() != 1) {
    throw std::logic_error("c_1: non-integral result");
  }
  return total.get_num();
}

MomentBounds moment_bounds(const mpz_class& k, int n) {
  if (n < 1 || k < 1) throw std::invalid_argument("moment_bounds: bad input");
  MomentBounds b;
  mpz_class k2n;
  mpz_pow_ui(k2n.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(2 * n));
  b.lower_count = second_moment_k1(n);
  b.upper = b.lower_count * k2n;
  b.lower_leading = factorial(2 * n) * k2n;
  return b;
}

}  // namespace moments
