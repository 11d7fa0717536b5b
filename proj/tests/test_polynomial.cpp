#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "moments/polynomial.hpp"

namespace {

using moments::IntPolynomial;

IntPolynomial make(std::vector<long> values) {
  std::vector<mpz_class> coeffs;
  coeffs.reserve(values.size());
  for (long v : values) coeffs.emplace_back(v);
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial random_poly(gmp_randclass& rng, int max_degree, int bits,
                          bool nonnegative) {
  const int degree =
      static_cast<int>(mpz_class(rng.get_z_range(max_degree + 1)).get_si());
  std::vector<mpz_class> coeffs;
  for (int i = 0; i <= degree; ++i) {
    mpz_class c = rng.get_z_bits(bits);
    if (!nonnegative && mpz_class(rng.get_z_range(2)) == 1) c = -c;
    coeffs.push_back(c);
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

TEST_CASE("canonical form and accessors") {
  CHECK(IntPolynomial().is_zero());
  CHECK(IntPolynomial().degree() == -1);
  CHECK(make({0, 0, 0}).is_zero());
  CHECK(make({5, 0, 0}).degree() == 0);

  const IntPolynomial p = make({0, 2, 2});
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == 0);
  CHECK(p.coeff(1) == 2);
  CHECK(p.coeff(2) == 2);
  CHECK(p.coeff(3) == 0);
  CHECK(p.coeff(100) == 0);

  const IntPolynomial m = IntPolynomial::monomial(7, 3);
  CHECK(m.degree() == 3);
  CHECK(m.coeff(3) == 7);
  CHECK(m.coeff(0) == 0);
  CHECK(IntPolynomial::monomial(0, 5).is_zero());
}

TEST_CASE("arithmetic goldens") {
  const IntPolynomial one_plus_k = make({1, 1});
  CHECK(moments::poly_mul(one_plus_k, one_plus_k) == make({1, 2, 1}));
  CHECK(moments::poly_add(make({1, 2}), make({3, -2})) == make({4}));
  CHECK(moments::poly_sub(make({1, 2}), make({1, 2})).is_zero());
  CHECK(moments::poly_scale(make({0, 1, 2}), 3) == make({0, 3, 6}));
  CHECK(moments::poly_scale(make({0, 1, 2}), 0).is_zero());
  CHECK(moments::poly_mul(make({0, 2, 2}), make({0, 2, 2})) ==
        make({0, 0, 4, 8, 4}));

  IntPolynomial acc = make({1});
  acc.add_scaled_shifted(make({1, 1}), 2, 2);
  CHECK(acc == make({1, 0, 2, 2}));
  acc.add_scaled_shifted(make({1}), -1, 0);
  CHECK(acc == make({0, 0, 2, 2}));
}

TEST_CASE("ring axioms on random polynomials") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20240915UL);
  for (int trial = 0; trial < 1000; ++trial) {
    const IntPolynomial p = random_poly(rng, 16, 256, false);
    const IntPolynomial q = random_poly(rng, 16, 256, false);
    const IntPolynomial r = random_poly(rng, 16, 256, false);

    CHECK(moments::poly_add(p, q) == moments::poly_add(q, p));
    CHECK(moments::poly_mul(p, q) == moments::poly_mul(q, p));
    CHECK(moments::poly_add(moments::poly_add(p, q), r) ==
          moments::poly_add(p, moments::poly_add(q, r)));
    CHECK(moments::poly_mul(moments::poly_mul(p, q), r) ==
          moments::poly_mul(p, moments::poly_mul(q, r)));
    CHECK(moments::poly_mul(p, moments::poly_add(q, r)) ==
          moments::poly_add(moments::poly_mul(p, q), moments::poly_mul(p, r)));
    CHECK(moments::poly_sub(p, p).is_zero());
    CHECK(moments::poly_add(moments::poly_sub(p, q), q) == p);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(77UL);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPolynomial p = random_poly(rng, 12, 128, false);
    const IntPolynomial q = random_poly(rng, 12, 128, false);
    const mpz_class k = rng.get_z_range(1000);
    CHECK(moments::poly_eval_exact(moments::poly_add(p, q), k) ==
          moments::poly_eval_exact(p, k) + moments::poly_eval_exact(q, k));
    CHECK(moments::poly_eval_exact(moments::poly_mul(p, q), k) ==
          moments::poly_eval_exact(p, k) * moments::poly_eval_exact(q, k));
  }
  CHECK(moments::poly_eval_exact(make({0, 2, 2}), 1) == 4);
  CHECK(moments::poly_eval_exact(make({0, 2, 2}), 0) == 0);
  CHECK_THROWS_AS(moments::poly_eval_exact(make({1}), mpz_class(-1)),
                  std::invalid_argument);
}

TEST_CASE("log evaluation tracks exact evaluation") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(4242UL);
  for (int trial = 0; trial < 200; ++trial) {
    IntPolynomial p = random_poly(rng, 16, 200, true);
    if (p.is_zero()) p = make({1});
    for (double k : {1.0, 2.0, 7.5, 100.0, 12345.678}) {
      const long double via_log = moments::poly_eval_log(p, k);
      // Reference: exact evaluation at the nearest integer when k is
      // integral, otherwise a direct long double Horner pass.
      long double reference;
      if (k == std::floor(k)) {
        reference = moments::log_mpz(
            moments::poly_eval_exact(p, mpz_class(static_cast<long>(k))));
      } else {
        long double value = 0.0L;
        for (int i = p.degree(); i >= 0; --i) {
          value = value * static_cast<long double>(k) +
                  mpz_get_d(p.coeff(i).get_mpz_t());
        }
        reference = std::log(value);
      }
      if (std::isinf(static_cast<double>(reference))) continue;
      CHECK(std::abs(static_cast<double>(via_log - reference)) <=
            1e-9 * std::max(1.0, std::abs(static_cast<double>(reference))));
    }
  }
}

TEST_CASE("log evaluation rejects unusable inputs") {
  CHECK_THROWS_AS(moments::poly_eval_log(IntPolynomial(), 2.0),
                  std::domain_error);
  CHECK_THROWS_AS(moments::poly_eval_log(make({1}), 0.0), std::domain_error);
  CHECK_THROWS_AS(moments::poly_eval_log(make({1}), -1.0), std::domain_error);
  CHECK_THROWS_AS(moments::poly_eval_log(make({-1, 2}), 2.0),
                  std::domain_error);
}

TEST_CASE("log_mpz over wide magnitudes") {
  CHECK(static_cast<double>(moments::log_mpz(1)) == 0.0);
  CHECK(std::abs(static_cast<double>(moments::log_mpz(mpz_class(1) << 100)) -
                 100.0 * std::log(2.0)) < 1e-12);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 500);
  CHECK(std::abs(static_cast<double>(moments::log_mpz(big)) -
                 500.0 * std::log(10.0)) < 1e-9);
}

TEST_CASE("decimal rendering") {
  CHECK(moments::to_decimal(0) == "0");
  CHECK(moments::to_decimal(mpz_class("123456789012345678901234567890")) ==
        "123456789012345678901234567890");
  CHECK(moments::to_decimal(-42) == "-42");
}
