// Dense univariate polynomials over arbitrary-precision integers, plus
// overflow-safe evaluation of log p(k) for polynomials with nonnegative
// coefficients.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace moments {

// coeffs()[i] is the coefficient of k^i. Canonical form: no trailing zero;
// the zero polynomial is the empty coefficient list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);

  static IntPolynomial monomial(mpz_class c, int power);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  // Defined for any i >= 0; coefficients beyond the degree are zero.
  const mpz_class& coeff(int i) const;

  // this += c * k^shift * p. Aliasing with p is not supported.
  void add_scaled_shifted(const IntPolynomial& p, const mpz_class& c,
                          int shift);

  bool operator==(const IntPolynomial&) const = default;

 private:
  std::vector<mpz_class> coeffs_;
  void trim();
};

IntPolynomial poly_add(const IntPolynomial& p, const IntPolynomial& q);
IntPolynomial poly_sub(const IntPolynomial& p, const IntPolynomial& q);
// Schoolbook convolution; degrees stay small, coefficient size dominates.
IntPolynomial poly_mul(const IntPolynomial& p, const IntPolynomial& q);
IntPolynomial poly_scale(const IntPolynomial& p, const mpz_class& c);
// Exact Horner evaluation, k >= 0.
mpz_class poly_eval_exact(const IntPolynomial& p, const mpz_class& k);
// Natural log of p(k) for k > 0, nonzero p with nonnegative coefficients.
// Computed by log-sum-exp over log(c_i) + i*log(k); relative error < 1e-9.
long double poly_eval_log(const IntPolynomial& p, double k);

// Natural log of a positive big integer, accurate to the full long double
// significand: the top 64 bits of v supply the mantissa, the bit length the
// exponent.
long double log_mpz(const mpz_class& v);

std::string to_decimal(const mpz_class& v);

}  // namespace moments
