#include "moments/polynomial.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace moments {

namespace {
const mpz_class kZero = 0;
}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

IntPolynomial IntPolynomial::monomial(mpz_class c, int power) {
  if (power < 0) throw std::invalid_argument("monomial: negative power");
  if (c == 0) return IntPolynomial();
  std::vector<mpz_class> v(static_cast<std::size_t>(power) + 1, kZero);
  v.back() = std::move(c);
  return IntPolynomial(std::move(v));
}

const mpz_class& IntPolynomial::coeff(int i) const {
  if (i < 0) throw std::invalid_argument("coeff: negative index");
  if (static_cast<std::size_t>(i) >= coeffs_.size()) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void IntPolynomial::add_scaled_shifted(const IntPolynomial& p,
                                       const mpz_class& c, int shift) {
  if (shift < 0) throw std::invalid_argument("add_scaled_shifted: shift < 0");
  if (p.is_zero() || c == 0) return;
  std::size_t need = p.coeffs_.size() + static_cast<std::size_t>(shift);
  if (coeffs_.size() < need) coeffs_.resize(need, kZero);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    mpz_addmul(coeffs_[i + static_cast<std::size_t>(shift)].get_mpz_t(),
               c.get_mpz_t(), p.coeffs_[i].get_mpz_t());
  }
  trim();
}

IntPolynomial poly_add(const IntPolynomial& p, const IntPolynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<mpz_class> out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial poly_sub(const IntPolynomial& p, const IntPolynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<mpz_class> out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial poly_mul(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return IntPolynomial();
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<mpz_class> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial poly_scale(const IntPolynomial& p, const mpz_class& c) {
  if (c == 0 || p.is_zero()) return IntPolynomial();
  std::vector<mpz_class> out(p.coeffs());
  for (auto& x : out) x *= c;
  return IntPolynomial(std::move(out));
}

mpz_class poly_eval_exact(const IntPolynomial& p, const mpz_class& k) {
  if (k < 0) throw std::invalid_argument("poly_eval_exact: k < 0");
  mpz_class acc = 0;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= k;
    acc += c[i];
  }
  return acc;
}

namespace {
// Exact for values below 2^64 (64-bit limbs assumed; enforced by the cast).
std::uint64_t low64(const mpz_class& v) {
  static_assert(sizeof(unsigned long) == 8, "64-bit limbs required");
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}
}  // namespace

long double log_mpz(const mpz_class& v) {
  if (v <= 0) throw std::domain_error("log_mpz: nonpositive argument");
  std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits <= 64) return std::log(static_cast<long double>(low64(v)));
  mpz_class top = v >> (bits - 64);
  const long double ln2 = 0.69314718055994530941723212145818L;
  return std::log(static_cast<long double>(low64(top))) +
         static_cast<long double>(bits - 64) * ln2;
}

long double poly_eval_log(const IntPolynomial& p, double k) {
  if (p.is_zero()) throw std::domain_error("poly_eval_log: zero polynomial");
  if (!(k > 0)) throw std::domain_error("poly_eval_log: k must be positive");
  const auto& c = p.coeffs();
  long double logk = std::log(static_cast<long double>(k));
  std::vector<long double> terms;
  terms.reserve(c.size());
  long double top = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (c[i] < 0) {
      throw std::domain_error("poly_eval_log: negative coefficient");
    }
    long double t = log_mpz(c[i]) + static_cast<long double>(i) * logk;
    terms.push_back(t);
    if (t > top) top = t;
  }
  long double sum = 0.0L;
  for (long double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

std::string to_decimal(const mpz_class& v) { return v.get_str(10); }

}  // namespace moments
