#include "moments/edge_vectors.hpp"

#include <stdexcept>

#include "moments/closed_forms.hpp"

namespace moments {

bool is_valid(const EdgeVector& a, int n) {
  if (n < 1) return false;
  if (a.a12 < 0 || a.a13 < 0 || a.a23 < 0) return false;
  int s12 = a.a12 + a.a13;
  int s13 = a.a12 + a.a23;
  int s23 = a.a13 + a.a23;
  if (s12 % 2 != 0 || s13 % 2 != 0 || s23 % 2 != 0) return false;
  return s12 <= 2 * n && s13 <= 2 * n && s23 <= 2 * n;
}

std::vector<EdgeVector> enumerate_valid(int n) {
  std::vector<EdgeVector> out;
  for (int a12 = 0; a12 <= 2 * n; ++a12) {
    for (int a13 = 0; a13 <= 2 * n; ++a13) {
      for (int a23 = 0; a23 <= 2 * n; ++a23) {
        EdgeVector a{a12, a13, a23};
        if (is_valid(a, n)) out.push_back(a);
      }
    }
  }
  return out;
}

std::array<int, 3> derived_counts(const EdgeVector& a, int n) {
  if (!is_valid(a, n)) {
    throw std::invalid_argument("derived_counts: invalid edge vector");
  }
  return {(2 * n - a.a12 - a.a13) / 2, (2 * n - a.a12 - a.a23) / 2,
          (2 * n - a.a13 - a.a23) / 2};
}

mpz_class graph_count(int n, const EdgeVector& a) {
  if (!is_valid(a, n)) {
    throw std::invalid_argument("graph_count: invalid edge vector");
  }
  mpz_class count = 1;
  // Endpoint placements: choose the columns hosting each cross edge in both
  // rows it touches, then match the chosen endpoints pairwise.
  count *= binomial(2 * n, a.a12) * binomial(2 * n - a.a12, a.a13);
  count *= binomial(2 * n, a.a12) * binomial(2 * n - a.a12, a.a23);
  count *= binomial(2 * n, a.a13) * binomial(2 * n - a.a13, a.a23);
  count *= factorial(a.a12) * factorial(a.a13) * factorial(a.a23);
  // Leftover vertices per row pair up internally.
  count *= double_factorial(2 * n - a.a12 - a.a13 - 1);
  count *= double_factorial(2 * n - a.a12 - a.a23 - 1);
  count *= double_factorial(2 * n - a.a13 - a.a23 - 1);
  mpz_class four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  count *= four_n;
  return count;
}

}  // namespace moments
