#include "moments/hafnian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moments {

namespace {

// Active indices tracked in a bitmask; dim <= 14 keeps the recursion depth
// and mask width small.
Complex hafnian_masked(const ComplexMatrix& a, unsigned mask) {
  if (mask == 0) return Complex(1.0, 0.0);
  int first = std::countr_zero(mask);
  unsigned rest = mask & (mask - 1);  // drop the first index
  Complex sum(0.0, 0.0);
  for (unsigned m = rest; m != 0; m &= m - 1) {
    int j = std::countr_zero(m);
    sum += a.at(first, j) * hafnian_masked(a, rest & ~(1u << j));
  }
  return sum;
}

}  // namespace

Complex naive_hafnian(const ComplexMatrix& a) {
  int d = a.dim();
  if (d % 2 != 0) {
    throw std::invalid_argument("naive_hafnian: odd dimension");
  }
  if (d > 14) {
    throw std::invalid_argument("naive_hafnian: dimension above 14");
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(a.at(i, j) - a.at(j, i)) >= 1e-12) {
        throw std::invalid_argument("naive_hafnian: matrix not symmetric");
      }
    }
  }
  if (d == 0) return Complex(1.0, 0.0);
  return hafnian_masked(a, (1u << d) - 1);
}

Complex permanent(const ComplexMatrix& b) {
  int d = b.dim();
  if (d > 8) throw std::invalid_argument("permanent: dimension above 8");
  if (d == 0) return Complex(1.0, 0.0);
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < d; ++i) prod *= b.at(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

ComplexMatrix permanent_embedding(const ComplexMatrix& b) {
  int m = b.dim();
  ComplexMatrix h(2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      h.at(i, m + j) = b.at(i, j);
      h.at(m + j, i) = b.at(i, j);
    }
  }
  return h;
}

}  // namespace moments
