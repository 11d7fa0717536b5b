// Matchings-sum matrix functions on small dense complex matrices: the
// hafnian by direct expansion, a direct permanent, and the block
// antidiagonal embedding that turns a permanent into a hafnian.
#pragma once

#include <complex>
#include <vector>

namespace moments {

using Complex = std::complex<double>;

// Row-major square complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), data_(dim * dim) {}

  int dim() const { return dim_; }
  Complex& at(int i, int j) { return data_[i * dim_ + j]; }
  const Complex& at(int i, int j) const { return data_[i * dim_ + j]; }

 private:
  int dim_ = 0;
  std::vector<Complex> data_;
};

// Sum over perfect matchings of the index set of products of entries,
// expanded recursively on the first unmatched index. Requirements: even
// dimension <= 14 (cost (dim-1)!!), symmetric within 1e-12 per entry.
Complex naive_hafnian(const ComplexMatrix& a);

// Permanent by direct permutation sum; dim <= 8.
Complex permanent(const ComplexMatrix& b);

// [[0, B], [B^T, 0]]: the hafnian of this 2m x 2m matrix equals Per(B).
ComplexMatrix permanent_embedding(const ComplexMatrix& b);

}  // namespace moments
