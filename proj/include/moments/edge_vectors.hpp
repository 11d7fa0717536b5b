// Classification of generalized moment graphs by the number of red edges
// crossing each pair of rows, and the exact count of graphs in each class.
#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <vector>

namespace moments {

// (a12, a13, a23): counts of red edges between rows 1-2, 1-3, 2-3.
struct EdgeVector {
  int a12 = 0;
  int a13 = 0;
  int a23 = 0;

  auto operator<=>(const EdgeVector&) const = default;
};

// Valid relative to order n: each pairwise sum a_ij + a_il even and <= 2n,
// entries nonnegative.
bool is_valid(const EdgeVector& a, int n);

// All valid vectors for order n (permutations included), lexicographic order.
std::vector<EdgeVector> enumerate_valid(int n);

// Same-row red-edge counts (a11, a22, a33) implied by n and the cross counts:
// a11 = (2n - a12 - a13)/2 and cyclically. Requires is_valid(a, n).
std::array<int, 3> derived_counts(const EdgeVector& a, int n);

// Exact number of graphs in the class (n, a): the product of the binomial
// placements of cross edges, the matchings of cross-edge endpoints, the
// same-row matchings of the leftover vertices, and the 4^n black patterns.
// Requires is_valid(a, n). Convention (-1)!! = 1.
mpz_class graph_count(int n, const EdgeVector& a);

// Row 1 <-> row 3 relabeling: swaps a12 and a23.
inline EdgeVector row13_mirror(const EdgeVector& a) {
  return EdgeVector{a.a23, a.a13, a.a12};
}

}  // namespace moments
