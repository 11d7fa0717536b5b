// Brute-force ground truth: explicit moment graphs on 6n vertices (three
// rows of 2n columns, one black perfect matching chosen per column pair plus
// one red perfect matching), connected-component counting, and exhaustive
// enumeration of the class polynomials for small n.
#pragma once

#include <map>
#include <vector>

#include "moments/edge_vectors.hpp"
#include "moments/polynomial.hpp"

namespace moments {

// Vertex v in [0, 6n): row(v) = v / (2n) with 0,1,2 for rows O,P,Q;
// column(v) = v % (2n).
struct MomentGraph {
  int order = 0;                 // n; the graph has 6n vertices
  std::vector<int> black_types;  // size n, entries in 1..4, one per column pair
  std::vector<int> red_partner;  // size 6n, involution without fixed points

  int vertex_count() const { return 6 * order; }
  int row(int v) const { return v / (2 * order); }
  int column(int v) const { return v % (2 * order); }
};

// The three black edges a given type places on column pair j (columns 2j,
// 2j+1), as vertex-id pairs of the full graph.
std::array<std::pair<int, int>, 3> black_edges(int order, int pair_index,
                                               int type);

// Component count of the union of black and red edges; every vertex has one
// black and one red edge, so components are even cycles.
int connected_components(const MomentGraph& g);

// Cross-row red-edge counts of the red matching.
EdgeVector classify(const MomentGraph& g);

// All (6n-1)!! red matchings times 4^n black assignments, accumulated as
// k^{components} into the class polynomial of each edge vector. n <= 2.
std::map<EdgeVector, IntPolynomial> enumerate_classes(int n, int threads = 0);

// Row-respecting red matchings only: ((2n-1)!!)^3 4^n graphs, all in class
// (0,0,0). max_order guards the steep growth; default tier allows n <= 3.
IntPolynomial enumerate_same_row(int n, int threads = 0, int max_order = 3);

// Serial reference implementations (identical results; kept for testing the
// parallel partitioning).
std::map<EdgeVector, IntPolynomial> enumerate_classes_serial(int n);
IntPolynomial enumerate_same_row_serial(int n, int max_order = 3);

// All perfect matchings on m (even) vertices as partner arrays, generated by
// always pairing the lowest unmatched vertex first; (m-1)!! results in a
// canonical order.
std::vector<std::vector<int>> all_matchings(int m);

}  // namespace moments
