// The column-collapse engine behind the recursion. The leading column pair
// of an order-n graph is a 6-vertex block: vertex ids O1=0, O2=1, P1=2,
// P2=3, Q1=4, Q2=5, rows 1,2,3 = O,P,Q. A block carries
// one of 4 black-edge patterns, an internal red matching, and red edges that
// protrude to the rest of the graph. Collapsing the block turns each
// black/red path between protruding vertices into one new red edge, deletes
// internal loops into factors of k, and shifts the cross-row edge counts.
//
// Enumerating every red layout (76), black type (4), and assignment of
// target rows to protruding vertices (3^protruding) yields all 9456 collapse
// diagrams; aggregating diagrams with equal (shift, created-edge multiset,
// loop count) gives the fixed term table the recursion evaluates per key.
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "moments/edge_vectors.hpp"

namespace moments {

inline int row_of(int v) { return v / 2 + 1; }  // rows 1..3

struct BlockStructure {
  unsigned protruding_mask = 0;      // bit v set when v's red edge leaves
  std::array<int, 6> red_partner{};  // internal matching; -1 when protruding

  bool protrudes(int v) const { return (protruding_mask >> v) & 1u; }
  int protruding_size() const;
};

// All 76 red layouts: 15 closed, 45 with one path, 15 with two, 1 with three.
const std::vector<BlockStructure>& block_structures();

// Black partner of each block vertex for pattern type 1..4.
std::array<int, 6> block_black_partner(int type);

struct BlockTrace {
  int loops = 0;
  // Protruding endpoint pairs joined by a black/red path, each pair and the
  // list itself sorted ascending.
  std::vector<std::pair<int, int>> paths;
};

BlockTrace trace_block(const BlockStructure& s, int black_type);

// Unordered row-pair types: 0:{1,1} 1:{2,2} 2:{3,3} 3:{1,2} 4:{1,3} 5:{2,3}.
int edge_type_index(int row_a, int row_b);

// One collapse diagram with its derived effect.
struct BlockDiagram {
  int structure_index = 0;
  int black_type = 1;
  std::array<int, 6> endpoint_row{};  // 1..3 where protruding, else 0
  std::array<int, 3> delta{};         // shift of (a12, a13, a23)
  std::array<int, 6> created{};       // created-edge multiset by type index
  int loops = 0;
};

const std::vector<BlockDiagram>& block_diagrams();

// Aggregated recursion term.
struct BlockTerm {
  std::array<int, 3> delta{};
  std::array<int, 6> created{};
  int loops = 0;
  int protruding = 0;  // 0, 2, 4, or 6
  std::int64_t multiplicity = 0;
};

const std::vector<BlockTerm>& block_terms();

// Number of ways to attach the created edges onto a target-class graph of
// order m and vector b: ordered selection of distinct red edges per created
// type (cross types draw on b itself, same-row types on its derived counts)
// with a factor 2 per same-row attachment for endpoint orientation. Zero
// when any pool is too small.
std::int64_t combinatorial_factor(const std::array<int, 6>& created,
                                  const EdgeVector& b, int m);

}  // namespace moments
