#include "moments/block_terms.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>

namespace moments {

namespace {

void extend_structures(unsigned mask, std::array<int, 6>& partner,
                       int next_free, std::vector<BlockStructure>& out) {
  int first = -1;
  for (int v = next_free; v < 6; ++v) {
    if (!((mask >> v) & 1u) && partner[v] == -1) {
      first = v;
      break;
    }
  }
  if (first < 0) {
    out.push_back(BlockStructure{mask, partner});
    return;
  }
  for (int w = first + 1; w < 6; ++w) {
    if (((mask >> w) & 1u) || partner[w] != -1) continue;
    partner[first] = w;
    partner[w] = first;
    extend_structures(mask, partner, first + 1, out);
    partner[first] = -1;
    partner[w] = -1;
  }
}

std::vector<BlockStructure> build_structures() {
  std::vector<BlockStructure> out;
  for (unsigned mask = 0; mask < 64; ++mask) {
    int bits = std::popcount(mask);
    if (bits % 2 != 0) continue;
    std::array<int, 6> partner;
    partner.fill(-1);
    extend_structures(mask, partner, 0, out);
  }
  return out;
}

std::vector<BlockDiagram> build_diagrams() {
  std::vector<BlockDiagram> out;
  const auto& structures = block_structures();
  for (std::size_t si = 0; si < structures.size(); ++si) {
    const auto& s = structures[si];
    std::vector<int> prot;
    for (int v = 0; v < 6; ++v) {
      if (s.protrudes(v)) prot.push_back(v);
    }
    // Cross-row internal red edges vanish with the block.
    std::array<int, 3> internal_loss{};
    for (int v = 0; v < 6; ++v) {
      int w = s.red_partner[v];
      if (w > v && row_of(v) != row_of(w)) {
        ++internal_loss[edge_type_index(row_of(v), row_of(w)) - 3];
      }
    }
    for (int type = 1; type <= 4; ++type) {
      BlockTrace trace = trace_block(s, type);
      int assignments = 1;
      for (std::size_t i = 0; i < prot.size(); ++i) assignments *= 3;
      for (int asg = 0; asg < assignments; ++asg) {
        BlockDiagram d;
        d.structure_index = static_cast<int>(si);
        d.black_type = type;
        d.loops = trace.loops;
        int code = asg;
        for (int v : prot) {
          d.endpoint_row[v] = 1 + code % 3;
          code /= 3;
        }
        for (int i = 0; i < 3; ++i) d.delta[i] = -internal_loss[i];
        // A protruding red edge of cross type was counted in the order-n
        // vector and is consumed by the collapse.
        for (int v : prot) {
          int t = edge_type_index(row_of(v), d.endpoint_row[v]);
          if (t >= 3) --d.delta[t - 3];
        }
        // Each path becomes one red edge between the protruding targets.
        for (auto [u, v] : trace.paths) {
          int t = edge_type_index(d.endpoint_row[u], d.endpoint_row[v]);
          ++d.created[t];
          if (t >= 3) ++d.delta[t - 3];
        }
        out.push_back(d);
      }
    }
  }
  return out;
}

std::vector<BlockTerm> build_terms() {
  using Key = std::tuple<std::array<int, 3>, std::array<int, 6>, int, int>;
  std::map<Key, std::int64_t> grouped;
  for (const auto& d : block_diagrams()) {
    int protruding = 0;
    for (int v = 0; v < 6; ++v) {
      if (d.endpoint_row[v] != 0) ++protruding;
    }
    ++grouped[Key{d.delta, d.created, d.loops, protruding}];
  }
  std::vector<BlockTerm> out;
  out.reserve(grouped.size());
  for (const auto& [key, mult] : grouped) {
    BlockTerm t;
    t.delta = std::get<0>(key);
    t.created = std::get<1>(key);
    t.loops = std::get<2>(key);
    t.protruding = std::get<3>(key);
    t.multiplicity = mult;
    out.push_back(t);
  }
  return out;
}

std::int64_t falling(int pool, int take) {
  std::int64_t r = 1;
  for (int i = 0; i < take; ++i) {
    if (pool - i <= 0) return 0;
    r *= pool - i;
  }
  return r;
}

}  // namespace

int BlockStructure::protruding_size() const {
  return std::popcount(protruding_mask);
}

const std::vector<BlockStructure>& block_structures() {
  static const std::vector<BlockStructure> table = build_structures();
  return table;
}

std::array<int, 6> block_black_partner(int type) {
  // O1=0 O2=1 P1=2 P2=3 Q1=4 Q2=5.
  switch (type) {
    case 1:
      return {1, 0, 4, 5, 2, 3};  // O1-O2, P1-Q1, P2-Q2
    case 2:
      return {5, 3, 4, 1, 2, 0};  // O1-Q2, O2-P2, P1-Q1
    case 3:
      return {2, 4, 0, 5, 1, 3};  // O1-P1, O2-Q1, P2-Q2
    case 4:
      return {2, 3, 0, 1, 5, 4};  // O1-P1, O2-P2, Q1-Q2
    default:
      throw std::invalid_argument("block_black_partner: type must be 1..4");
  }
}

BlockTrace trace_block(const BlockStructure& s, int black_type) {
  auto black = block_black_partner(black_type);
  BlockTrace trace;
  std::array<bool, 6> visited{};
  for (int start = 0; start < 6; ++start) {
    if (!s.protrudes(start) || visited[start]) continue;
    visited[start] = true;
    int cur = start;
    while (true) {
      int w = black[cur];
      visited[w] = true;
      if (s.protrudes(w)) {
        trace.paths.emplace_back(std::min(start, w), std::max(start, w));
        break;
      }
      cur = s.red_partner[w];
      visited[cur] = true;
    }
  }
  for (int v = 0; v < 6; ++v) {
    if (visited[v]) continue;
    ++trace.loops;
    int cur = v;
    while (!visited[cur]) {
      visited[cur] = true;
      int w = black[cur];
      visited[w] = true;
      cur = s.red_partner[w];
    }
  }
  std::sort(trace.paths.begin(), trace.paths.end());
  return trace;
}

int edge_type_index(int row_a, int row_b) {
  int lo = std::min(row_a, row_b);
  int hi = std::max(row_a, row_b);
  if (lo < 1 || hi > 3) throw std::invalid_argument("edge_type_index: rows");
  if (lo == hi) return lo - 1;          // {1,1} {2,2} {3,3}
  if (lo == 1 && hi == 2) return 3;
  if (lo == 1 && hi == 3) return 4;
  return 5;                             // {2,3}
}

const std::vector<BlockDiagram>& block_diagrams() {
  static const std::vector<BlockDiagram> table = build_diagrams();
  return table;
}

const std::vector<BlockTerm>& block_terms() {
  static const std::vector<BlockTerm> table = build_terms();
  return table;
}

std::int64_t combinatorial_factor(const std::array<int, 6>& created,
                                  const EdgeVector& b, int m) {
  std::int64_t factor = 1;
  const int cross[3] = {b.a12, b.a13, b.a23};
  for (int t = 3; t < 6; ++t) {
    if (created[t] == 0) continue;
    factor *= falling(cross[t - 3], created[t]);
    if (factor == 0) return 0;
  }
  if (created[0] || created[1] || created[2]) {
    auto same = derived_counts(b, m);
    for (int t = 0; t < 3; ++t) {
      if (created[t] == 0) continue;
      factor *= falling(same[t], created[t]) << created[t];
      if (factor == 0) return 0;
    }
  }
  return factor;
}

}  // namespace moments
