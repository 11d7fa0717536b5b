#include "moments/moment_graphs.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moments {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

void extend_matchings(std::vector<int>& partner, int matched_count,
                      std::vector<std::vector<int>>& out) {
  int m = static_cast<int>(partner.size());
  if (matched_count == m) {
    out.push_back(partner);
    return;
  }
  int first = 0;
  while (partner[first] >= 0) ++first;
  for (int second = first + 1; second < m; ++second) {
    if (partner[second] >= 0) continue;
    partner[first] = second;
    partner[second] = first;
    extend_matchings(partner, matched_count + 2, out);
    partner[first] = -1;
    partner[second] = -1;
  }
}

// Histogram of component counts per class; index = component count.
using ComponentHistogram = std::vector<std::int64_t>;

IntPolynomial histogram_to_poly(const ComponentHistogram& h) {
  std::vector<mpz_class> coeffs(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) coeffs[i] = h[i];
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

std::array<std::pair<int, int>, 3> black_edges(int order, int pair_index,
                                               int type) {
  int cols = 2 * order;
  int c1 = 2 * pair_index;
  int c2 = c1 + 1;
  auto O = [&](int c) { return c; };
  auto P = [&](int c) { return cols + c; };
  auto Q = [&](int c) { return 2 * cols + c; };
  switch (type) {
    case 1:
      return {{{O(c1), O(c2)}, {P(c1), Q(c1)}, {P(c2), Q(c2)}}};
    case 2:
      return {{{O(c1), Q(c2)}, {P(c1), Q(c1)}, {O(c2), P(c2)}}};
    case 3:
      return {{{O(c2), Q(c1)}, {P(c1), O(c1)}, {P(c2), Q(c2)}}};
    case 4:
      return {{{O(c1), P(c1)}, {O(c2), P(c2)}, {Q(c1), Q(c2)}}};
    default:
      throw std::invalid_argument("black_edges: type must be 1..4");
  }
}

int connected_components(const MomentGraph& g) {
  int nv = g.vertex_count();
  if (static_cast<int>(g.red_partner.size()) != nv ||
      static_cast<int>(g.black_types.size()) != g.order) {
    throw std::invalid_argument("connected_components: malformed graph");
  }
  std::vector<int> black(nv, -1);
  for (int j = 0; j < g.order; ++j) {
    for (auto [u, v] : black_edges(g.order, j, g.black_types[j])) {
      black[u] = v;
      black[v] = u;
    }
  }
  std::vector<char> seen(nv, 0);
  int components = 0;
  for (int start = 0; start < nv; ++start) {
    if (seen[start]) continue;
    ++components;
    // Follow the black edge, then the red edge, until the cycle closes.
    int v = start;
    while (!seen[v]) {
      seen[v] = 1;
      int w = black[v];
      seen[w] = 1;
      v = g.red_partner[w];
    }
  }
  return components;
}

EdgeVector classify(const MomentGraph& g) {
  EdgeVector a;
  int nv = g.vertex_count();
  for (int v = 0; v < nv; ++v) {
    int w = g.red_partner[v];
    if (w <= v) continue;
    int r1 = g.row(v);
    int r2 = g.row(w);
    if (r1 == r2) continue;
    if (r1 > r2) std::swap(r1, r2);
    if (r1 == 0 && r2 == 1) ++a.a12;
    if (r1 == 0 && r2 == 2) ++a.a13;
    if (r1 == 1 && r2 == 2) ++a.a23;
  }
  return a;
}

std::vector<std::vector<int>> all_matchings(int m) {
  if (m < 0 || m % 2 != 0) {
    throw std::invalid_argument("all_matchings: need even vertex count");
  }
  std::vector<std::vector<int>> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> partner(m, -1);
  extend_matchings(partner, 0, out);
  return out;
}

namespace {

std::map<EdgeVector, IntPolynomial> enumerate_classes_impl(int n,
                                                           int threads) {
  if (n < 1 || n > 2) {
    throw std::invalid_argument("enumerate_classes: n must be 1 or 2");
  }
  auto matchings = all_matchings(6 * n);
  int z_count = 1 << (2 * n);  // 4^n
  int max_components = 3 * n;

  std::map<EdgeVector, ComponentHistogram> totals;
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
  {
    std::map<EdgeVector, ComponentHistogram> local;
    MomentGraph g;
    g.order = n;
    g.black_types.assign(n, 1);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t mi = 0; mi < static_cast<std::int64_t>(matchings.size());
         ++mi) {
      g.red_partner = matchings[mi];
      EdgeVector cls = classify(g);
      auto& hist = local[cls];
      if (hist.empty()) hist.assign(max_components + 1, 0);
      for (int z = 0; z < z_count; ++z) {
        for (int j = 0; j < n; ++j) g.black_types[j] = 1 + ((z >> (2 * j)) & 3);
        ++hist[connected_components(g)];
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      for (auto& [cls, hist] : local) {
        auto& t = totals[cls];
        if (t.empty()) t.assign(max_components + 1, 0);
        for (std::size_t i = 0; i < hist.size(); ++i) t[i] += hist[i];
      }
    }
  }

  std::map<EdgeVector, IntPolynomial> out;
  for (auto& [cls, hist] : totals) out[cls] = histogram_to_poly(hist);
  return out;
}

IntPolynomial enumerate_same_row_impl(int n, int threads, int max_order) {
  if (n < 1 || n > max_order || max_order > 4) {
    throw std::invalid_argument("enumerate_same_row: order above tier");
  }
  auto row_matchings = all_matchings(2 * n);
  std::int64_t rm = static_cast<std::int64_t>(row_matchings.size());
  int z_count = 1 << (2 * n);
  int max_components = 3 * n;

  ComponentHistogram total(max_components + 1, 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
  {
    ComponentHistogram local(max_components + 1, 0);
    MomentGraph g;
    g.order = n;
    g.black_types.assign(n, 1);
    g.red_partner.assign(6 * n, -1);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t flat = 0; flat < rm * rm; ++flat) {
      const auto& mo = row_matchings[flat / rm];
      const auto& mp = row_matchings[flat % rm];
      for (int v = 0; v < 2 * n; ++v) {
        g.red_partner[v] = mo[v];
        g.red_partner[2 * n + v] = 2 * n + mp[v];
      }
      for (const auto& mq : row_matchings) {
        for (int v = 0; v < 2 * n; ++v) {
          g.red_partner[4 * n + v] = 4 * n + mq[v];
        }
        for (int z = 0; z < z_count; ++z) {
          for (int j = 0; j < n; ++j) {
            g.black_types[j] = 1 + ((z >> (2 * j)) & 3);
          }
          ++local[connected_components(g)];
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      for (std::size_t i = 0; i < local.size(); ++i) total[i] += local[i];
    }
  }
  return histogram_to_poly(total);
}

}  // namespace

std::map<EdgeVector, IntPolynomial> enumerate_classes(int n, int threads) {
  return enumerate_classes_impl(n, resolve_threads(threads));
}

std::map<EdgeVector, IntPolynomial> enumerate_classes_serial(int n) {
  return enumerate_classes_impl(n, 1);
}

IntPolynomial enumerate_same_row(int n, int threads, int max_order) {
  return enumerate_same_row_impl(n, resolve_threads(threads), max_order);
}

IntPolynomial enumerate_same_row_serial(int n, int max_order) {
  return enumerate_same_row_impl(n, 1, max_order);
}

}  // namespace moments
