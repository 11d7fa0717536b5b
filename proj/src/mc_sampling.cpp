#include "moments/mc_sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "moments/hafnian.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moments {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct BlockPartial {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Non-validating hafnian on the active-index mask; the sampled matrix is
// symmetric by construction.
Complex hafnian_masked(const ComplexMatrix& a, unsigned mask) {
  if (mask == 0) return Complex(1.0, 0.0);
  int first = std::countr_zero(mask);
  unsigned rest = mask & (mask - 1);
  Complex sum(0.0, 0.0);
  for (unsigned m = rest; m != 0; m &= m - 1) {
    int j = std::countr_zero(m);
    sum += a.at(first, j) * hafnian_masked(a, rest & ~(1u << j));
  }
  return sum;
}

double sample_value(int t, int n, int k, std::uint64_t seed,
                    std::uint64_t index) {
  CounterRng rng(seed, index);
  int cols = 2 * n;
  // X is k x 2n; only X^T X is needed.
  std::vector<Complex> x(static_cast<std::size_t>(k) * cols);
  const double inv_sqrt2 = 0.70710678118654752440;
  for (auto& e : x) {
    double re = rng.next_normal() * inv_sqrt2;
    double im = rng.next_normal() * inv_sqrt2;
    e = Complex(re, im);
  }
  ComplexMatrix b(cols);
  for (int i = 0; i < cols; ++i) {
    for (int j = i; j < cols; ++j) {
      Complex acc(0.0, 0.0);
      for (int r = 0; r < k; ++r) {
        acc += x[static_cast<std::size_t>(r) * cols + i] *
               x[static_cast<std::size_t>(r) * cols + j];
      }
      b.at(i, j) = acc;
      b.at(j, i) = acc;
    }
  }
  double h2 = std::norm(hafnian_masked(b, (1u << cols) - 1));
  return t == 1 ? h2 : h2 * h2;
}

McEstimate mc_moment_impl(int t, int n, int k, std::uint64_t samples,
                          std::uint64_t seed, int threads) {
  if (t != 1 && t != 2) throw std::invalid_argument("mc_moment: t must be 1|2");
  if (n < 1 || 2 * n > 12) throw std::invalid_argument("mc_moment: 2n > 12");
  if (k < 1) throw std::invalid_argument("mc_moment: k < 1");
  if (samples < 100) throw std::invalid_argument("mc_moment: samples < 100");

  std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockPartial> partials(blocks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlockSize;
    std::uint64_t hi = std::min(samples, lo + kBlockSize);
    BlockPartial p;
    for (std::uint64_t i = lo; i < hi; ++i) {
      double v = sample_value(t, n, k, seed, i);
      p.sum += v;
      p.sum_sq += v * v;
    }
    partials[b] = p;
  }

  // Combine in block order regardless of which thread produced each block.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  double ns = static_cast<double>(samples);
  double mean = sum / ns;
  double variance = (sum_sq - ns * mean * mean) / (ns - 1.0);
  if (variance < 0.0) variance = 0.0;
  McEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(variance / ns);
  est.samples = samples;
  est.seed = seed;
  return est;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter) {
  state_ = splitmix64(seed ^ splitmix64(counter + 0x51ed270b9f9cda22ULL));
}

std::uint64_t CounterRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double CounterRng::next_unit() {
  // 53-bit mantissa, shifted into (0, 1].
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  have_cached_ = true;
  return r * std::cos(theta);
}

McEstimate mc_moment(int t, int n, int k, std::uint64_t samples,
                     std::uint64_t seed, int threads) {
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  int nt = 1;
#endif
  return mc_moment_impl(t, n, k, samples, seed, nt);
}

McEstimate mc_moment_serial(int t, int n, int k, std::uint64_t samples,
                            std::uint64_t seed) {
  return mc_moment_impl(t, n, k, samples, seed, 1);
}

}  // namespace moments
