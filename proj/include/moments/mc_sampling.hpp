// Monte Carlo estimation of hafnian moments over complex Gaussian matrices.
// Sampling is counter-based: each sample's random stream is derived from
// (seed, sample index) alone, and samples are aggregated in fixed blocks in
// block order, so the estimate is bit-identical for any thread count.
#pragma once

#include <cstdint>

namespace moments {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// E |Haf(X^T X)|^(2t) over X in C^(k x 2n) with i.i.d. entries of unit
// E|z|^2, z = (g1 + i g2)/sqrt(2). t in {1, 2}; 2n <= 12; samples >= 100.
McEstimate mc_moment(int t, int n, int k, std::uint64_t samples,
                     std::uint64_t seed, int threads = 0);

McEstimate mc_moment_serial(int t, int n, int k, std::uint64_t samples,
                            std::uint64_t seed);

// Stateless generator for one sample's stream.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter);
  std::uint64_t next_u64();
  double next_unit();         // uniform in (0, 1]
  double next_normal();       // standard normal (Box-Muller, cached pair)

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace moments
