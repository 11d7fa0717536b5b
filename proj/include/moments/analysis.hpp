// Derived statistics of the exact moments: the second-moment ratio, the
// ideal linear cross-entropy score, and the normalized log statistic whose
// growth rate flips sign at the anticoncentration transition.
#pragma once

#include <optional>
#include <vector>

#include "moments/recursion.hpp"

namespace moments {

// log M2(k, n) for real k > 0, evaluated in log space so that values far
// beyond double range (k up to n^4 at n = 40) stay finite.
long double log_second_moment(int n, double k, MemoTable& memo);

// m2 = M1(k, n)^2 / M2(k, n), in (0, 1] with equality only in degenerate
// limits; decreasing in n for fixed k.
double m2_statistic(int n, double k, MemoTable& memo);

// 1/m2 - 1: the score an ideal device achieves on the linear cross-entropy
// benchmark, up to 1/k corrections.
double ideal_xeb(int n, double k, MemoTable& memo);

// log(1/m2) - log(sqrt(pi n)): compares the inverse ratio against the
// reference envelope sqrt(pi n). The sign of its growth in n decides
// whether 1/m2 outpaces the envelope.
double log_inverse_ratio(int n, double k, MemoTable& memo);

// Centered first difference (f[i+1] - f[i-1]) / 2 for interior indices;
// output has size values.size() - 2. Requires at least 3 values.
std::vector<double> symmetric_difference(const std::vector<double>& values);

struct SweepRecord {
  int n = 0;
  double a_exponent = 0.0;
  double k = 0.0;
  double log_inv = 0.0;
  // Centered difference of log_inv along n at fixed exponent; empty at the
  // ends of the n range.
  std::optional<double> delta;
};

// For each exponent a (outer order) and n = 1..n_max (inner order), the
// statistic at k = n^a and its centered difference in n.
std::vector<SweepRecord> transition_sweep(const std::vector<double>& a_list,
                                          int n_max, MemoTable& memo);

// Centered difference of log_inverse_ratio along n at n_eval, with k = n^a
// throughout. The transition exponent is this function's zero in a.
double growth_delta(int n_eval, double a_exponent, MemoTable& memo);

// Bisection root of growth_delta(n_eval, a) on [a_lo, a_hi] to an interval
// shorter than 1e-4. Throws std::domain_error, quoting the endpoint values,
// when the bracket does not straddle a sign change.
double find_zero_crossing(int n_eval, double a_lo, double a_hi,
                          MemoTable& memo);

}  // namespace moments
