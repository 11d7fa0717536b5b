#include "moments/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "moments/closed_forms.hpp"

namespace moments {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// log M2 - 2 log M1, the log of the inverse ratio 1/m2. Always >= 0.
long double log_inverse_m2(int n, double k, MemoTable& memo) {
  return log_second_moment(n, k, memo) - 2.0L * first_moment_log(k, n);
}

}  // namespace

long double log_second_moment(int n, double k, MemoTable& memo) {
  if (k <= 0.0) {
    throw std::invalid_argument("log_second_moment requires k > 0");
  }
  const IntPolynomial& closed = g(n, EdgeVector{0, 0, 0}, memo);
  return log_mpz(double_factorial(2 * n - 1)) + poly_eval_log(closed, k);
}

double m2_statistic(int n, double k, MemoTable& memo) {
  return static_cast<double>(std::exp(-log_inverse_m2(n, k, memo)));
}

double ideal_xeb(int n, double k, MemoTable& memo) {
  return static_cast<double>(std::expm1(log_inverse_m2(n, k, memo)));
}

double log_inverse_ratio(int n, double k, MemoTable& memo) {
  const long double envelope = 0.5L * std::log(kPi * static_cast<long double>(n));
  return static_cast<double>(log_inverse_m2(n, k, memo) - envelope);
}

std::vector<double> symmetric_difference(const std::vector<double>& values) {
  if (values.size() < 3) {
    throw std::invalid_argument(
        "symmetric_difference requires at least 3 values");
  }
  std::vector<double> result;
  result.reserve(values.size() - 2);
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    result.push_back((values[i + 1] - values[i - 1]) / 2.0);
  }
  return result;
}

std::vector<SweepRecord> transition_sweep(const std::vector<double>& a_list,
                                          int n_max, MemoTable& memo) {
  if (n_max < 1) {
    throw std::invalid_argument("transition_sweep requires n_max >= 1");
  }
  std::vector<SweepRecord> records;
  records.reserve(a_list.size() * static_cast<std::size_t>(n_max));
  for (double a : a_list) {
    const std::size_t first = records.size();
    for (int n = 1; n <= n_max; ++n) {
      SweepRecord record;
      record.n = n;
      record.a_exponent = a;
      record.k = std::pow(static_cast<double>(n), a);
      record.log_inv = log_inverse_ratio(n, record.k, memo);
      records.push_back(record);
    }
    if (n_max >= 3) {
      for (int n = 2; n <= n_max - 1; ++n) {
        const std::size_t at = first + static_cast<std::size_t>(n - 1);
        records[at].delta =
            (records[at + 1].log_inv - records[at - 1].log_inv) / 2.0;
      }
    }
  }
  return records;
}

double growth_delta(int n_eval, double a_exponent, MemoTable& memo) {
  if (n_eval < 2) {
    throw std::invalid_argument("growth_delta requires n_eval >= 2");
  }
  const auto at = [&](int n) {
    return log_inverse_ratio(n, std::pow(static_cast<double>(n), a_exponent),
                             memo);
  };
  return (at(n_eval + 1) - at(n_eval - 1)) / 2.0;
}

double find_zero_crossing(int n_eval, double a_lo, double a_hi,
                          MemoTable& memo) {
  if (!(a_lo < a_hi)) {
    throw std::invalid_argument("find_zero_crossing requires a_lo < a_hi");
  }
  double f_lo = growth_delta(n_eval, a_lo, memo);
  double f_hi = growth_delta(n_eval, a_hi, memo);
  if (f_lo == 0.0) return a_lo;
  if (f_hi == 0.0) return a_hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream os;
    os << "no sign change on [" << a_lo << ", " << a_hi << "]: delta("
       << a_lo << ") = " << f_lo << ", delta(" << a_hi << ") = " << f_hi;
    throw std::domain_error(os.str());
  }
  while (a_hi - a_lo >= 1e-4) {
    const double mid = 0.5 * (a_lo + a_hi);
    const double f_mid = growth_delta(n_eval, mid, memo);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      a_lo = mid;
      f_lo = f_mid;
    } else {
      a_hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (a_lo + a_hi);
}

}  // namespace moments
