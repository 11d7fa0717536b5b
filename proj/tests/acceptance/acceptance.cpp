// Acceptance gate: one criterion per line, PASS/FAIL with wall time, exit 0
// only when every criterion passes. Criteria with a stated time budget fail
// when they run over it.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moments/analysis.hpp"
#include "moments/closed_forms.hpp"
#include "moments/hafnian.hpp"
#include "moments/mc_sampling.hpp"
#include "moments/moment_graphs.hpp"
#include "moments/recursion.hpp"

namespace {

using moments::EdgeVector;
using moments::IntPolynomial;
using moments::MemoKey;
using moments::MemoTable;

IntPolynomial make(std::vector<long> values) {
  std::vector<mpz_class> coeffs;
  for (long v : values) coeffs.emplace_back(v);
  return IntPolynomial(std::move(coeffs));
}

class Gate {
 public:
  // Runs one criterion body; body appends detail to the note and returns
  // pass/fail. A nonzero budget turns overruns into failures.
  void run(const char* label, double budget_seconds,
           const std::function<bool(std::string&)>& body) {
    ++index_;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && budget_seconds > 0.0 && elapsed > budget_seconds) {
      ok = false;
      note += (note.empty() ? "" : "; ");
      note += "over the " + std::to_string(budget_seconds) + "s budget";
    }
    all_ok_ &= ok;
    std::printf("[%2d] %s %s%s%s (%.2fs)\n", index_, ok ? "PASS" : "FAIL",
                label, note.empty() ? "" : ": ", note.c_str(), elapsed);
    std::fflush(stdout);
  }

  bool all_ok() const { return all_ok_; }

 private:
  int index_ = 0;
  bool all_ok_ = true;
};

moments::ComplexMatrix random_matrix(int dim, std::uint64_t counter,
                                     bool symmetric) {
  moments::CounterRng rng(20260815, counter);
  moments::ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = symmetric ? i : 0; j < dim; ++j) {
      const moments::Complex z(rng.next_normal(), rng.next_normal());
      m.at(i, j) = z / std::sqrt(2.0);
      if (symmetric) m.at(j, i) = m.at(i, j);
    }
  }
  return m;
}

double relative_gap(const moments::Complex& x, const moments::Complex& y) {
  return std::abs(x - y) / std::max(std::abs(y), 1.0);
}

}  // namespace

int main() {
  Gate gate;
  MemoTable table;
  double scale_seconds = 0.0;

  gate.run("order-1 class polynomials", 1.0, [&](std::string&) {
    return moments::base_case(EdgeVector{0, 0, 0}) == make({0, 2, 2}) &&
           moments::base_case(EdgeVector{2, 0, 0}) == make({0, 4, 3, 1}) &&
           moments::base_case(EdgeVector{0, 0, 2}) == make({0, 4, 3, 1}) &&
           moments::base_case(EdgeVector{0, 2, 0}) == make({0, 6, 2}) &&
           moments::base_case(EdgeVector{1, 1, 1}) == make({0, 16, 14, 2});
  });

  gate.run("recursion equals exhaustive enumeration", 60.0,
           [&](std::string& note) {
             MemoTable memo;
             long graphs = 0;
             for (int n = 1; n <= 2; ++n) {
               for (const auto& [a, poly] : moments::enumerate_classes(n)) {
                 if (moments::g(n, a, memo) != poly) return false;
                 graphs += moments::graph_count(n, a).get_si();
               }
             }
             if (moments::g(3, EdgeVector{0, 0, 0}, memo) !=
                 moments::enumerate_same_row(3)) {
               return false;
             }
             note = std::to_string(graphs) + " + 216000 graphs";
             return graphs == 60 + 166320;
           });

  gate.run("count identity across the full table", 0.0,
           [&](std::string& note) {
             const auto start = std::chrono::steady_clock::now();
             moments::g_parallel(40, EdgeVector{0, 0, 0}, table, 0);
             scale_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
             for (const auto& [key, poly] : table.entries()) {
               if (moments::poly_eval_exact(poly, 1) !=
                   moments::graph_count(key.n, key.a)) {
                 note = "mismatch at n=" + std::to_string(key.n);
                 return false;
               }
             }
             note = std::to_string(table.size()) + " keys";
             return true;
           });

  gate.run("coefficient closed forms up to n = 40", 0.0, [&](std::string&) {
    for (int n = 1; n <= 40; ++n) {
      const IntPolynomial& p = table.at(MemoKey{n, EdgeVector{0, 0, 0}});
      if (p.coeff(2 * n) != moments::c_2n(n)) return false;
      if (p.coeff(2 * n - 1) != moments::c_2n_minus_1(n)) return false;
      if (p.coeff(1) != moments::c_1(n)) return false;
      const mpz_class at_one = moments::double_factorial(2 * n - 1) *
                               moments::poly_eval_exact(p, 1);
      if (at_one != moments::second_moment_k1(n)) return false;
    }
    return true;
  });

  gate.run("scale envelope", 0.0, [&](std::string& note) {
    char dir_template[] = "/tmp/acceptance-cache-XXXXXX";
    if (mkdtemp(dir_template) == nullptr) {
      note = "mkdtemp failed";
      return false;
    }
    const std::filesystem::path dir(dir_template);
    moments::save_memo(table, dir);
    std::uintmax_t bytes = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      bytes += entry.file_size();
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);

    char buffer[128];
    std::snprintf(buffer, sizeof buffer, "%.1fs cold, %zu keys, %.0f MiB",
                  scale_seconds, table.size(), double(bytes) / (1 << 20));
    note = buffer;
    return scale_seconds < 7200.0 && table.size() <= 100000 &&
           bytes <= std::uintmax_t(1) << 30;
  });

  gate.run("sandwich bounds over n <= 40, k <= 100", 0.0, [&](std::string&) {
    for (int n = 1; n <= 40; ++n) {
      const IntPolynomial second_moment =
          moments::poly_scale(table.at(MemoKey{n, EdgeVector{0, 0, 0}}),
                              moments::double_factorial(2 * n - 1));
      for (long k = 1; k <= 100; ++k) {
        const mpz_class value = moments::poly_eval_exact(second_moment, k);
        const auto bounds = moments::moment_bounds(k, n);
        if (value > bounds.upper) return false;
        if (value < bounds.lower_leading) return false;
        if (value < bounds.lower_count) return false;
      }
    }
    return true;
  });

  gate.run("sampling concordance, second moment", 600.0,
           [&](std::string& note) {
             double worst_z = 0.0;
             for (int n = 1; n <= 3; ++n) {
               const IntPolynomial& p =
                   table.at(MemoKey{n, EdgeVector{0, 0, 0}});
               for (int k = 1; k <= 4; ++k) {
                 const auto est = moments::mc_moment(
                     2, n, k, 100000, 9000 + 100 * n + k);
                 const double exact =
                     mpz_class(moments::double_factorial(2 * n - 1) *
                               moments::poly_eval_exact(p, k))
                         .get_d();
                 const double gap = std::fabs(est.mean - exact);
                 worst_z = std::max(worst_z, gap / est.std_error);
                 if (gap >= 5.0 * est.std_error && gap > 0.25 * exact) {
                   note = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                   return false;
                 }
               }
             }
             char buffer[64];
             std::snprintf(buffer, sizeof buffer, "worst |z| = %.2f", worst_z);
             note = buffer;
             return true;
           });

  gate.run("sampling concordance, first moment", 300.0,
           [&](std::string& note) {
             double worst_z = 0.0;
             for (int n = 1; n <= 3; ++n) {
               for (int k = 1; k <= 4; ++k) {
                 const auto est = moments::mc_moment(
                     1, n, k, 100000, 5000 + 100 * n + k);
                 const double exact =
                     moments::first_moment_exact(k, n).get_d();
                 const double gap = std::fabs(est.mean - exact);
                 worst_z = std::max(worst_z, gap / est.std_error);
                 if (gap >= 5.0 * est.std_error) {
                   note = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                   return false;
                 }
               }
             }
             char buffer[64];
             std::snprintf(buffer, sizeof buffer, "worst |z| = %.2f", worst_z);
             note = buffer;
             return true;
           });

  gate.run("transition window and far endpoints", 60.0,
           [&](std::string& note) {
             const double below = moments::growth_delta(39, 1.95, table);
             const double above = moments::growth_delta(39, 2.10, table);
             const double root =
                 moments::find_zero_crossing(39, 1.95, 2.10, table);
             const double flat =
                 moments::log_inverse_ratio(40, std::pow(40.0, 4.0), table);
             const double steep =
                 moments::log_inverse_ratio(40, std::sqrt(40.0), table);
             char buffer[96];
             std::snprintf(buffer, sizeof buffer,
                           "root %.4f, endpoints %.4g / %.4g", root, flat,
                           steep);
             note = buffer;
             return below > 0.0 && above < 0.0 && root >= 1.95 &&
                    root <= 2.10 && flat < 0.05 && steep > 10.0;
           });

  gate.run("row 1-3 relabeling symmetry", 0.0, [&](std::string&) {
    std::vector<MemoKey> keys;
    keys.reserve(table.size());
    for (const auto& [key, poly] : table.entries()) keys.push_back(key);
    for (const MemoKey& key : keys) {
      const MemoKey mirrored{key.n, moments::row13_mirror(key.a)};
      const IntPolynomial* p = table.find(mirrored);
      const IntPolynomial& expected =
          p != nullptr ? *p : moments::g(mirrored.n, mirrored.a, table);
      if (expected != table.at(key)) return false;
    }
    return true;
  });

  gate.run("hafnian embedding of the permanent", 0.0, [&](std::string&) {
    for (int dim : {2, 3}) {
      for (std::uint64_t trial = 0; trial < 8; ++trial) {
        const auto b = random_matrix(dim, 100 * dim + trial, false);
        const auto direct = moments::permanent(b);
        const auto embedded =
            moments::naive_hafnian(moments::permanent_embedding(b));
        if (relative_gap(embedded, direct) > 1e-10) return false;
      }
    }
    for (std::uint64_t trial = 0; trial < 8; ++trial) {
      const auto two = random_matrix(2, 900 + trial, true);
      if (relative_gap(moments::naive_hafnian(two), two.at(0, 1)) > 1e-12) {
        return false;
      }
      const auto four = random_matrix(4, 950 + trial, true);
      const moments::Complex closed = four.at(0, 1) * four.at(2, 3) +
                                      four.at(0, 2) * four.at(1, 3) +
                                      four.at(0, 3) * four.at(1, 2);
      if (relative_gap(moments::naive_hafnian(four), closed) > 1e-12) {
        return false;
      }
    }
    return true;
  });

  std::printf("%s\n", gate.all_ok() ? "acceptance: all criteria pass"
                                    : "acceptance: FAILURES above");
  return gate.all_ok() ? 0 : 1;
}
