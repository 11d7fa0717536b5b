// Command-line front end: computes and caches the moment polynomials, runs
// the verification suites, and emits machine-readable documents. stdout
// carries only the requested document; diagnostics and cache statistics go
// to stderr. Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 I/O error.
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "moments/analysis.hpp"
#include "moments/closed_forms.hpp"
#include "moments/edge_vectors.hpp"
#include "moments/mc_sampling.hpp"
#include "moments/moment_graphs.hpp"
#include "moments/polynomial.hpp"
#include "moments/recursion.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct RunConfig {
  std::string cache_dir = "./moments-cache";
  int threads = 0;
  std::string format = "json";
  std::uint64_t seed = 1;
};

// Loads the cache once per process; finish() persists new entries and
// reports traffic on stderr so stdout stays schema-clean.
class CacheSession {
 public:
  explicit CacheSession(const std::string& dir)
      : dir_(dir), memo_(moments::load_memo(dir_)), loaded_(memo_.size()) {}

  moments::MemoTable& memo() { return memo_; }

  void finish() {
    const std::size_t written = moments::save_memo(memo_, dir_);
    std::fprintf(stderr, "cache: loaded=%zu computed=%llu written=%zu\n",
                 loaded_,
                 static_cast<unsigned long long>(memo_.computed_count()),
                 written);
  }

 private:
  std::filesystem::path dir_;
  moments::MemoTable memo_;
  std::size_t loaded_;
};

std::string format_vector(const moments::EdgeVector& a) {
  return "(" + std::to_string(a.a12) + "," + std::to_string(a.a13) + "," +
         std::to_string(a.a23) + ")";
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

bool parse_edge_vector(const std::string& text, moments::EdgeVector* out) {
  int a12 = 0;
  int a13 = 0;
  int a23 = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d%n", &a12, &a13, &a23, &consumed) !=
      3) {
    return false;
  }
  if (static_cast<std::size_t>(consumed) != text.size()) return false;
  *out = moments::EdgeVector{a12, a13, a23};
  return true;
}

bool is_unsigned_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// "lo:hi:step" or a comma list of exponents.
std::optional<std::vector<double>> parse_exponent_list(
    const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%n", &lo, &hi, &step,
                    &consumed) != 3 ||
        static_cast<std::size_t>(consumed) != text.size()) {
      return std::nullopt;
    }
    if (!(step > 0.0) || hi < lo) return std::nullopt;
    for (int i = 0;; ++i) {
      const double value = lo + i * step;
      if (value > hi + 1e-9) break;
      values.push_back(value);
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find(',', start);
      const std::string piece =
          text.substr(start, end == std::string::npos ? end : end - start);
      try {
        std::size_t used = 0;
        const double value = std::stod(piece, &used);
        if (used != piece.size()) return std::nullopt;
        values.push_back(value);
      } catch (const std::exception&) {
        return std::nullopt;
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  if (values.empty()) return std::nullopt;
  return values;
}

std::vector<std::string> coefficient_strings(const moments::IntPolynomial& p) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(p.degree()) + 1);
  for (int i = 0; i <= p.degree(); ++i) {
    out.push_back(moments::to_decimal(p.coeff(i)));
  }
  return out;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

// --- compute ---------------------------------------------------------------

struct ComputeArgs {
  int n = 0;
  std::string a_text;
  std::string k_text;
};

int cmd_compute(const RunConfig& cfg, const ComputeArgs& args) {
  moments::EdgeVector a;
  if (!parse_edge_vector(args.a_text, &a)) {
    return usage_error("--a expects three comma-separated integers, got '" +
                       args.a_text + "'");
  }
  if (args.n < 1) return usage_error("--n must be >= 1");
  if (!moments::is_valid(a, args.n)) {
    return usage_error(
        "edge vector " + format_vector(a) + " is invalid at n=" +
        std::to_string(args.n) +
        ": entries must be nonnegative and each pairwise sum a12+a13, "
        "a12+a23, a13+a23 must be even and at most 2n=" +
        std::to_string(2 * args.n));
  }

  // Evaluation point, validated before any computation: all digits means an
  // exact integer evaluation, otherwise a real point evaluated in log space.
  std::optional<mpz_class> k_integer;
  std::optional<double> k_real;
  if (!args.k_text.empty()) {
    if (is_unsigned_integer(args.k_text)) {
      k_integer = mpz_class(args.k_text, 10);
    } else {
      try {
        std::size_t used = 0;
        const double value = std::stod(args.k_text, &used);
        if (used != args.k_text.size()) throw std::invalid_argument("trail");
        if (!(value > 0.0) || !std::isfinite(value)) {
          return usage_error("--k must be a positive real, got '" +
                             args.k_text + "'");
        }
        k_real = value;
      } catch (const std::exception&) {
        return usage_error("--k expects an integer or real number, got '" +
                           args.k_text + "'");
      }
    }
  }

  CacheSession session(cfg.cache_dir);
  const moments::IntPolynomial& poly =
      moments::g_parallel(args.n, a, session.memo(), cfg.threads);

  if (cfg.format == "csv") {
    if (!args.k_text.empty()) {
      if (k_integer) {
        std::cout << "k,eval\n"
                  << args.k_text << ','
                  << moments::to_decimal(
                         moments::poly_eval_exact(poly, *k_integer))
                  << '\n';
      } else {
        std::cout << "k,log_value\n"
                  << format_double(*k_real) << ','
                  << format_double(static_cast<double>(
                         moments::poly_eval_log(poly, *k_real)))
                  << '\n';
      }
    } else {
      std::cout << "power,coefficient\n";
      for (int i = 0; i <= poly.degree(); ++i) {
        std::cout << i << ',' << moments::to_decimal(poly.coeff(i)) << '\n';
      }
    }
  } else {
    nlohmann::ordered_json doc;
    doc["n"] = args.n;
    doc["a"] = {a.a12, a.a13, a.a23};
    doc["degree"] = poly.degree();
    doc["coeffs"] = coefficient_strings(poly);
    if (k_integer) {
      doc["k"] = args.k_text;
      doc["eval"] =
          moments::to_decimal(moments::poly_eval_exact(poly, *k_integer));
    } else if (k_real) {
      doc["k"] = *k_real;
      doc["log_value"] =
          static_cast<double>(moments::poly_eval_log(poly, *k_real));
    }
    std::cout << doc.dump(2) << '\n';
  }
  session.finish();
  return kExitOk;
}

// --- coeffs ----------------------------------------------------------------

struct CoeffCheck {
  std::string name;
  mpz_class actual;
  mpz_class expected;
};

int cmd_coeffs(const RunConfig& cfg, int n) {
  if (n < 1) return usage_error("--n must be >= 1");
  CacheSession session(cfg.cache_dir);
  const moments::IntPolynomial& poly = moments::g_parallel(
      n, moments::EdgeVector{0, 0, 0}, session.memo(), cfg.threads);

  mpz_class sum = 0;
  for (int i = 1; i <= 2 * n; ++i) sum += poly.coeff(i);
  const mpz_class df = moments::double_factorial(2 * n - 1);
  mpz_class four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(n));
  const std::vector<CoeffCheck> checks = {
      {"c_2n", poly.coeff(2 * n), moments::c_2n(n)},
      {"c_2n_minus_1", poly.coeff(2 * n - 1), moments::c_2n_minus_1(n)},
      {"c_1", poly.coeff(1), moments::c_1(n)},
      {"sum", sum, df * df * df * four_pow},
  };

  bool all_ok = true;
  for (const CoeffCheck& check : checks) {
    if (check.actual != check.expected) all_ok = false;
  }

  if (cfg.format == "csv") {
    std::cout << "index,coefficient,reference,status\n";
    for (int i = 1; i <= 2 * n; ++i) {
      std::cout << i << ',' << moments::to_decimal(poly.coeff(i));
      const CoeffCheck* check = nullptr;
      if (i == 2 * n) check = &checks[0];
      else if (i == 2 * n - 1) check = &checks[1];
      else if (i == 1) check = &checks[2];
      if (check != nullptr) {
        std::cout << ',' << moments::to_decimal(check->expected) << ','
                  << (check->actual == check->expected ? "ok" : "mismatch");
      } else {
        std::cout << ",,";
      }
      std::cout << '\n';
    }
    std::cout << ',' << moments::to_decimal(sum) << ','
              << moments::to_decimal(checks[3].expected) << ','
              << (checks[3].actual == checks[3].expected ? "ok" : "mismatch")
              << '\n';
  } else {
    nlohmann::ordered_json doc;
    doc["n"] = n;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (int i = 1; i <= 2 * n; ++i) {
      coeffs.push_back(moments::to_decimal(poly.coeff(i)));
    }
    doc["coeffs"] = coeffs;
    nlohmann::ordered_json check_docs = nlohmann::ordered_json::array();
    for (const CoeffCheck& check : checks) {
      nlohmann::ordered_json entry;
      entry["name"] = check.name;
      entry["actual"] = moments::to_decimal(check.actual);
      entry["expected"] = moments::to_decimal(check.expected);
      entry["status"] = check.actual == check.expected ? "ok" : "mismatch";
      check_docs.push_back(entry);
    }
    doc["checks"] = check_docs;
    std::cout << doc.dump(2) << '\n';
  }
  session.finish();
  return all_ok ? kExitOk : kExitVerification;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string a_text;
  int n_max = 0;
};

int cmd_sweep(const RunConfig& cfg, const SweepArgs& args) {
  const auto exponents = parse_exponent_list(args.a_text);
  if (!exponents) {
    return usage_error("--a expects 'lo:hi:step' with step > 0 or a comma "
                       "list, got '" +
                       args.a_text + "'");
  }
  if (args.n_max < 1) return usage_error("--n-max must be >= 1");

  CacheSession session(cfg.cache_dir);
  moments::g_parallel(args.n_max, moments::EdgeVector{0, 0, 0},
                      session.memo(), cfg.threads);
  const std::vector<moments::SweepRecord> records =
      moments::transition_sweep(*exponents, args.n_max, session.memo());

  if (cfg.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const moments::SweepRecord& r : records) {
      nlohmann::ordered_json row;
      row["n"] = r.n;
      row["a_exponent"] = r.a_exponent;
      row["k"] = r.k;
      row["log_inv"] = r.log_inv;
      if (r.delta) {
        row["delta"] = *r.delta;
      } else {
        row["delta"] = nullptr;
      }
      rows.push_back(row);
    }
    std::cout << rows.dump(2) << '\n';
  } else {
    std::cout << "n,a_exponent,k,log_inv,delta\n";
    for (const moments::SweepRecord& r : records) {
      std::cout << r.n << ',' << format_double(r.a_exponent) << ','
                << format_double(r.k) << ',' << format_double(r.log_inv)
                << ',';
      if (r.delta) std::cout << format_double(*r.delta);
      std::cout << '\n';
    }
  }
  session.finish();
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

std::string coefficient_list(const moments::IntPolynomial& p) {
  std::string out = "[";
  for (int i = 0; i <= p.degree(); ++i) {
    if (i > 0) out += ",";
    out += moments::to_decimal(p.coeff(i));
  }
  return out + "]";
}

int cmd_verify_oracle(const RunConfig& cfg, int n) {
  if (n < 1 || n > 3) {
    return usage_error("verify oracle supports --n 1, 2 (all classes) or 3 "
                       "(same-row class only)");
  }
  CacheSession session(cfg.cache_dir);
  bool pass = true;
  if (n <= 2) {
    const auto classes = moments::enumerate_classes(n, cfg.threads);
    mpz_class total = 0;
    for (const auto& [a, poly] : classes) {
      total += moments::poly_eval_exact(poly, 1);
    }
    for (const moments::EdgeVector& a : moments::enumerate_valid(n)) {
      const auto it = classes.find(a);
      const moments::IntPolynomial enumerated =
          it == classes.end() ? moments::IntPolynomial() : it->second;
      const moments::IntPolynomial& recursed =
          moments::g_parallel(n, a, session.memo(), cfg.threads);
      if (enumerated == recursed) {
        std::cout << "ok n=" << n << " a=" << format_vector(a) << "\n";
      } else {
        std::cout << "MISMATCH n=" << n << " a=" << format_vector(a)
                  << ": recursion " << coefficient_list(recursed)
                  << " vs enumeration " << coefficient_list(enumerated)
                  << "\n";
        pass = false;
      }
      if (!pass) break;
    }
    std::cout << "total graphs " << moments::to_decimal(total) << "\n";
  } else {
    const moments::IntPolynomial enumerated =
        moments::enumerate_same_row(3, cfg.threads);
    const moments::IntPolynomial& recursed = moments::g_parallel(
        3, moments::EdgeVector{0, 0, 0}, session.memo(), cfg.threads);
    if (enumerated == recursed) {
      std::cout << "ok n=3 a=(0,0,0) same-row\n";
    } else {
      std::cout << "MISMATCH n=3 a=(0,0,0): recursion "
                << coefficient_list(recursed) << " vs enumeration "
                << coefficient_list(enumerated) << "\n";
      pass = false;
    }
  }
  std::cout << "oracle n=" << n << ": " << (pass ? "pass" : "FAIL") << "\n";
  session.finish();
  return pass ? kExitOk : kExitVerification;
}

struct McArgs {
  int t = 2;
  int n = 0;
  int k = 0;
  std::uint64_t samples = 100000;
};

int cmd_verify_mc(const RunConfig& cfg, const McArgs& args) {
  if (args.t != 1 && args.t != 2) return usage_error("--t must be 1 or 2");
  if (args.n < 1 || 2 * args.n > 12) {
    return usage_error("verify mc requires 1 <= n <= 6");
  }
  if (args.k < 1) return usage_error("--k must be >= 1");
  if (args.samples < 100) return usage_error("--samples must be >= 100");

  CacheSession session(cfg.cache_dir);
  mpz_class exact;
  if (args.t == 2) {
    const moments::IntPolynomial& poly = moments::g_parallel(
        args.n, moments::EdgeVector{0, 0, 0}, session.memo(), cfg.threads);
    exact = moments::double_factorial(2 * args.n - 1) *
            moments::poly_eval_exact(poly, args.k);
  } else {
    exact = moments::first_moment_exact(args.k, args.n);
  }
  const moments::McEstimate estimate = moments::mc_moment(
      args.t, args.n, args.k, args.samples, cfg.seed, cfg.threads);
  const double exact_value = mpz_get_d(exact.get_mpz_t());
  const double z = (estimate.mean - exact_value) / estimate.std_error;

  std::cout << "mc t=" << args.t << " n=" << args.n << " k=" << args.k
            << " samples=" << args.samples << " seed=" << cfg.seed
            << ": mean=" << format_double(estimate.mean)
            << " std_error=" << format_double(estimate.std_error)
            << " exact=" << moments::to_decimal(exact)
            << " z=" << format_double(z) << "\n";
  const bool pass = std::abs(z) < 5.0;
  std::cout << (pass ? "pass |z| < 5" : "FAIL |z| >= 5") << "\n";
  session.finish();
  return pass ? kExitOk : kExitVerification;
}

int cmd_verify_closed_forms(const RunConfig& cfg, int n_max) {
  if (n_max < 1) return usage_error("--n-max must be >= 1");
  CacheSession session(cfg.cache_dir);
  moments::g_parallel(n_max, moments::EdgeVector{0, 0, 0}, session.memo(),
                      cfg.threads);

  const auto mismatch = [](const std::string& what, int n,
                           const mpz_class& actual,
                           const mpz_class& expected) {
    std::cout << "MISMATCH n=" << n << " " << what << ": "
              << moments::to_decimal(actual) << " vs "
              << moments::to_decimal(expected) << "\n";
  };

  for (int n = 1; n <= n_max; ++n) {
    const moments::IntPolynomial& poly = moments::g(
        n, moments::EdgeVector{0, 0, 0}, session.memo());
    const mpz_class df = moments::double_factorial(2 * n - 1);

    const mpz_class leading = moments::c_2n(n);
    if (moments::c_2n_sum(n) != leading) {
      mismatch("c_2n sum form", n, moments::c_2n_sum(n), leading);
      session.finish();
      return kExitVerification;
    }
    if (poly.coeff(2 * n) != leading) {
      mismatch("c_2n", n, poly.coeff(2 * n), leading);
      session.finish();
      return kExitVerification;
    }
    const mpz_class next = moments::c_2n_minus_1(n);
    if (moments::c_2n_minus_1_sum(n) != next) {
      mismatch("c_2n_minus_1 sum form", n, moments::c_2n_minus_1_sum(n),
               next);
      session.finish();
      return kExitVerification;
    }
    if (poly.coeff(2 * n - 1) != next) {
      mismatch("c_2n_minus_1", n, poly.coeff(2 * n - 1), next);
      session.finish();
      return kExitVerification;
    }
    if (poly.coeff(1) != moments::c_1(n)) {
      mismatch("c_1", n, poly.coeff(1), moments::c_1(n));
      session.finish();
      return kExitVerification;
    }
    if (df * moments::poly_eval_exact(poly, 1) !=
        moments::second_moment_k1(n)) {
      mismatch("M2 at k=1", n, df * moments::poly_eval_exact(poly, 1),
               moments::second_moment_k1(n));
      session.finish();
      return kExitVerification;
    }
    for (int k = 1; k <= 100; ++k) {
      const mpz_class value = df * moments::poly_eval_exact(poly, k);
      const moments::MomentBounds bounds = moments::moment_bounds(k, n);
      if (value > bounds.upper || value < bounds.lower_leading ||
          value < bounds.lower_count) {
        std::cout << "MISMATCH n=" << n << " k=" << k
                  << " bounds: M2=" << moments::to_decimal(value)
                  << " upper=" << moments::to_decimal(bounds.upper)
                  << " lower_leading="
                  << moments::to_decimal(bounds.lower_leading)
                  << " lower_count="
                  << moments::to_decimal(bounds.lower_count) << "\n";
        session.finish();
        return kExitVerification;
      }
    }
    std::cout << "ok n=" << n << " coefficients, k=1 identity, bounds\n";
  }
  std::cout << "closed-forms n<=" << n_max << ": pass\n";
  session.finish();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact moments of Gaussian boson sampling probabilities"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--cache", cfg.cache_dir,
                 "Cache directory for computed polynomials")
      ->envname("MOMENTS_CACHE")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = all")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();

  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "Compute one class polynomial, optionally evaluate it");
  compute->add_option("--n", compute_args.n, "Order (half the column count)")
      ->required();
  compute->add_option("--a", compute_args.a_text, "Edge vector a12,a13,a23")
      ->required();
  compute->add_option("--k", compute_args.k_text,
                      "Evaluation point (integer: exact, real: log value)");

  int coeffs_n = 0;
  CLI::App* coeffs =
      app.add_subcommand("coeffs", "Coefficients of g(n,(0,0,0)) with "
                                   "closed-form cross-checks");
  coeffs->add_option("--n", coeffs_n, "Order")->required();

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Transition statistic over a grid of exponents and orders");
  sweep->add_option("--a", sweep_args.a_text,
                    "Exponents: lo:hi:step or a comma list")
      ->required();
  sweep->add_option("--n-max", sweep_args.n_max, "Largest order")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "Cross-checks against independent routes");
  verify->require_subcommand(1);
  int oracle_n = 0;
  CLI::App* v_oracle = verify->add_subcommand(
      "oracle", "Exhaustive enumeration vs the recursion");
  v_oracle->add_option("--n", oracle_n, "Order (1, 2, or 3)")->required();

  McArgs mc_args;
  CLI::App* v_mc = verify->add_subcommand(
      "mc", "Monte Carlo sampling vs the exact moment");
  v_mc->add_option("--t", mc_args.t, "Moment power (1 or 2)")
      ->capture_default_str();
  v_mc->add_option("--n", mc_args.n, "Order")->required();
  v_mc->add_option("--k", mc_args.k, "Squeezed mode count")->required();
  v_mc->add_option("--samples", mc_args.samples, "Sample count")
      ->capture_default_str();

  int cf_n_max = 0;
  CLI::App* v_cf = verify->add_subcommand(
      "closed-forms", "Coefficient, k=1, and bounds identities");
  v_cf->add_option("--n-max", cf_n_max, "Largest order")->required();

  for (CLI::App* sub : {compute, coeffs, sweep, verify}) {
    sub->fallthrough();
  }
  for (CLI::App* sub : {v_oracle, v_mc, v_cf}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(cfg, compute_args);
    if (coeffs->parsed()) return cmd_coeffs(cfg, coeffs_n);
    if (sweep->parsed()) {
      // Sweeps are tabular; they emit CSV unless JSON is asked for.
      if (app.count("--format") == 0) cfg.format = "csv";
      return cmd_sweep(cfg, sweep_args);
    }
    if (verify->parsed()) {
      if (v_oracle->parsed()) return cmd_verify_oracle(cfg, oracle_n);
      if (v_mc->parsed()) return cmd_verify_mc(cfg, mc_args);
      if (v_cf->parsed()) return cmd_verify_closed_forms(cfg, cf_n_max);
    }
  } catch (const moments::CacheError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
