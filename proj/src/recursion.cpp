#include "moments/recursion.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "moments/block_terms.hpp"
#include "moments/closed_forms.hpp"

namespace moments {

namespace {

std::string describe(int n, const EdgeVector& a) {
  std::ostringstream os;
  os << "(n=" << n << ", a=(" << a.a12 << "," << a.a13 << "," << a.a23
     << "))";
  return os.str();
}

void require_valid(int n, const EdgeVector& a) {
  if (n < 1) {
    throw std::invalid_argument("order must be >= 1, got " +
                                std::to_string(n));
  }
  if (!is_valid(a, n)) {
    throw std::invalid_argument("edge vector invalid at " + describe(n, a));
  }
}

EdgeVector shifted(const EdgeVector& a, const std::array<int, 3>& delta) {
  return EdgeVector{a.a12 + delta[0], a.a13 + delta[1], a.a23 + delta[2]};
}

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Sums every collapse term matching the protruding filter (-1 accepts all)
// into buckets keyed by (target vector, loop count), then assembles
// coefficient * k^loops * g(n-1, target) from the table. Integer bucket
// coefficients fit int64 with orders of magnitude to spare: multiplicity,
// attachment factor, and term count are each bounded well below 2^21.
IntPolynomial accumulate(int n, const EdgeVector& a, const MemoTable& lookup,
                         int protruding_filter) {
  const int m = n - 1;
  std::map<std::pair<EdgeVector, int>, std::int64_t> buckets;
  for (const BlockTerm& term : block_terms()) {
    if (protruding_filter >= 0 && term.protruding != protruding_filter) {
      continue;
    }
    const EdgeVector b = shifted(a, term.delta);
    if (!is_valid(b, m)) continue;
    const std::int64_t factor = combinatorial_factor(term.created, b, m);
    if (factor == 0) continue;
    buckets[{b, term.loops}] += term.multiplicity * factor;
  }
  IntPolynomial result;
  for (const auto& [bucket, coefficient] : buckets) {
    const auto& [b, loops] = bucket;
    const IntPolynomial* lower = lookup.find(MemoKey{m, b});
    if (lower == nullptr) {
      throw std::logic_error("memo entry missing for " + describe(m, b) +
                             " while expanding " + describe(n, a));
    }
    result.add_scaled_shifted(*lower, mpz_class(coefficient), loops);
  }
  return result;
}

IntPolynomial contribution(int n, const EdgeVector& a,
                           const MemoTable& lookup, int protruding_filter) {
  require_valid(n, a);
  if (n < 2) {
    throw std::invalid_argument(
        "collapse terms apply to order >= 2, got order " + std::to_string(n));
  }
  return accumulate(n, a, lookup, protruding_filter);
}

std::string cache_file_name(const MemoKey& key) {
  std::ostringstream os;
  os << "g_" << key.n << "_" << key.a.a12 << "_" << key.a.a13 << "_"
     << key.a.a23 << ".txt";
  return os.str();
}

bool parse_cache_name(const std::string& name, MemoKey* key) {
  int n = 0;
  int a12 = 0;
  int a13 = 0;
  int a23 = 0;
  int consumed = 0;
  if (std::sscanf(name.c_str(), "g_%d_%d_%d_%d.txt%n", &n, &a12, &a13, &a23,
                  &consumed) != 4) {
    return false;
  }
  if (static_cast<std::size_t>(consumed) != name.size()) return false;
  if (n < 0 || a12 < 0 || a13 < 0 || a23 < 0) return false;
  *key = MemoKey{n, EdgeVector{a12, a13, a23}};
  return true;
}

bool is_decimal_integer(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

[[noreturn]] void cache_parse_error(const std::filesystem::path& path,
                                    const std::string& detail) {
  throw CacheError("cache file " + path.string() + ": " + detail);
}

IntPolynomial read_cache_file(const std::filesystem::path& path,
                              const MemoKey& name_key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) cache_parse_error(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line)) cache_parse_error(path, "missing header line");
  std::istringstream header(line);
  int n = 0;
  int a12 = 0;
  int a13 = 0;
  int a23 = 0;
  int degree = 0;
  std::string extra;
  if (!(header >> n >> a12 >> a13 >> a23 >> degree) || (header >> extra)) {
    cache_parse_error(path, "header is not 'n a12 a13 a23 degree'");
  }
  const MemoKey key{n, EdgeVector{a12, a13, a23}};
  if (!(key == name_key)) {
    cache_parse_error(path, "header key does not match file name");
  }
  if (n < 1 || !is_valid(key.a, n)) {
    cache_parse_error(path, "header key is not a valid class");
  }
  if (degree < 0) cache_parse_error(path, "negative degree");
  std::vector<mpz_class> coeffs;
  coeffs.reserve(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) {
    if (!std::getline(in, line)) {
      cache_parse_error(path, "expected " + std::to_string(degree + 1) +
                                  " coefficient lines, found " +
                                  std::to_string(i));
    }
    if (!is_decimal_integer(line)) {
      cache_parse_error(path,
                        "coefficient line " + std::to_string(i + 1) +
                            " is not a decimal integer");
    }
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), line.c_str(), 10) != 0) {
      cache_parse_error(path, "coefficient line " + std::to_string(i + 1) +
                                  " does not parse");
    }
    coeffs.push_back(std::move(c));
  }
  if (std::getline(in, line)) {
    cache_parse_error(path, "trailing content after coefficients");
  }
  if (degree > 0 && coeffs.back() == 0) {
    cache_parse_error(path, "leading coefficient is zero");
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

const IntPolynomial* MemoTable::find(const MemoKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const IntPolynomial& MemoTable::at(const MemoKey& key) const {
  const IntPolynomial* value = find(key);
  if (value == nullptr) {
    throw std::out_of_range("no memo entry for " + describe(key.n, key.a));
  }
  return *value;
}

const IntPolynomial& MemoTable::insert(const MemoKey& key,
                                       IntPolynomial value) {
  auto [it, inserted] = entries_.try_emplace(key, std::move(value));
  return it->second;
}

IntPolynomial base_case(const EdgeVector& a) {
  require_valid(1, a);
  if (a == EdgeVector{0, 0, 0}) {
    return IntPolynomial({0, 2, 2});
  }
  if (a == EdgeVector{2, 0, 0} || a == EdgeVector{0, 0, 2}) {
    return IntPolynomial({0, 4, 3, 1});
  }
  if (a == EdgeVector{0, 2, 0}) {
    return IntPolynomial({0, 6, 2});
  }
  return IntPolynomial({0, 16, 14, 2});  // (1,1,1)
}

IntPolynomial contrib_cases_1_4(int n, const EdgeVector& a,
                                const MemoTable& lookup) {
  return contribution(n, a, lookup, 0);
}

IntPolynomial contrib_cases_5_12(int n, const EdgeVector& a,
                                 const MemoTable& lookup) {
  return contribution(n, a, lookup, 2);
}

IntPolynomial contrib_cases_13_16(int n, const EdgeVector& a,
                                  const MemoTable& lookup) {
  return contribution(n, a, lookup, 4);
}

IntPolynomial contrib_case_17(int n, const EdgeVector& a,
                              const MemoTable& lookup) {
  return contribution(n, a, lookup, 6);
}

std::vector<EdgeVector> dependencies(int n, const EdgeVector& a) {
  require_valid(n, a);
  if (n == 1) return {};
  const int m = n - 1;
  std::set<EdgeVector> targets;
  for (const BlockTerm& term : block_terms()) {
    const EdgeVector b = shifted(a, term.delta);
    if (!is_valid(b, m)) continue;
    if (targets.contains(b)) continue;
    if (combinatorial_factor(term.created, b, m) == 0) continue;
    targets.insert(b);
  }
  return std::vector<EdgeVector>(targets.begin(), targets.end());
}

const IntPolynomial& g(int n, const EdgeVector& a, MemoTable& memo) {
  require_valid(n, a);
  const MemoKey root{n, a};
  std::vector<MemoKey> stack;
  if (!memo.contains(root)) stack.push_back(root);
  while (!stack.empty()) {
    const MemoKey key = stack.back();
    if (memo.contains(key)) {
      stack.pop_back();
      continue;
    }
    if (key.n == 1) {
      memo.insert(key, base_case(key.a));
      memo.note_computed(1);
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const EdgeVector& b : dependencies(key.n, key.a)) {
      const MemoKey dep{key.n - 1, b};
      if (!memo.contains(dep)) {
        ready = false;
        stack.push_back(dep);
      }
    }
    if (ready) {
      memo.insert(key, accumulate(key.n, key.a, memo, -1));
      memo.note_computed(1);
      stack.pop_back();
    }
  }
  return memo.at(root);
}

const IntPolynomial& g_parallel(int n, const EdgeVector& a, MemoTable& memo,
                                int threads) {
  require_valid(n, a);
  const MemoKey root{n, a};
  if (const IntPolynomial* hit = memo.find(root)) return *hit;

  // Reachability pass: the exact set of missing keys per order, walking
  // from the root down. Keys already memoized stop the walk.
  std::vector<std::vector<MemoKey>> pending(static_cast<std::size_t>(n) + 1);
  std::set<EdgeVector> need{a};
  for (int order = n; order >= 1; --order) {
    std::set<EdgeVector> lower;
    for (const EdgeVector& v : need) {
      if (memo.contains(MemoKey{order, v})) continue;
      pending[static_cast<std::size_t>(order)].push_back(MemoKey{order, v});
      if (order > 1) {
        for (const EdgeVector& b : dependencies(order, v)) lower.insert(b);
      }
    }
    need = std::move(lower);
  }

  // Level fill, lowest order first. Entries within a level only read the
  // completed level below, so they evaluate independently; inserting them
  // in level order keeps results independent of the thread count.
  const int nthreads = resolve_threads(threads);
  for (int order = 1; order <= n; ++order) {
    const std::vector<MemoKey>& level =
        pending[static_cast<std::size_t>(order)];
    if (level.empty()) continue;
    std::vector<IntPolynomial> values(level.size());
    const std::int64_t count = static_cast<std::int64_t>(level.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
      const MemoKey& key = level[static_cast<std::size_t>(i)];
      values[static_cast<std::size_t>(i)] =
          key.n == 1 ? base_case(key.a) : accumulate(key.n, key.a, memo, -1);
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      memo.insert(level[i], std::move(values[i]));
    }
    memo.note_computed(level.size());
  }
  (void)nthreads;
  return memo.at(root);
}

IntPolynomial second_moment_polynomial(int n, MemoTable& memo) {
  const IntPolynomial& closed = g(n, EdgeVector{0, 0, 0}, memo);
  return poly_scale(closed, double_factorial(2 * n - 1));
}

std::size_t save_memo(const MemoTable& memo,
                      const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw CacheError("cannot create cache directory " + directory.string() +
                     ": " + ec.message());
  }
  std::vector<MemoKey> keys;
  keys.reserve(memo.size());
  for (const auto& [key, value] : memo.entries()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](const MemoKey& x, const MemoKey& y) {
    return std::tie(x.n, x.a) < std::tie(y.n, y.a);
  });
  std::size_t written = 0;
  for (const MemoKey& key : keys) {
    const std::string name = cache_file_name(key);
    const std::filesystem::path target = directory / name;
    if (std::filesystem::exists(target)) continue;
    const std::filesystem::path temp = directory / (name + ".tmp");
    {
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw CacheError("cannot open cache file " + temp.string() +
                         " for writing");
      }
      const IntPolynomial& value = memo.at(key);
      out << key.n << ' ' << key.a.a12 << ' ' << key.a.a13 << ' '
          << key.a.a23 << ' ' << value.degree() << '\n';
      for (int i = 0; i <= value.degree(); ++i) {
        out << to_decimal(value.coeff(i)) << '\n';
      }
      out.flush();
      if (!out) {
        throw CacheError("write failed for cache file " + temp.string());
      }
    }
    std::filesystem::rename(temp, target, ec);
    if (ec) {
      throw CacheError("cannot finalize cache file " + target.string() +
                       ": " + ec.message());
    }
    ++written;
  }
  return written;
}

MemoTable load_memo(const std::filesystem::path& directory) {
  MemoTable table;
  std::error_code ec;
  if (!std::filesystem::exists(directory, ec) || ec) return table;
  std::vector<std::pair<MemoKey, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    MemoKey key;
    if (!parse_cache_name(entry.path().filename().string(), &key)) continue;
    files.emplace_back(key, entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& x, const auto& y) {
              return std::tie(x.first.n, x.first.a) <
                     std::tie(y.first.n, y.first.a);
            });
  for (const auto& [key, path] : files) {
    table.insert(key, read_cache_file(path, key));
  }
  return table;
}

}  // namespace moments
