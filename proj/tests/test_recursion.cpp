#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "moments/closed_forms.hpp"
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

// Self-cleaning unique temporary directory.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    char buf[] = "/tmp/memo-test-XXXXXX";
    REQUIRE(mkdtemp(buf) != nullptr);
    path = buf;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("order-1 polynomials") {
  CHECK(moments::base_case(EdgeVector{0, 0, 0}) == make({0, 2, 2}));
  CHECK(moments::base_case(EdgeVector{2, 0, 0}) == make({0, 4, 3, 1}));
  CHECK(moments::base_case(EdgeVector{0, 0, 2}) == make({0, 4, 3, 1}));
  CHECK(moments::base_case(EdgeVector{0, 2, 0}) == make({0, 6, 2}));
  CHECK(moments::base_case(EdgeVector{1, 1, 1}) == make({0, 16, 14, 2}));
  CHECK_THROWS_AS(moments::base_case(EdgeVector{1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(moments::base_case(EdgeVector{2, 2, 0}),
                  std::invalid_argument);
}

TEST_CASE("input validation") {
  MemoTable memo;
  CHECK_THROWS_AS(moments::g(2, EdgeVector{1, 0, 0}, memo),
                  std::invalid_argument);
  CHECK_THROWS_AS(moments::g(0, EdgeVector{0, 0, 0}, memo),
                  std::invalid_argument);
  CHECK_THROWS_AS(moments::g(1, EdgeVector{4, 0, 0}, memo),
                  std::invalid_argument);
}

TEST_CASE("order-2 whole-graph polynomial") {
  MemoTable memo;
  const IntPolynomial& p = moments::g(2, EdgeVector{0, 0, 0}, memo);
  CHECK(p == make({0, 176, 184, 64, 8}));
  CHECK(moments::poly_eval_exact(p, 1) == 432);
}

TEST_CASE("recursion equals direct enumeration per class") {
  MemoTable memo;
  for (int n = 1; n <= 2; ++n) {
    const auto classes = moments::enumerate_classes(n);
    for (const auto& [a, enumerated] : classes) {
      CHECK(moments::g(n, a, memo) == enumerated);
    }
    // Every valid vector appears on both sides.
    CHECK(classes.size() == moments::enumerate_valid(n).size());
  }
  CHECK(moments::g(3, EdgeVector{0, 0, 0}, memo) ==
        moments::enumerate_same_row(3));
}

TEST_CASE("evaluation at one counts the class") {
  MemoTable memo;
  moments::g(6, EdgeVector{0, 0, 0}, memo);
  CHECK(memo.size() == 75);
  for (const auto& [key, poly] : memo.entries()) {
    CHECK(moments::poly_eval_exact(poly, 1) ==
          moments::graph_count(key.n, key.a));
  }
}

TEST_CASE("row 1-3 relabeling invariance") {
  MemoTable memo;
  moments::g(6, EdgeVector{0, 0, 0}, memo);
  std::vector<MemoKey> keys;
  for (const auto& [key, poly] : memo.entries()) keys.push_back(key);
  for (const MemoKey& key : keys) {
    const EdgeVector mirrored = moments::row13_mirror(key.a);
    CHECK(moments::g(key.n, mirrored, memo) == memo.at(key));
  }
}

TEST_CASE("class polynomials have no constant term and no negatives") {
  MemoTable memo;
  moments::g(6, EdgeVector{2, 2, 2}, memo);
  moments::g(5, EdgeVector{0, 4, 0}, memo);
  for (const auto& [key, poly] : memo.entries()) {
    REQUIRE_FALSE(poly.is_zero());
    CHECK(poly.coeff(0) == 0);
    for (const mpz_class& c : poly.coeffs()) CHECK(c >= 0);
    // Two matchings on 6n vertices form at most 3n cycles; the closed
    // whole-graph class peaks at 2n.
    CHECK(poly.degree() <= 3 * key.n);
    CHECK(poly.degree() >= 1);
    if (key.a == EdgeVector{0, 0, 0}) CHECK(poly.degree() == 2 * key.n);
  }
}

TEST_CASE("level-synchronous evaluation matches the serial path") {
  MemoTable serial;
  moments::g(8, EdgeVector{0, 0, 0}, serial);
  for (int threads : {1, 3}) {
    MemoTable parallel;
    moments::g_parallel(8, EdgeVector{0, 0, 0}, parallel, threads);
    REQUIRE(parallel.size() == serial.size());
    for (const auto& [key, poly] : serial.entries()) {
      const IntPolynomial* other = parallel.find(key);
      REQUIRE(other != nullptr);
      CHECK(*other == poly);
    }
  }
}

TEST_CASE("contribution groups sum to the recursion value") {
  MemoTable memo;
  moments::g(3, EdgeVector{2, 2, 2}, memo);
  moments::g(3, EdgeVector{0, 0, 0}, memo);
  moments::g(3, EdgeVector{1, 1, 3}, memo);
  for (const EdgeVector& a :
       {EdgeVector{2, 2, 2}, EdgeVector{0, 0, 0}, EdgeVector{1, 1, 3}}) {
    IntPolynomial total = moments::contrib_cases_1_4(3, a, memo);
    total.add_scaled_shifted(moments::contrib_cases_5_12(3, a, memo), 1, 0);
    total.add_scaled_shifted(moments::contrib_cases_13_16(3, a, memo), 1, 0);
    total.add_scaled_shifted(moments::contrib_case_17(3, a, memo), 1, 0);
    CHECK(total == memo.at(MemoKey{3, a}));
  }
}

TEST_CASE("dependency sets") {
  CHECK(moments::dependencies(1, EdgeVector{0, 0, 0}).empty());
  CHECK(moments::dependencies(1, EdgeVector{1, 1, 1}).empty());

  const auto deps = moments::dependencies(2, EdgeVector{0, 0, 0});
  REQUIRE_FALSE(deps.empty());
  const auto valid = moments::enumerate_valid(1);
  for (const EdgeVector& d : deps) {
    CHECK(std::find(valid.begin(), valid.end(), d) != valid.end());
  }
  CHECK(std::find(deps.begin(), deps.end(), EdgeVector{0, 0, 0}) !=
        deps.end());
  CHECK(std::is_sorted(deps.begin(), deps.end()));
  CHECK(std::adjacent_find(deps.begin(), deps.end()) == deps.end());

  // The lazy evaluation touches exactly the transitive dependency closure.
  MemoTable memo;
  moments::g(2, EdgeVector{0, 0, 0}, memo);
  CHECK(memo.size() == deps.size() + 1);
}

TEST_CASE("memo table semantics") {
  MemoTable memo;
  const MemoKey key{1, EdgeVector{0, 0, 0}};
  CHECK_THROWS_AS(memo.at(key), std::out_of_range);
  CHECK(memo.find(key) == nullptr);
  memo.insert(key, make({0, 2, 2}));
  memo.insert(key, make({99}));
  CHECK(memo.at(key) == make({0, 2, 2}));
  CHECK(memo.size() == 1);
  CHECK(memo.computed_count() == 0);
}

TEST_CASE("second-moment polynomial") {
  MemoTable memo;
  for (int n : {1, 2, 3, 5}) {
    const IntPolynomial p = moments::second_moment_polynomial(n, memo);
    CHECK(p == moments::poly_scale(moments::g(n, EdgeVector{0, 0, 0}, memo),
                                   moments::double_factorial(2 * n - 1)));
    CHECK(p.degree() == 2 * n);
  }
}

TEST_CASE("cache round-trip is exact") {
  TempDir dir;
  MemoTable memo;
  moments::g(4, EdgeVector{0, 0, 0}, memo);
  CHECK(memo.computed_count() == memo.size());

  const std::size_t written = moments::save_memo(memo, dir.path);
  CHECK(written == memo.size());
  CHECK(moments::save_memo(memo, dir.path) == 0);

  const MemoTable loaded = moments::load_memo(dir.path);
  CHECK(loaded.computed_count() == 0);
  REQUIRE(loaded.size() == memo.size());
  for (const auto& [key, poly] : memo.entries()) {
    const IntPolynomial* p = loaded.find(key);
    REQUIRE(p != nullptr);
    CHECK(*p == poly);
  }

  // Extending a loaded table only writes the new keys.
  MemoTable extended = moments::load_memo(dir.path);
  moments::g(5, EdgeVector{0, 0, 0}, extended);
  const std::size_t delta = moments::save_memo(extended, dir.path);
  CHECK(delta == extended.size() - memo.size());
  CHECK(delta == extended.computed_count());
}

TEST_CASE("cache loading is strict about content") {
  TempDir dir;
  MemoTable memo;
  moments::g(2, EdgeVector{0, 0, 0}, memo);
  moments::save_memo(memo, dir.path);

  // Unrelated file names are not cache entries.
  std::ofstream(dir.path / "notes.md") << "scratch\n";
  std::ofstream(dir.path / "g_bogus.txt") << "1 0 0 0 2\n0\n2\n2\n";
  CHECK(moments::load_memo(dir.path).size() == memo.size());

  SUBCASE("truncated file") {
    std::ofstream(dir.path / "g_1_0_0_0.txt") << "1 0 0 0 2\n0\n2\n";
    CHECK_THROWS_WITH_AS(static_cast<void>(moments::load_memo(dir.path)),
                         doctest::Contains("g_1_0_0_0.txt"),
                         moments::CacheError);
  }
  SUBCASE("non-numeric coefficient") {
    std::ofstream(dir.path / "g_1_0_0_0.txt") << "1 0 0 0 2\n0\ntwo\n2\n";
    CHECK_THROWS_AS(static_cast<void>(moments::load_memo(dir.path)),
                    moments::CacheError);
  }
  SUBCASE("header disagrees with the file name") {
    std::ofstream(dir.path / "g_1_0_0_0.txt") << "1 2 0 0 3\n0\n4\n3\n1\n";
    CHECK_THROWS_AS(static_cast<void>(moments::load_memo(dir.path)),
                    moments::CacheError);
  }
  SUBCASE("trailing content") {
    std::ofstream(dir.path / "g_1_0_0_0.txt") << "1 0 0 0 2\n0\n2\n2\n7\n";
    CHECK_THROWS_AS(static_cast<void>(moments::load_memo(dir.path)),
                    moments::CacheError);
  }

  CHECK(moments::load_memo(dir.path / "does-not-exist").size() == 0);
}
