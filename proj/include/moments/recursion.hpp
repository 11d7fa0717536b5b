// Memoized evaluation of the class polynomials g(n, a) through the
// column-collapse recursion, with a one-file-per-key on-disk cache.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "moments/edge_vectors.hpp"
#include "moments/polynomial.hpp"

namespace moments {

// Cache I/O failure: unreadable directory, unwritable file, or a cache file
// whose content does not parse. The message names the path involved.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MemoKey {
  int n = 0;
  EdgeVector a;

  bool operator==(const MemoKey&) const = default;
  std::uint32_t packed() const {
    return static_cast<std::uint32_t>(n) |
           (static_cast<std::uint32_t>(a.a12) << 8) |
           (static_cast<std::uint32_t>(a.a13) << 16) |
           (static_cast<std::uint32_t>(a.a23) << 24);
  }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return std::hash<std::uint32_t>{}(k.packed());
  }
};

// Insertion-only map from (n, a) to the exact polynomial. A key's value
// never changes once present; concurrent recomputation of equal keys is
// harmless because the recursion is pure.
class MemoTable {
 public:
  const IntPolynomial* find(const MemoKey& key) const;
  const IntPolynomial& at(const MemoKey& key) const;
  // Keeps the existing entry when the key is already present.
  const IntPolynomial& insert(const MemoKey& key, IntPolynomial value);
  bool contains(const MemoKey& key) const { return find(key) != nullptr; }
  std::size_t size() const { return entries_.size(); }

  // Keys actually computed by the recursion in this process, as opposed to
  // loaded from disk; the cache round-trip check watches this stay zero.
  std::uint64_t computed_count() const { return computed_; }
  void note_computed(std::uint64_t delta) { computed_ += delta; }

  const std::unordered_map<MemoKey, IntPolynomial, MemoKeyHash>& entries()
      const {
    return entries_;
  }

 private:
  std::unordered_map<MemoKey, IntPolynomial, MemoKeyHash> entries_;
  std::uint64_t computed_ = 0;
};

// The five order-1 polynomials. Rejects vectors invalid at n = 1.
IntPolynomial base_case(const EdgeVector& a);

// Contribution groups by number of protruding red edges: 0 for the closed
// layouts, 2, 4, and 6. Order-(n-1) values must already be in the table.
IntPolynomial contrib_cases_1_4(int n, const EdgeVector& a,
                                const MemoTable& lookup);
IntPolynomial contrib_cases_5_12(int n, const EdgeVector& a,
                                 const MemoTable& lookup);
IntPolynomial contrib_cases_13_16(int n, const EdgeVector& a,
                                  const MemoTable& lookup);
IntPolynomial contrib_case_17(int n, const EdgeVector& a,
                              const MemoTable& lookup);

// Distinct valid order-(n-1) vectors with a nonzero coefficient in the
// expansion of (n, a); empty for n = 1. Both evaluation strategies resolve
// exactly this set, so they compute identical key sets.
std::vector<EdgeVector> dependencies(int n, const EdgeVector& a);

// Serial reference: lazy depth-first memoized evaluation.
const IntPolynomial& g(int n, const EdgeVector& a, MemoTable& memo);

// Level-synchronous evaluation: a reachability pass collects the needed
// keys per order, then each order is filled in parallel from the order
// below. Bit-identical to the serial path for any thread count.
const IntPolynomial& g_parallel(int n, const EdgeVector& a, MemoTable& memo,
                                int threads = 0);

// (2n-1)!! * g(n, (0,0,0)): the second-moment polynomial, degree exactly 2n.
IntPolynomial second_moment_polynomial(int n, MemoTable& memo);

// One file per key, named g_<n>_<a12>_<a13>_<a23>.txt: a header line
// "n a12 a13 a23 degree" then the degree+1 coefficients of k^0..k^degree in
// decimal, one per line, LF endings. Writes are temp-file-then-rename and
// keys whose file already exists are skipped. Returns entries written.
std::size_t save_memo(const MemoTable& memo,
                      const std::filesystem::path& directory);

// Loads every cache file in the directory; malformed content raises
// CacheError naming the offending file. A missing directory loads empty.
MemoTable load_memo(const std::filesystem::path& directory);

}  // namespace moments
