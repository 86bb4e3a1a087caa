#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace luinv {

/// Non-increasing list of nonnegative parts. Trailing zeros are kept as
/// given but ignored by comparisons.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  /// (m, m, ..., m) with `count` parts.
  static Partition rectangle(int part, int count);

  const std::vector<int>& parts() const { return parts_; }
  /// Parts with trailing zeros removed.
  std::vector<int> stripped() const;
  int length() const;  // number of nonzero parts
  int size() const;    // sum of parts
  std::string to_string() const;  // "3,3" (stripped)

  friend bool operator==(const Partition& a, const Partition& b) { return a.stripped() == b.stripped(); }

 private:
  std::vector<int> parts_;
};

/// Torus weight (r_1, ..., r_n). Length is the ambient dimension and is
/// never stripped.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<int> entries) : entries_(std::move(entries)) {}
  WeightVector(std::initializer_list<int> entries) : entries_(entries) {}

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  /// True when entries are non-increasing.
  bool is_dominant() const;
  std::string to_string() const;

  friend auto operator<=>(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<int> entries_;
};

enum class Dominance { less, equal, greater, incomparable };

std::string to_string(Dominance d);

/// (sum ks)! / prod(ks_i!). Throws on 64-bit overflow.
std::uint64_t multinomial(std::span<const int> ks);
std::uint64_t multinomial(std::initializer_list<int> ks);

std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// Dimension of the irreducible U(n) representation with highest weight
/// `lambda`, by the product formula over pairs i < j.
std::uint64_t weyl_dimension(const Partition& lambda, int n);

/// dim S^m(wedge^k C^n) = binomial(binomial(n, k) + m - 1, m).
std::uint64_t sym_power_dimension(int n, int k, int m);

/// lambda >= mu iff lambda - mu has zero sum and nonnegative prefix sums.
Dominance dominance_compare(const WeightVector& lambda, const WeightVector& mu);

/// Sorted k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// Streaming form of k_subsets; `visit` receives each subset in order.
void for_each_k_subset(int n, int k, const std::function<void(std::span<const int>)>& visit);

/// Sign of the permutation that sorts `seq` (entries must be distinct).
int permutation_sign(std::span<const int> seq);

/// Number of distinct rearrangements of the multiset `entries`.
std::uint64_t distinct_arrangements(std::span<const int> entries);

}  // namespace luinv
