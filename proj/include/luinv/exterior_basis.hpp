#pragma once

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "luinv/rational.hpp"

namespace luinv {

constexpr int kMaxModes = 64;

/// Sorted k-subset of [n], stored as a bitmask (bit i-1 is index i).
/// Ordered by size, then lexicographically by the sorted tuple.
class FermionIndex {
 public:
  constexpr FermionIndex() = default;
  static constexpr FermionIndex from_bits(std::uint64_t bits) {
    FermionIndex f;
    f.bits_ = bits;
    return f;
  }
  /// Throws unless `indices` is strictly increasing within 1..64.
  static FermionIndex from_sorted(std::span<const int> indices);
  static FermionIndex from_sorted(std::initializer_list<int> indices) {
    return from_sorted(std::span<const int>(indices.begin(), indices.size()));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return i >= 1 && i <= kMaxModes && ((bits_ >> (i - 1)) & 1U); }
  /// Largest index present, 0 when empty.
  constexpr int max_index() const { return 64 - std::countl_zero(bits_); }
  std::vector<int> indices() const;
  /// "1,2,3"
  std::string to_string() const;
  /// "123" when every index is a single digit, otherwise "{1,10}".
  std::string label() const;

  friend constexpr bool operator==(FermionIndex a, FermionIndex b) { return a.bits_ == b.bits_; }
  friend constexpr std::strong_ordering operator<=>(FermionIndex a, FermionIndex b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    const std::uint64_t low = diff & (~diff + 1);
    return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// sign is +1 or -1, or 0 when the input repeated an entry.
struct SignedIndex {
  FermionIndex index;
  int sign = 0;
  bool is_zero() const { return sign == 0; }
};

/// Sorts `seq`, returning the sign of the sorting permutation.
SignedIndex canonicalize_index(std::span<const int> seq);
inline SignedIndex canonicalize_index(std::initializer_list<int> seq) {
  return canonicalize_index(std::span<const int>(seq.begin(), seq.size()));
}

/// Sparse k-fermion state over n modes.
template <class Amp>
class BasicFermionState {
 public:
  using Amplitude = Amp;
  using Map = std::map<FermionIndex, Amp>;

  BasicFermionState() = default;
  BasicFermionState(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  const Map& amplitudes() const { return amps_; }
  bool empty() const { return amps_.empty(); }

  /// Zero when absent.
  Amp amplitude(FermionIndex idx) const;
  /// sign * amplitude of the sorted subset; zero for repeated entries.
  Amp amplitude(std::initializer_list<int> seq) const;
  Amp amplitude(std::span<const int> seq) const;

  void set(FermionIndex idx, Amp value);
  void add(FermionIndex idx, const Amp& value);

  /// Same amplitudes over a larger (or equal) mode count.
  BasicFermionState with_modes(int n) const;

  friend bool operator==(const BasicFermionState&, const BasicFermionState&) = default;

 private:
  void check(FermionIndex idx) const;

  int n_ = 0;
  int k_ = 0;
  Map amps_;
};

using FermionState = BasicFermionState<std::complex<double>>;
using ExactFermionState = BasicFermionState<ComplexRational>;

template <class Amp>
RealOf<Amp> state_norm_sq(const BasicFermionState<Amp>& psi);

FermionState to_numeric(const ExactFermionState& psi);

/// psi / sqrt(norm^2). Throws on the zero state.
FermionState normalized(const FermionState& psi);

/// (U psi)_J = sum_I det(U[J, I]) psi_I.
FermionState lift_unitary(const Eigen::MatrixXcd& u, const FermionState& psi);

/// Determinant of the k x k submatrix with the given rows and columns, by
/// Laplace expansion along the first row.
std::complex<double> minor_det(const Eigen::MatrixXcd& u, std::span<const int> rows, std::span<const int> cols);

/// Complex Gaussian amplitudes on every k-subset, normalized.
FermionState random_state(int n, int k, std::uint64_t seed);

/// A parsed state file. `exact` is present when every amplitude token is
/// an integer or p/q literal.
struct FermionStateFile {
  FermionState state;
  std::optional<ExactFermionState> exact;
};

/// Reads `fermion n=<n> k=<k>` followed by `i1,...,ik<TAB>re im` lines.
/// Errors carry the offending line number.
FermionStateFile read_fermion_state(std::istream& in);
void write_fermion_state(std::ostream& out, const FermionState& psi);
/// Exact amplitudes as p/q tokens.
void write_fermion_state(std::ostream& out, const ExactFermionState& psi);

/// Parses one amplitude component: a rational literal or a decimal.
/// Returns the double value and, when the token is rational, the exact one.
std::pair<double, std::optional<Rational>> parse_real_token(const std::string& token);

/// %.17g keeps the round trip exact.
std::string format_double(double x);

}  // namespace luinv
