#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "luinv/combinatorics.hpp"
#include "luinv/symmetric_algebra.hpp"

namespace luinv {

/// One orthogonal generator at a dominant weight together with its S_n
/// images, one per distinct weight in the orbit.
struct OrthoFamily {
  SymVector representative;
  Rational inv_norm_sq;
  int pattern_size = 0;  // distinct indices used
  WeightVector weight;   // dominant, length = basis n
  std::vector<SymVector> orbit_members;

  std::uint64_t orbit_size() const { return orbit_members.size(); }
};

struct SubspaceBasis {
  int k = 0;
  int m = 0;
  int n = 0;
  Partition lambda;
  std::vector<OrthoFamily> families;
  std::uint64_t total_dimension = 0;
};

struct ClosureOptions {
  /// Breadth-first levels before giving up; 0 means k*m.
  int max_rounds = 0;
  /// Skip coefficient vectors whose canonical orbit form was already seen.
  bool dedup_by_canonical_form = true;
};

struct ClosureStats {
  int rounds = 0;
  std::size_t coefficient_vectors = 0;  // nonzero s-coefficients examined
  std::size_t contributing = 0;         // vectors that enlarged the span
  std::uint64_t spanned = 0;
  std::uint64_t target = 0;
};

struct ClosureResult {
  /// Stabilizer images of every contributing vector, primitive, at dominant
  /// weights. Together with their S_n orbits they span W.
  std::vector<SymVector> generators;
  /// The contributing vectors themselves, in discovery order.
  std::vector<SymVector> types;
  ClosureStats stats;
};

/// Closure of e_{1..k}^m under transvection coefficients and S_n, certified
/// against weyl_dimension((m^k), n). Throws "closure did not certify" when the
/// queue empties or the level cap is hit first.
ClosureResult good_set_closure(int k, int m, int n, const ClosureOptions& options = {});

/// Exact Gram-Schmidt per dominant weight; families are expanded at n.
/// Generators are made primitive and deduplicated, then processed by term
/// count and, for equal counts, by monomial lists in descending order.
SubspaceBasis gram_schmidt_by_weight(const std::vector<SymVector>& gens, int k, int m, int n);

/// Same families re-expanded at another n. Families needing more than n
/// distinct indices are dropped.
SubspaceBasis expand_orbits(const SubspaceBasis& basis, int n);

/// Closure at n = k*m, Gram-Schmidt, expansion at n. Throws unless the
/// dimension equals weyl_dimension((m^k), n).
SubspaceBasis build_highest_weight_basis(int k, int m, int n, const ClosureOptions& options = {});

/// S_n images of `rep` (dominant weight `weight`), one per distinct weight,
/// ordered by weight compared from the last entry.
std::vector<SymVector> orbit_members(const SymVector& rep, const WeightVector& weight);

void write_basis(std::ostream& out, const SubspaceBasis& basis);
/// Validates each inv_norm_sq against the representative and re-expands
/// the orbits. Malformed input throws ParseError with a line number.
SubspaceBasis read_basis(std::istream& in);

/// One row per family: weight, representative, orbit size, inverse norm.
void print_family_table(std::ostream& out, const SubspaceBasis& basis);

}  // namespace luinv
