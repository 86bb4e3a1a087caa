#pragma once

#include <span>
#include <vector>

#include "luinv/combinatorics.hpp"
#include "luinv/exterior_basis.hpp"
#include "luinv/subspace_builder.hpp"

namespace luinv {

template <class Real>
struct BasicInvariantValue {
  Real value{0};
  Partition lambda;
  int k = 0;
  int m = 0;
};

using InvariantValue = BasicInvariantValue<double>;
using ExactInvariantValue = BasicInvariantValue<Rational>;

template <class Amp>
using InvariantOf = BasicInvariantValue<RealOf<Amp>>;

/// sum over orbit members w of |<w, psi^m>|^2 * inv_norm_sq. A basis with
/// fewer modes than psi is re-expanded first. On the float path the
/// THREADS environment variable enables parallel evaluation; the sum is
/// always taken in member order.
template <class Amp>
InvariantOf<Amp> eval_projection_invariant(const SubspaceBasis& basis, const BasicFermionState<Amp>& psi);

/// Closed form of the (2,2) invariant for two fermions. The four-index
/// block uses |psi_ij psi_lk + 2 psi_il psi_jk + psi_ik psi_jl|^2 / 3.
template <class Amp>
InvariantOf<Amp> closed_form_I22(const BasicFermionState<Amp>& psi);

/// sum_{i<j<k<l} (2/3) |psi_ij psi_kl + psi_ik psi_lj + psi_il psi_jk|^2
template <class Amp>
InvariantOf<Amp> closed_form_I1111(const BasicFermionState<Amp>& psi);

/// (1/5760) sum over 6-subsets of |48 * sum over the 15 perfect matchings|^2.
template <class Amp>
InvariantOf<Amp> closed_form_I16(const BasicFermionState<Amp>& psi);

/// r = 1 lift of the SL(base_n) invariant: for each base_n-subset S,
/// |<w_S, psi^m>|^2 / |w_S|^2 with w_S the antisymmetrization of one
/// product of m blocks over S. Zero when k is odd and m >= 2 (w_S = 0).
template <class Amp>
InvariantOf<Amp> antisymmetric_family(const BasicFermionState<Amp>& psi, int base_n);

/// (norm^2)^m - value: the invariant of the orthogonal complement.
template <class Amp>
InvariantOf<Amp> complement(const InvariantOf<Amp>& value, const BasicFermionState<Amp>& psi);

/// (norm^2)^3 - I33 - I16 for two fermions: the remaining component.
template <class Amp>
InvariantOf<Amp> derived_I2211(const InvariantOf<Amp>& i33, const InvariantOf<Amp>& i16, const BasicFermionState<Amp>& psi);

template <class Real>
struct ConstraintCheck {
  bool ok = false;
  Real residual{0};
};

/// |sum values - (norm^2)^m|; ok within 1e-10 (float) or exactly (rational).
template <class Amp>
ConstraintCheck<RealOf<Amp>> sum_constraint_check(std::span<const InvariantOf<Amp>> values,
                                                  const BasicFermionState<Amp>& psi);

/// (norm^2)^m
template <class Amp>
RealOf<Amp> power_norm(const BasicFermionState<Amp>& psi, int m);

/// Set partitions of {0..size-1} into blocks of size k (each block sorted,
/// blocks ordered by first element) with the sign of the concatenation.
struct BlockPartition {
  std::vector<std::vector<int>> blocks;
  int sign = 1;
};
std::vector<BlockPartition> block_partitions(int size, int k);

}  // namespace luinv
