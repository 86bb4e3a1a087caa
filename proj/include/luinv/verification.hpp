#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "luinv/exterior_basis.hpp"
#include "luinv/random.hpp"
#include "luinv/rational.hpp"
#include "luinv/subspace_builder.hpp"
#include "luinv/symmetric_algebra.hpp"

namespace luinv {

struct TrialReport {
  int trials = 0;
  double max_deviation = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;

  /// `PASS|FAIL max_dev=<x> trials=<t> seed=<s>`
  std::string summary_line() const;
};

/// QR of a complex Gaussian matrix with the phases of diag(R) moved into Q.
Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed);
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

/// One Haar unitary per dimension, drawn from a single stream.
std::vector<Eigen::MatrixXcd> haar_local_unitaries(const std::vector<int>& dims, std::uint64_t seed);

using FermionInvariant = std::function<double(const FermionState&)>;

/// max over trials of |I(U psi) - I(psi)| for Haar U with seed + trial.
TrialReport invariance_test(const FermionInvariant& invariant, const FermionState& psi, int trials, double tol,
                            std::uint64_t seed);

/// psi^m by summing every ordered m-tuple of amplitudes.
ComplexSymVector expand_power(const FermionState& psi, int m);

/// Samples (g e_{1..k})^m for Haar g, checks each lies in the span of the
/// basis (residual <= tol) and that the samples have numeric rank equal to
/// the basis dimension.
TrialReport numeric_span_crosscheck(const SubspaceBasis& basis, int samples, std::uint64_t seed, double tol = 1e-8);

/// Numeric rank of the sampled span alone, without reference to a basis.
std::size_t sampled_rank(int k, int m, int n, int samples, std::uint64_t seed);

/// Expected orthogonal families at one dominant weight.
struct ReferenceRow {
  std::vector<int> weight;  // nonzero entries
  std::vector<Rational> inv_norms;
  /// Vectors of this weight type at n (families times orbit size).
  std::function<std::uint64_t(int)> count;
  std::string count_formula;
};

/// Known rows for (k, m) in {(2,2), (2,3), (3,2)}; empty otherwise.
std::vector<ReferenceRow> reference_rows(int k, int m);

/// Compares a basis with reference_rows: exact inverse-norm multisets per
/// weight and vector counts at basis.n. Mismatches are described in `detail`.
TrialReport compare_with_reference(const SubspaceBasis& basis);

}  // namespace luinv
