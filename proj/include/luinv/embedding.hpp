#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "luinv/exterior_basis.hpp"
#include "luinv/invariants.hpp"

namespace luinv {

/// State of k distinguishable subsystems with dimensions n_1..n_k.
/// Local labels are 1-based.
template <class Amp>
class BasicDistinguishableState {
 public:
  using Map = std::map<std::vector<int>, Amp>;

  BasicDistinguishableState() = default;
  explicit BasicDistinguishableState(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  const Map& amplitudes() const { return amps_; }

  Amp amplitude(const std::vector<int>& labels) const;
  void set(const std::vector<int>& labels, Amp value);

  friend bool operator==(const BasicDistinguishableState&, const BasicDistinguishableState&) = default;

 private:
  void check(const std::vector<int>& labels) const;

  std::vector<int> dims_;
  Map amps_;
};

using DistinguishableState = BasicDistinguishableState<std::complex<double>>;
using ExactDistinguishableState = BasicDistinguishableState<ComplexRational>;

/// e_{i1} x ... x e_{ik} -> e_{o1+i1} ^ ... ^ e_{ok+ik} with o_j = n_1+...+n_{j-1}.
template <class Amp>
BasicFermionState<Amp> embed_distinguishable(const BasicDistinguishableState<Amp>& phi);

/// Restriction of I_(2,2,2) to three qubits, evaluated on psi_{ijk}.
template <class Amp>
InvariantOf<Amp> eval_three_qubit_I222(const BasicDistinguishableState<Amp>& phi);

template <class Amp>
RealOf<Amp> state_norm_sq(const BasicDistinguishableState<Amp>& phi);

DistinguishableState to_numeric(const ExactDistinguishableState& phi);
DistinguishableState normalized(const DistinguishableState& phi);

/// Applies U_1 x ... x U_k.
DistinguishableState apply_local(const std::vector<Eigen::MatrixXcd>& locals, const DistinguishableState& phi);

/// Block-diagonal U_1 + ... + U_k acting on the embedded modes.
Eigen::MatrixXcd direct_sum(const std::vector<Eigen::MatrixXcd>& locals);

/// Swaps parties a and b (0-based).
template <class Amp>
BasicDistinguishableState<Amp> swap_parties(const BasicDistinguishableState<Amp>& phi, int a, int b);

DistinguishableState random_distinguishable(const std::vector<int>& dims, std::uint64_t seed);

/// 4 * sum over 2x2 minors |phi_ac phi_bd - phi_ad phi_bc|^2 for two parties.
template <class Amp>
RealOf<Amp> concurrence_sq(const BasicDistinguishableState<Amp>& phi);

struct DistinguishableStateFile {
  DistinguishableState state;
  std::optional<ExactDistinguishableState> exact;
};

enum class LabelBase { automatic, zero, one };

/// Reads `distinguishable dims=<n1>,<n2>,...` then `<i1> ... <ik><TAB><re> <im>`
/// lines. With `automatic`, all-qubit files use 0/1 labels unless some
/// label is 2; everything else is 1-based.
DistinguishableStateFile read_distinguishable_state(std::istream& in, LabelBase base = LabelBase::automatic);

}  // namespace luinv
