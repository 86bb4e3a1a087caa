#include <doctest.h>

#include <sstream>

#include "luinv/embedding.hpp"
#include "luinv/verification.hpp"
#include "oracles.hpp"

using namespace luinv;

namespace {

FermionIndex fi(std::initializer_list<int> s) { return FermionIndex::from_sorted(s); }

ExactDistinguishableState qubits(std::initializer_list<std::vector<int>> ones) {
  ExactDistinguishableState phi({2, 2, 2});
  for (const auto& l : ones) phi.set(l, {Rational(1), Rational(0)});
  return phi;
}

Rational normalized_I222(const ExactDistinguishableState& phi) {
  const Rational nn = state_norm_sq(phi);
  return eval_three_qubit_I222(phi).value / (nn * nn);
}

const SubspaceBasis& b32() {
  static const SubspaceBasis b = build_highest_weight_basis(3, 2, 6);
  return b;
}

// Dense tensor of a distinguishable state in row-major label order.
Eigen::VectorXcd dense(const DistinguishableState& phi) {
  int total = 1;
  for (int d : phi.dims()) total *= d;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total);
  for (const auto& [labels, a] : phi.amplitudes()) {
    int at = 0;
    for (std::size_t p = 0; p < labels.size(); ++p) at = at * phi.dims()[p] + labels[p] - 1;
    v(at) = a;
  }
  return v;
}

}  // namespace

TEST_SUITE("embedding") {
  TEST_CASE("offsets") {
    const FermionState e = embed_distinguishable(to_numeric(qubits({{1, 1, 1}})));
    CHECK(e.n() == 6);
    CHECK(e.k() == 3);
    CHECK(e.amplitude(fi({1, 3, 5})) == std::complex<double>(1, 0));
    const FermionState g = embed_distinguishable(to_numeric(qubits({{1, 1, 1}, {2, 2, 2}})));
    CHECK(g.amplitude(fi({2, 4, 6})) == std::complex<double>(1, 0));
    CHECK(g.amplitudes().size() == 2);
    DistinguishableState phi({3, 2});
    phi.set({3, 2}, {0.5, 0.5});
    CHECK(embed_distinguishable(phi).amplitude(fi({3, 5})) == std::complex<double>(0.5, 0.5));
    CHECK_THROWS(phi.set({4, 1}, 1.0));
  }

  TEST_CASE("norm is preserved") {
    const DistinguishableState phi = random_distinguishable({2, 3, 2}, 4);
    CHECK(std::abs(state_norm_sq(embed_distinguishable(phi)) - state_norm_sq(phi)) < 1e-14);
  }

  TEST_CASE("three qubit values") {
    CHECK(normalized_I222(qubits({{1, 1, 1}})) == 1);
    CHECK(normalized_I222(qubits({{1, 1, 1}, {2, 2, 2}})) == frac(3, 4));
    CHECK(normalized_I222(qubits({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})) == frac(7, 9));
    CHECK(normalized_I222(qubits({{1, 1, 2}, {1, 2, 1}})) == frac(5, 6));
    CHECK_THROWS(eval_three_qubit_I222(DistinguishableState({2, 2, 3})));
  }

  TEST_CASE("formula is the restriction of the fermionic projection") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const DistinguishableState phi = random_distinguishable({2, 2, 2}, 900 + s);
      const double formula = eval_three_qubit_I222(phi).value;
      const double projected = eval_projection_invariant(b32(), embed_distinguishable(phi)).value;
      CHECK(std::abs(formula - projected) < 1e-10);
    }
  }

  TEST_CASE("party permutations leave I222 unchanged") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const DistinguishableState phi = random_distinguishable({2, 2, 2}, 50 + s);
      const double v = eval_three_qubit_I222(phi).value;
      CHECK(std::abs(eval_three_qubit_I222(swap_parties(phi, 0, 1)).value - v) < 1e-12);
      CHECK(std::abs(eval_three_qubit_I222(swap_parties(phi, 1, 2)).value - v) < 1e-12);
    }
  }

  TEST_CASE("local unitaries against a Kronecker oracle") {
    const DistinguishableState phi = random_distinguishable({2, 3}, 6);
    const auto locals = haar_local_unitaries({2, 3}, 7);
    const Eigen::VectorXcd expect = oracle::kron(locals[0], locals[1]) * dense(phi);
    CHECK((dense(apply_local(locals, phi)) - expect).norm() < 1e-12);
    const Eigen::MatrixXcd sum = direct_sum(locals);
    CHECK(sum.rows() == 5);
    CHECK((sum.block(2, 2, 3, 3) - locals[1]).norm() == 0.0);
    CHECK(sum.block(0, 2, 2, 3).norm() == 0.0);
  }

  TEST_CASE("embedded invariants are local unitary invariants") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const DistinguishableState phi = random_distinguishable({2, 2, 2}, 70 + s);
      const auto locals = haar_local_unitaries({2, 2, 2}, 170 + s);
      const double a = eval_projection_invariant(b32(), embed_distinguishable(phi)).value;
      const double b = eval_projection_invariant(b32(), embed_distinguishable(apply_local(locals, phi))).value;
      CHECK(std::abs(a - b) < 1e-9);
      // same thing as a fermionic unitary
      const FermionState lifted = lift_unitary(direct_sum(locals), embed_distinguishable(phi));
      CHECK(std::abs(eval_projection_invariant(b32(), lifted).value - a) < 1e-9);
    }
  }

  TEST_CASE("two party Pluecker invariant tracks the concurrence") {
    for (auto dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}}) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const DistinguishableState phi = random_distinguishable(dims, 20 + s);
        const double i = closed_form_I1111(embed_distinguishable(phi)).value;
        CHECK(std::abs(i - concurrence_sq(phi) / 6.0) < 1e-12);
        CHECK(std::abs(closed_form_I1111(embed_distinguishable(swap_parties(phi, 0, 1))).value - i) < 1e-12);
      }
      // product states vanish
      ExactDistinguishableState real_prod(dims);
      for (int a = 1; a <= dims[0]; ++a)
        for (int b = 1; b <= dims[1]; ++b) real_prod.set({a, b}, {Rational(a * (2 * b - 3)), Rational(0)});
      CHECK(closed_form_I1111(embed_distinguishable(real_prod)).value == 0);
      CHECK(concurrence_sq(real_prod) == 0);
    }
  }

  TEST_CASE("distinguishable files") {
    std::istringstream zero("distinguishable dims=2,2,2\n0 0 0\t1 0\n1 1 1\t1 0\n");
    const auto z = read_distinguishable_state(zero);
    REQUIRE(z.exact.has_value());
    CHECK(normalized_I222(*z.exact) == frac(3, 4));
    CHECK(z.state.amplitude({2, 2, 2}) == std::complex<double>(1, 0));

    std::istringstream one("distinguishable dims=2,2,2\n1 1 1\t1 0\n2 2 2\t1 0\n");
    CHECK(read_distinguishable_state(one).state == z.state);

    std::istringstream mixed("distinguishable dims=2,3\n1 3\t0.5 0\n");
    CHECK(read_distinguishable_state(mixed).state.amplitude({1, 3}) == std::complex<double>(0.5, 0));

    std::istringstream forced("distinguishable dims=2,2\n1 1\t1 0\n");
    CHECK(read_distinguishable_state(forced, LabelBase::zero).state.amplitude({2, 2}) == std::complex<double>(1, 0));

    auto error_of = [](const std::string& text) {
      std::istringstream in(text);
      try {
        read_distinguishable_state(in);
      } catch (const ParseError& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(error_of("distinguishable dims=2,3\n1 4\t1 0\n").find("line 2") != std::string::npos);
    CHECK(error_of("distinguishable dims=2,3\n1\t1 0\n").find("line 2") != std::string::npos);
    CHECK(error_of("distinguishable dims=\n").find("line 1") != std::string::npos);
  }
}
