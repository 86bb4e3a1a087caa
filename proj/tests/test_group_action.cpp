#include <doctest.h>

#include <set>

#include "luinv/group_action.hpp"
#include "luinv/verification.hpp"

using namespace luinv;

namespace {

std::complex<double> eval_poly_overlap(const TransvectionPolynomial& p, double s, const FermionState& psi) {
  std::complex<double> total = 0;
  double power = 1;
  for (const SymVector& c : p.coefficients) {
    total += power * overlap_with_power(c, psi);
    power *= s;
  }
  return total;
}

}  // namespace

TEST_SUITE("group-action") {
  TEST_CASE("transvection on e12 squared") {
    const auto p = apply_transvection(3, 2, make_sym_vector({{1, {{1, 2}, {1, 2}}}}));
    REQUIRE(p.degree() == 2);
    CHECK(p.coefficients[0] == make_sym_vector({{1, {{1, 2}, {1, 2}}}}));
    CHECK(p.coefficients[1] == make_sym_vector({{2, {{1, 2}, {1, 3}}}}));
    CHECK(p.coefficients[2] == make_sym_vector({{1, {{1, 3}, {1, 3}}}}));
  }

  TEST_CASE("transvection on e123 squared") {
    const int n = 6;
    const auto p = apply_transvection(n, 3, make_sym_vector({{1, {{1, 2, 3}, {1, 2, 3}}}}));
    REQUIRE(p.degree() == 2);
    CHECK(p.coefficients[1] == make_sym_vector({{2, {{1, 2, 3}, {1, 2, n}}}}));
    CHECK(p.coefficients[2] == make_sym_vector({{1, {{1, 2, n}, {1, 2, n}}}}));
  }

  TEST_CASE("absent index gives a constant") {
    const SymVector w = make_sym_vector({{1, {{1, 2}, {3, 4}}}});
    const auto p = apply_transvection(1, 5, w);
    CHECK(p.degree() == 0);
    CHECK(p.coefficients[0] == w);
    CHECK_THROWS(apply_transvection(2, 2, w));
  }

  TEST_CASE("sign from substitution in place") {
    // e_{13} with 3 -> 2 in place is e_{12}; e_{34} with 3 -> 5 is e_{54} = -e_{45}.
    const auto p = apply_transvection(5, 3, make_sym_vector({{1, {{3, 4}}}}));
    CHECK(p.coefficients[1] == make_sym_vector({{-1, {{4, 5}}}}));
  }

  TEST_CASE("transvection matches the matrix action numerically") {
    // <u_ij(s) w, psi^m> = <w, (u_ij(s)^dagger psi)^m>
    const SymVector w = make_sym_vector({{2, {{1, 2}, {1, 3}, {4, 3}}}, {1, {{4, 2}, {1, 3}, {1, 3}}}});
    const FermionState psi = random_state(5, 2, 2);
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 3}, {5, 1}, {2, 4}, {4, 2}}) {
      const auto p = apply_transvection(i, j, w);
      const double s = 0.37;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(5, 5);
      u(i - 1, j - 1) = s;
      const auto lhs = eval_poly_overlap(p, s, psi);
      const auto rhs = overlap_with_power(w, lift_unitary(u.adjoint(), psi));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("coefficients are weight vectors and mirror each other") {
    const SymVector w = make_sym_vector({{2, {{1, 2}, {1, 3}, {4, 3}}}, {1, {{4, 2}, {1, 3}, {1, 3}}}});
    const auto p = apply_transvection(5, 3, w);
    REQUIRE(p.degree() == 2);
    CHECK(p.coefficients[0] == w);
    for (const SymVector& c : p.coefficients) CHECK_NOTHROW(weight_of(c, 5));
    Permutation swap35 = identity_permutation(5);
    std::swap(swap35[2], swap35[4]);
    for (int r = 0; r <= p.degree(); ++r) {
      CHECK(canonical_orbit_form(p.coefficients[static_cast<std::size_t>(p.degree() - r)]).form ==
            canonical_orbit_form(apply_permutation(swap35, p.coefficients[static_cast<std::size_t>(r)])).form);
    }
  }

  TEST_CASE("single occurrence gives degree one") {
    const auto p = apply_transvection(5, 4, make_sym_vector({{1, {{1, 2}, {3, 4}}}, {-1, {{1, 4}, {2, 3}}}}));
    CHECK(p.degree() == 1);
  }

  TEST_CASE("permutations") {
    const SymVector w = make_sym_vector({{1, {{1, 2}, {1, 2}}}});
    CHECK(apply_permutation(identity_permutation(4), w) == w);
    CHECK(apply_permutation({2, 1, 3, 4}, w) == w);
    CHECK(apply_permutation({2, 1, 3}, make_sym_vector({{1, {{1, 3}}}})) == make_sym_vector({{1, {{2, 3}}}}));
    CHECK(apply_permutation({3, 1, 2}, make_sym_vector({{1, {{1, 2}}}})) == make_sym_vector({{-1, {{1, 3}}}}));
    CHECK_THROWS(check_permutation({1, 1, 2}));
    const Permutation pi = {3, 1, 4, 2};
    CHECK(apply_permutation(inverse(pi), apply_permutation(pi, w)) == w);
    // weight r goes to r o pi^-1
    const SymVector v = make_sym_vector({{1, {{1, 2}, {1, 3}}}});
    const WeightVector before = weight_of(v, 4), after = weight_of(apply_permutation(pi, v), 4);
    for (int i = 1; i <= 4; ++i) CHECK(after[pi[static_cast<std::size_t>(i - 1)] - 1] == before[i - 1]);
  }

  TEST_CASE("dominant permutation and stabilizer") {
    const WeightVector w{1, 0, 2, 1};
    const auto pi = dominant_permutation(w);
    const SymVector v = make_sym_vector({{1, {{1, 3}, {3, 4}}}});
    CHECK(weight_of(apply_permutation(pi, v), 4).is_dominant());
    const auto stab = weight_stabilizer(WeightVector{2, 2, 1, 1, 1, 0, 0});
    CHECK(stab.size() == 2 * 6);
    std::set<Permutation> distinct(stab.begin(), stab.end());
    CHECK(distinct.size() == stab.size());
    for (const auto& s : stab) {
      CHECK(s[5] == 6);
      CHECK(s[6] == 7);
    }
  }

  TEST_CASE("canonical orbit form") {
    CHECK(canonical_orbit_form(make_sym_vector({{1, {{3, 4}, {3, 4}}}})).form ==
          make_sym_vector({{1, {{1, 2}, {1, 2}}}}));
    const auto c = canonical_orbit_form(make_sym_vector({{-2, {{1, 2}, {1, 3}}}}));
    CHECK(c.form == make_sym_vector({{1, {{1, 2}, {1, 3}}}}));
    CHECK(c.scalar == -2);
    const SymVector w = make_sym_vector({{2, {{1, 2}, {1, 3}, {4, 3}}}, {1, {{4, 2}, {1, 3}, {1, 3}}}});
    CHECK(canonical_orbit_form(w).form == canonical_orbit_form(apply_permutation({2, 1, 3, 4}, w)).form);
    CHECK_THROWS(canonical_orbit_form(SymVector(2)));
  }

  TEST_CASE("canonical form separates different orbits") {
    const SymVector a = make_sym_vector({{1, {{1, 2}, {3, 4}}}});
    const SymVector b = make_sym_vector({{1, {{1, 2}, {1, 3}}}});
    CHECK_FALSE(canonical_orbit_form(a).form == canonical_orbit_form(b).form);
  }
}
