#include <doctest.h>

#include "luinv/invariants.hpp"
#include "luinv/verification.hpp"

using namespace luinv;

TEST_SUITE("verification-oracle") {
  TEST_CASE("haar unitaries") {
    for (int n : {1, 2, 5, 8}) {
      const Eigen::MatrixXcd u = haar_unitary(n, 17);
      CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12);
      CHECK((haar_unitary(n, 17) - u).norm() == 0.0);
      CHECK((haar_unitary(n, 18) - u).norm() > 0.0);
    }
    CHECK(std::abs(std::abs(haar_unitary(1, 5)(0, 0)) - 1.0) < 1e-15);
    CHECK_THROWS(haar_unitary(0, 1));
  }

  TEST_CASE("rng stream is fixed") {
    // First outputs of the 64-bit Mersenne twister with the default seed.
    std::mt19937_64 e(5489);
    CHECK(e() == 14514284786278117030ULL);
    Rng a(3), b(3);
    for (int t = 0; t < 5; ++t) CHECK(a.normal() == b.normal());
    Rng c(9);
    for (int t = 0; t < 1000; ++t) {
      const double u = c.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    CHECK(derive_seed(10, 3) == 13);
  }

  TEST_CASE("invariance harness") {
    const FermionState psi = random_state(4, 2, 1);
    const auto good = invariance_test([](const FermionState& p) { return closed_form_I22(p).value; }, psi, 100, 1e-9, 7);
    CHECK(good.pass);
    CHECK(good.trials == 100);
    CHECK(good.summary_line().rfind("PASS max_dev=", 0) == 0);
    CHECK(good.summary_line().find("trials=100 seed=7") != std::string::npos);

    // I22 with the first two-index block dropped is not invariant.
    auto broken = [](const FermionState& p) {
      double drop = 0;
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) drop += std::pow(std::norm(p.amplitude(FermionIndex::from_sorted({i, j}))), 2);
      return closed_form_I22(p).value - drop;
    };
    const auto bad = invariance_test(broken, psi, 20, 1e-9, 7);
    CHECK_FALSE(bad.pass);
    CHECK(bad.summary_line().rfind("FAIL", 0) == 0);
  }

  TEST_CASE("expansion of a power") {
    FermionState psi(4, 2);
    psi.set(FermionIndex::from_sorted({1, 2}), 1.0);
    psi.set(FermionIndex::from_sorted({3, 4}), 2.0);
    const ComplexSymVector p = expand_power(psi, 2);
    const FermionIndex a = FermionIndex::from_sorted({1, 2}), b = FermionIndex::from_sorted({3, 4});
    CHECK(p.coefficient(SymMonomial{a, a}) == std::complex<double>(1, 0));
    CHECK(p.coefficient(SymMonomial{a, b}) == std::complex<double>(4, 0));
    CHECK(p.coefficient(SymMonomial{b, b}) == std::complex<double>(4, 0));
  }

  TEST_CASE("span crosscheck") {
    const SubspaceBasis b = build_highest_weight_basis(2, 2, 4);
    const auto ok = numeric_span_crosscheck(b, 40, 3);
    CHECK(ok.pass);
    CHECK(ok.detail.find("sample_rank=20") != std::string::npos);
    CHECK(sampled_rank(2, 2, 4, 40, 3) == 20);

    SubspaceBasis missing = b;
    missing.total_dimension -= missing.families.back().orbit_size();
    missing.families.pop_back();
    CHECK_FALSE(numeric_span_crosscheck(missing, 40, 3).pass);

    const SubspaceBasis c = build_highest_weight_basis(3, 2, 6);
    const auto r = numeric_span_crosscheck(c, 200, 5);
    CHECK(r.pass);
    CHECK(r.max_deviation <= 1e-8);
  }

  TEST_CASE("reference tables") {
    CHECK(compare_with_reference(build_highest_weight_basis(2, 2, 4)).pass);
    CHECK(compare_with_reference(build_highest_weight_basis(2, 2, 6)).pass);
    CHECK(compare_with_reference(build_highest_weight_basis(2, 3, 6)).pass);
    CHECK(compare_with_reference(build_highest_weight_basis(3, 2, 6)).pass);
    CHECK(compare_with_reference(build_highest_weight_basis(3, 2, 7)).pass);
    SubspaceBasis b = build_highest_weight_basis(2, 3, 6);
    b.families.front().inv_norm_sq = 2;
    const auto bad = compare_with_reference(b);
    CHECK_FALSE(bad.pass);
    CHECK(bad.detail.find("BAD") != std::string::npos);
    CHECK_FALSE(compare_with_reference(build_highest_weight_basis(1, 2, 3)).pass);
  }
}
