#include <doctest.h>

#include <sstream>

#include "luinv/exterior_basis.hpp"
#include "luinv/verification.hpp"
#include "oracles.hpp"

using namespace luinv;

namespace {

double distance(const FermionState& a, const FermionState& b) {
  double d = 0;
  for (const auto& [idx, v] : a.amplitudes()) d = std::max(d, std::abs(v - b.amplitude(idx)));
  for (const auto& [idx, v] : b.amplitudes()) d = std::max(d, std::abs(v - a.amplitude(idx)));
  return d;
}

}  // namespace

TEST_SUITE("exterior-basis") {
  TEST_CASE("index ordering and labels") {
    const auto a = FermionIndex::from_sorted({1, 2});
    const auto b = FermionIndex::from_sorted({1, 3});
    const auto c = FermionIndex::from_sorted({2, 3});
    CHECK(a < b);
    CHECK(b < c);
    CHECK(FermionIndex::from_sorted({5}) < a);
    CHECK(a.label() == "12");
    CHECK(FermionIndex::from_sorted({1, 10}).label() == "{1,10}");
    CHECK(FermionIndex::from_sorted({1, 10}).to_string() == "1,10");
    CHECK(c.max_index() == 3);
    CHECK_THROWS(FermionIndex::from_sorted({2, 1}));
  }

  TEST_CASE("canonicalize index") {
    auto s = canonicalize_index({2, 1});
    CHECK(s.sign == -1);
    CHECK(s.index == FermionIndex::from_sorted({1, 2}));
    s = canonicalize_index({3, 1, 2});
    CHECK(s.sign == 1);
    CHECK(canonicalize_index({1, 1}).is_zero());
    s = canonicalize_index({1, 4, 6});
    CHECK(s.sign == 1);
    const auto again = canonicalize_index(s.index.indices());
    CHECK(again.sign == 1);
    CHECK(again.index == s.index);
  }

  TEST_CASE("amplitude lookup with unsorted indices") {
    FermionState psi(4, 2);
    psi.set(FermionIndex::from_sorted({1, 2}), {0.5, 0.25});
    CHECK(psi.amplitude({2, 1}) == std::complex<double>(-0.5, -0.25));
    CHECK(psi.amplitude({1, 1}) == std::complex<double>(0, 0));
    CHECK_THROWS(psi.set(FermionIndex::from_sorted({1, 5}), 1.0));
    CHECK_THROWS(psi.set(FermionIndex::from_sorted({1, 2, 3}), 1.0));
  }

  TEST_CASE("transposition lift flips e12") {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
    u.col(0).swap(u.col(1));
    FermionState psi(2, 2);
    psi.set(FermionIndex::from_sorted({1, 2}), 1.0);
    const FermionState out = lift_unitary(u, psi);
    CHECK(out.amplitude(FermionIndex::from_sorted({1, 2})) == std::complex<double>(-1, 0));
  }

  TEST_CASE("lift agrees with the Leibniz oracle") {
    for (int k = 1; k <= 3; ++k) {
      const int n = 5;
      const FermionState psi = random_state(n, k, 40 + k);
      const Eigen::MatrixXcd u = haar_unitary(n, 90 + k);
      CHECK(distance(lift_unitary(u, psi), oracle::lift(u, psi)) < 1e-12);
      // Arbitrary, non-unitary matrices too.
      Rng rng(k);
      Eigen::MatrixXcd g(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
      CHECK(distance(lift_unitary(g, psi), oracle::lift(g, psi)) < 1e-10);
    }
  }

  TEST_CASE("lift is functorial and norm preserving") {
    const FermionState psi = random_state(6, 3, 5);
    const Eigen::MatrixXcd u = haar_unitary(6, 11);
    const Eigen::MatrixXcd v = haar_unitary(6, 12);
    CHECK(distance(lift_unitary(u * v, psi), lift_unitary(u, lift_unitary(v, psi))) < 1e-10);
    CHECK(std::abs(state_norm_sq(lift_unitary(u, psi)) - 1.0) < 1e-10);
  }

  TEST_CASE("random states") {
    const FermionState a = random_state(5, 2, 3);
    CHECK(a == random_state(5, 2, 3));
    CHECK_FALSE(a == random_state(5, 2, 4));
    CHECK(std::abs(state_norm_sq(a) - 1.0) < 1e-12);
    CHECK(a.amplitudes().size() == 10);
  }

  TEST_CASE("state file round trip") {
    const FermionState a = random_state(4, 2, 8);
    std::stringstream io;
    write_fermion_state(io, a);
    const FermionStateFile back = read_fermion_state(io);
    CHECK(back.state == a);
    CHECK_FALSE(back.exact.has_value());
  }

  TEST_CASE("exact amplitudes are kept") {
    std::istringstream in("# comment\nfermion n=4 k=2\n1,2\t1/2 0\n3,4\t-1 1/3  # trailing\n");
    const FermionStateFile f = read_fermion_state(in);
    REQUIRE(f.exact.has_value());
    CHECK(f.exact->amplitude(FermionIndex::from_sorted({3, 4})).re == -1);
    CHECK(f.exact->amplitude(FermionIndex::from_sorted({3, 4})).im == frac(1, 3));
    CHECK(f.state.amplitude(FermionIndex::from_sorted({1, 2})) == std::complex<double>(0.5, 0));
    std::stringstream io;
    write_fermion_state(io, *f.exact);
    const FermionStateFile again = read_fermion_state(io);
    REQUIRE(again.exact.has_value());
    CHECK(*again.exact == *f.exact);
  }

  TEST_CASE("malformed state files report the line") {
    auto error_of = [](const std::string& text) {
      std::istringstream in(text);
      try {
        read_fermion_state(in);
      } catch (const ParseError& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(error_of("fermion n=4 k=2\n2,1\t1 0\n").find("line 2") != std::string::npos);
    CHECK(error_of("fermion n=4 k=2\n1,2\t1 0\n1,5\t1 0\n").find("line 3") != std::string::npos);
    CHECK(error_of("fermion n=4 k=2\n1,2\t1 0\n1,2\t1 0\n").find("line 3") != std::string::npos);
    CHECK(error_of("fermion n=4 k=2\n1,2\tx 0\n").find("line 2") != std::string::npos);
    CHECK(error_of("fermion n=4 k=2\n1,2,3\t1 0\n").find("line 2") != std::string::npos);
    CHECK(error_of("bosons n=4\n").find("line 1") != std::string::npos);
  }
}
