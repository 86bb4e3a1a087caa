#include "luinv/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "luinv/combinatorics.hpp"

namespace luinv {

std::string TrialReport::summary_line() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s max_dev=%.3e trials=%d seed=%llu", pass ? "PASS" : "FAIL", max_deviation, trials,
                static_cast<unsigned long long>(seed));
  return buf;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw Error("haar_unitary: requires n >= 1");
  Eigen::MatrixXcd z(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) z(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& rr = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    const std::complex<double> d = rr(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag == 0.0 ? 1.0 : d / mag;
  }
  return q;
}

Eigen::MatrixXcd haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

std::vector<Eigen::MatrixXcd> haar_local_unitaries(const std::vector<int>& dims, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::MatrixXcd> out;
  for (int d : dims) out.push_back(haar_unitary(d, rng));
  return out;
}

TrialReport invariance_test(const FermionInvariant& invariant, const FermionState& psi, int trials, double tol,
                            std::uint64_t seed) {
  TrialReport report;
  report.trials = trials;
  report.seed = seed;
  report.tolerance = tol;
  const double base = invariant(psi);
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXcd u = haar_unitary(psi.n(), derive_seed(seed, static_cast<std::uint64_t>(t)));
    const double dev = std::abs(invariant(lift_unitary(u, psi)) - base);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

ComplexSymVector expand_power(const FermionState& psi, int m) {
  if (m < 0) throw Error("expand_power: requires m >= 0");
  std::vector<std::pair<FermionIndex, std::complex<double>>> support(psi.amplitudes().begin(), psi.amplitudes().end());
  ComplexSymVector out(m);
  if (support.empty()) return out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  std::vector<FermionIndex> factors(static_cast<std::size_t>(m));
  while (true) {
    std::complex<double> prod = 1.0;
    for (std::size_t a = 0; a < pick.size(); ++a) {
      factors[a] = support[pick[a]].first;
      prod *= support[pick[a]].second;
    }
    out.add(SymMonomial(factors), prod);
    std::size_t a = pick.size();
    while (a > 0 && ++pick[a - 1] == support.size()) pick[--a] = 0;
    if (a == 0) break;
  }
  return out;
}

namespace {

class MonomialIndex {
 public:
  int operator()(const SymMonomial& mon) {
    const auto [it, inserted] = index_.try_emplace(mon, static_cast<int>(index_.size()));
    return it->second;
  }
  int size() const { return static_cast<int>(index_.size()); }

 private:
  std::map<SymMonomial, int> index_;
};

// Coordinates in the orthonormal monomial basis.
template <class Vec, class Scale>
std::vector<std::pair<int, std::complex<double>>> coordinates(const Vec& v, MonomialIndex& index, Scale scale) {
  std::vector<std::pair<int, std::complex<double>>> out;
  for (const auto& [mon, c] : v.terms()) {
    out.emplace_back(index(mon), scale(c) * std::sqrt(to_double(monomial_norm_sq(mon))));
  }
  return out;
}

Eigen::MatrixXcd dense(const std::vector<std::vector<std::pair<int, std::complex<double>>>>& cols, int rows) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [r, v] : cols[c]) out(r, static_cast<Eigen::Index>(c)) += v;
  }
  return out;
}

std::vector<ComplexSymVector> sample_powers(int k, int m, int n, int samples, std::uint64_t seed) {
  FermionState seed_state(n, k);
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) idx[static_cast<std::size_t>(a)] = a + 1;
  seed_state.set(FermionIndex::from_sorted(idx), 1.0);
  std::vector<ComplexSymVector> out;
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd g = haar_unitary(n, derive_seed(seed, static_cast<std::uint64_t>(s)));
    out.push_back(expand_power(lift_unitary(g, seed_state), m));
  }
  return out;
}

std::size_t numeric_rank(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace

std::size_t sampled_rank(int k, int m, int n, int samples, std::uint64_t seed) {
  MonomialIndex index;
  std::vector<std::vector<std::pair<int, std::complex<double>>>> cols;
  for (const ComplexSymVector& v : sample_powers(k, m, n, samples, seed)) {
    cols.push_back(coordinates(v, index, [](const std::complex<double>& c) { return c; }));
  }
  return numeric_rank(dense(cols, index.size()));
}

TrialReport numeric_span_crosscheck(const SubspaceBasis& basis, int samples, std::uint64_t seed, double tol) {
  TrialReport report;
  report.trials = samples;
  report.seed = seed;
  report.tolerance = tol;

  MonomialIndex index;
  std::vector<std::vector<std::pair<int, std::complex<double>>>> basis_cols;
  for (const OrthoFamily& f : basis.families) {
    const double scale = std::sqrt(to_double(f.inv_norm_sq));
    for (const SymVector& w : f.orbit_members) {
      basis_cols.push_back(coordinates(w, index, [&](const Rational& c) { return std::complex<double>(to_double(c) * scale); }));
    }
  }
  std::vector<std::vector<std::pair<int, std::complex<double>>>> sample_cols;
  for (const ComplexSymVector& v : sample_powers(basis.k, basis.m, basis.n, samples, seed)) {
    sample_cols.push_back(coordinates(v, index, [](const std::complex<double>& c) { return c; }));
  }
  const Eigen::MatrixXcd b = dense(basis_cols, index.size());
  const Eigen::MatrixXcd s = dense(sample_cols, index.size());

  const Eigen::MatrixXcd residual = s - b * (b.adjoint() * s);
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    const double norm = s.col(c).norm();
    report.max_deviation = std::max(report.max_deviation, norm == 0.0 ? 0.0 : residual.col(c).norm() / norm);
  }
  const std::size_t rank = numeric_rank(s);
  std::ostringstream detail;
  detail << "sample_rank=" << rank << " basis_dimension=" << basis.total_dimension;
  report.detail = detail.str();
  report.pass = report.max_deviation <= tol && rank == basis.total_dimension;
  return report;
}

std::vector<ReferenceRow> reference_rows(int k, int m) {
  auto b = [](int n, int r) { return binomial(n, r); };
  auto q = [](long p, long d) { return frac(p, d); };
  if (k == 2 && m == 2) {
    return {
        {{2, 2}, {q(1, 1)}, [=](int n) { return b(n, 2); }, "C(n,2)"},
        {{2, 1, 1}, {q(2, 1)}, [=](int n) { return 3 * b(n, 3); }, "3 C(n,3)"},
        {{1, 1, 1, 1}, {q(1, 1), q(1, 3)}, [=](int n) { return 2 * b(n, 4); }, "2 C(n,4)"},
    };
  }
  if (k == 2 && m == 3) {
    return {
        {{3, 3}, {q(1, 1)}, [=](int n) { return b(n, 2); }, "C(n,2)"},
        {{3, 2, 1}, {q(3, 1)}, [=](int n) { return 6 * b(n, 3); }, "6 C(n,3)"},
        {{3, 1, 1, 1}, {q(6, 1)}, [=](int n) { return 4 * b(n, 4); }, "4 C(n,4)"},
        {{2, 2, 2}, {q(6, 1)}, [=](int n) { return b(n, 3); }, "C(n,3)"},
        {{2, 2, 1, 1}, {q(1, 1), q(1, 8)}, [=](int n) { return 2 * b(n, 2) * b(n - 2, 2); }, "2 C(n,2) C(n-2,2)"},
        {{2, 1, 1, 1, 1}, {q(2, 1), q(1, 4), q(3, 4)}, [=](int n) { return 15 * b(n, 5); }, "15 C(n,5)"},
        {{1, 1, 1, 1, 1, 1},
         {q(1, 1), q(1, 8), q(3, 8), q(3, 8), q(1, 8)},
         [=](int n) { return 5 * b(n, 6); },
         "5 C(n,6)"},
    };
  }
  if (k == 3 && m == 2) {
    return {
        {{2, 2, 2}, {q(1, 1)}, [=](int n) { return b(n, 3); }, "C(n,3)"},
        {{2, 2, 1, 1}, {q(2, 1)}, [=](int n) { return b(n, 2) * b(n - 2, 2); }, "C(n,2) C(n-2,2)"},
        {{2, 1, 1, 1, 1}, {q(1, 1), q(1, 3)}, [=](int n) { return 2 * n * b(n - 1, 4); }, "2n C(n-1,4)"},
        {{1, 1, 1, 1, 1, 1},
         {q(1, 2), q(1, 6), q(1, 6), q(1, 18), q(1, 9)},
         [=](int n) { return 5 * b(n, 6); },
         "5 C(n,6)"},
    };
  }
  return {};
}

TrialReport compare_with_reference(const SubspaceBasis& basis) {
  TrialReport report;
  report.trials = 1;
  const std::vector<ReferenceRow> rows = reference_rows(basis.k, basis.m);
  std::ostringstream detail;
  if (rows.empty()) {
    detail << "no reference rows for k=" << basis.k << " m=" << basis.m;
    report.detail = detail.str();
    report.max_deviation = 1;
    return report;
  }
  std::map<std::vector<int>, std::pair<std::vector<Rational>, std::uint64_t>> found;
  for (const OrthoFamily& f : basis.families) {
    std::vector<int> w;
    for (int x : f.weight.entries()) {
      if (x != 0) w.push_back(x);
    }
    auto& slot = found[w];
    slot.first.push_back(f.inv_norm_sq);
    slot.second += f.orbit_size();
  }
  int mismatches = 0;
  for (const ReferenceRow& row : rows) {
    if (static_cast<int>(row.weight.size()) > basis.n) continue;
    std::vector<Rational> want = row.inv_norms;
    std::vector<Rational> got;
    std::uint64_t count = 0;
    if (const auto it = found.find(row.weight); it != found.end()) {
      got = it->second.first;
      count = it->second.second;
      found.erase(it);
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    const std::uint64_t expected = row.count(basis.n);
    const bool ok = want == got && count == expected;
    if (!ok) ++mismatches;
    detail << (ok ? "ok  " : "BAD ") << WeightVector(row.weight).to_string() << " inv_norms={";
    for (std::size_t a = 0; a < got.size(); ++a) detail << (a ? "," : "") << to_short_string(got[a]);
    detail << "} count=" << count << " expected " << row.count_formula << "=" << expected << "\n";
  }
  for (const auto& [w, data] : found) {
    ++mismatches;
    detail << "BAD " << WeightVector(w).to_string() << " not in reference\n";
  }
  report.detail = detail.str();
  report.max_deviation = mismatches;
  report.pass = mismatches == 0;
  return report;
}

}  // namespace luinv
