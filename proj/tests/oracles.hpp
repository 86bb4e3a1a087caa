#pragma once

// Brute-force reference computations shared by the unit tests. None of them
// call into the code they are used to check.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "luinv/embedding.hpp"
#include "luinv/exterior_basis.hpp"

namespace oracle {

using cd = std::complex<double>;

// Counts semistandard tableaux of the given shape with entries in 1..n.
inline std::uint64_t ssyt_count(const std::vector<int>& shape, int n) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) cells.emplace_back(static_cast<int>(r), c);
  std::map<std::pair<int, int>, int> filled;
  std::uint64_t count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t at) {
    if (at == cells.size()) {
      ++count;
      return;
    }
    const auto [r, c] = cells[at];
    int lo = 1;
    if (c > 0) lo = std::max(lo, filled[{r, c - 1}]);
    if (r > 0) lo = std::max(lo, filled[{r - 1, c}] + 1);
    for (int v = lo; v <= n; ++v) {
      filled[{r, c}] = v;
      go(at + 1);
    }
  };
  go(0);
  return count;
}

inline int inversion_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Leibniz-formula lift of U to wedge^k.
inline luinv::FermionState lift(const Eigen::MatrixXcd& u, const luinv::FermionState& psi) {
  const int n = psi.n(), k = psi.k();
  luinv::FermionState out(n, k);
  std::vector<int> rows(static_cast<std::size_t>(k));
  std::function<void(int, int)> pick = [&](int pos, int start) {
    if (pos == k) {
      cd total = 0;
      for (const auto& [idx, a] : psi.amplitudes()) {
        std::vector<int> cols = idx.indices();
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        cd det = 0;
        do {
          cd prod = static_cast<double>(inversion_sign(perm));
          for (int r = 0; r < k; ++r) prod *= u(rows[r] - 1, cols[perm[r]] - 1);
          det += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += det * a;
      }
      if (std::abs(total) > 0) out.set(luinv::FermionIndex::from_sorted(rows), total);
      return;
    }
    for (int v = start; v <= n; ++v) {
      rows[static_cast<std::size_t>(pos)] = v;
      pick(pos + 1, v + 1);
    }
  };
  pick(0, 1);
  return out;
}

// psi_{a b} with sign for unsorted pairs.
inline cd amp2(const luinv::FermionState& psi, int a, int b) {
  if (a == b) return 0;
  if (a < b) return psi.amplitude(luinv::FermionIndex::from_sorted({a, b}));
  return -psi.amplitude(luinv::FermionIndex::from_sorted({b, a}));
}

// Sum over 6-subsets of |sum over S6 sign * psi psi psi|^2, unscaled.
inline double s6_sum(const luinv::FermionState& psi) {
  const int n = psi.n();
  double total = 0;
  std::vector<int> s(6);
  std::function<void(int, int)> pick = [&](int pos, int start) {
    if (pos == 6) {
      std::vector<int> perm = {0, 1, 2, 3, 4, 5};
      cd acc = 0;
      do {
        acc += static_cast<double>(inversion_sign(perm)) * amp2(psi, s[perm[0]], s[perm[1]]) *
               amp2(psi, s[perm[2]], s[perm[3]]) * amp2(psi, s[perm[4]], s[perm[5]]);
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += std::norm(acc);
      return;
    }
    for (int v = start; v <= n; ++v) {
      s[static_cast<std::size_t>(pos)] = v;
      pick(pos + 1, v + 1);
    }
  };
  pick(0, 1);
  return total;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace oracle
