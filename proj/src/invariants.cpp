#include "luinv/invariants.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "luinv/symmetric_algebra.hpp"

namespace luinv {

namespace {

template <class Amp>
InvariantOf<Amp> make_value(RealOf<Amp> v, Partition lambda, int k, int m) {
  InvariantOf<Amp> out;
  out.value = std::move(v);
  out.lambda = std::move(lambda);
  out.k = k;
  out.m = m;
  return out;
}

template <class Amp>
void require_k(const BasicFermionState<Amp>& psi, int k, const char* what) {
  if (psi.k() != k) throw Error(std::string(what) + ": requires k=" + std::to_string(k));
}

int thread_count() {
  const char* env = std::getenv("THREADS");
  if (!env) return 1;
  const int t = std::atoi(env);
  return t > 1 ? t : 1;
}

}  // namespace

template <class Amp>
RealOf<Amp> power_norm(const BasicFermionState<Amp>& psi, int m) {
  const RealOf<Amp> nsq = state_norm_sq(psi);
  RealOf<Amp> out{1};
  for (int a = 0; a < m; ++a) out *= nsq;
  return out;
}

template <class Amp>
InvariantOf<Amp> eval_projection_invariant(const SubspaceBasis& basis, const BasicFermionState<Amp>& psi) {
  using T = AmplitudeTraits<Amp>;
  if (psi.k() != basis.k) throw Error("eval_projection_invariant: particle number differs from the basis");
  if (psi.n() > basis.n) return eval_projection_invariant(expand_orbits(basis, psi.n()), psi);

  std::vector<std::pair<const SymVector*, RealOf<Amp>>> work;
  for (const OrthoFamily& f : basis.families) {
    const RealOf<Amp> inv = T::real_from_rational(f.inv_norm_sq);
    for (const SymVector& w : f.orbit_members) work.emplace_back(&w, inv);
  }
  std::vector<RealOf<Amp>> parts(work.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) parts[a] = T::abs2(overlap_with_power(*work[a].first, psi)) * work[a].second;
  };
  const int threads = std::is_same_v<Amp, std::complex<double>> ? thread_count() : 1;
  if (threads > 1 && work.size() > 64) {
    std::vector<std::thread> pool;
    const std::size_t chunk = (work.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < work.size(); begin += chunk) {
      pool.emplace_back(run, begin, std::min(work.size(), begin + chunk));
    }
    for (std::thread& t : pool) t.join();
  } else {
    run(0, work.size());
  }
  RealOf<Amp> total{0};
  for (const RealOf<Amp>& p : parts) total += p;
  return make_value<Amp>(std::move(total), basis.lambda, basis.k, basis.m);
}

template <class Amp>
InvariantOf<Amp> closed_form_I22(const BasicFermionState<Amp>& psi) {
  using T = AmplitudeTraits<Amp>;
  require_k(psi, 2, "closed_form_I22");
  const int n = psi.n();
  auto p = [&](int a, int b) { return psi.amplitude({a, b}); };
  const RealOf<Amp> two = T::real_from_rational(Rational(2));
  const RealOf<Amp> third = T::real_from_rational(Rational(1, 3));
  const Amp two_c = T::from_rational(Rational(2));
  RealOf<Amp> total{0};
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Amp a = p(i, j);
      total += T::abs2(a * a);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        if (j == i || k == i) continue;
        total += two * T::abs2(p(i, j) * p(i, k));
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          total += T::abs2(p(i, j) * p(k, l) + p(i, k) * p(j, l));
          total += third * T::abs2(p(i, j) * p(l, k) + two_c * p(i, l) * p(j, k) + p(i, k) * p(j, l));
        }
      }
    }
  }
  return make_value<Amp>(std::move(total), Partition{2, 2}, 2, 2);
}

template <class Amp>
InvariantOf<Amp> closed_form_I1111(const BasicFermionState<Amp>& psi) {
  using T = AmplitudeTraits<Amp>;
  require_k(psi, 2, "closed_form_I1111");
  const int n = psi.n();
  auto p = [&](int a, int b) { return psi.amplitude({a, b}); };
  const RealOf<Amp> two_thirds = T::real_from_rational(Rational(2, 3));
  RealOf<Amp> total{0};
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          total += two_thirds * T::abs2(p(i, j) * p(k, l) + p(i, k) * p(l, j) + p(i, l) * p(j, k));
        }
      }
    }
  }
  return make_value<Amp>(std::move(total), Partition{1, 1, 1, 1}, 2, 2);
}

std::vector<BlockPartition> block_partitions(int size, int k) {
  if (k < 1 || size % k != 0) throw Error("block_partitions: k must divide the set size");
  std::vector<BlockPartition> out;
  std::vector<bool> used(static_cast<std::size_t>(size), false);
  std::vector<std::vector<int>> blocks;
  std::function<void()> rec = [&]() {
    int first = 0;
    while (first < size && used[static_cast<std::size_t>(first)]) ++first;
    if (first == size) {
      std::vector<int> seq;
      for (const auto& b : blocks) seq.insert(seq.end(), b.begin(), b.end());
      out.push_back({blocks, permutation_sign(seq)});
      return;
    }
    std::vector<int> rest;
    for (int x = first + 1; x < size; ++x) {
      if (!used[static_cast<std::size_t>(x)]) rest.push_back(x);
    }
    used[static_cast<std::size_t>(first)] = true;
    for_each_k_subset(static_cast<int>(rest.size()), k - 1, [&](std::span<const int> pick) {
      std::vector<int> block{first};
      for (int q : pick) block.push_back(rest[static_cast<std::size_t>(q - 1)]);
      for (std::size_t a = 1; a < block.size(); ++a) used[static_cast<std::size_t>(block[a])] = true;
      blocks.push_back(block);
      rec();
      blocks.pop_back();
      for (std::size_t a = 1; a < block.size(); ++a) used[static_cast<std::size_t>(block[a])] = false;
    });
    used[static_cast<std::size_t>(first)] = false;
  };
  rec();
  return out;
}

namespace {

// sum_S |sum over block partitions of S of sign * prod psi_block|^2
template <class Amp>
RealOf<Amp> matching_sum(const BasicFermionState<Amp>& psi, int base_n) {
  using T = AmplitudeTraits<Amp>;
  const int k = psi.k();
  const std::vector<BlockPartition> parts = block_partitions(base_n, k);
  RealOf<Amp> total{0};
  for_each_k_subset(psi.n(), base_n, [&](std::span<const int> s) {
    Amp a{};
    for (const BlockPartition& bp : parts) {
      Amp prod = T::from_rational(Rational(bp.sign));
      for (const auto& block : bp.blocks) {
        std::uint64_t bits = 0;
        for (int pos : block) bits |= std::uint64_t{1} << (s[static_cast<std::size_t>(pos)] - 1);
        const auto it = psi.amplitudes().find(FermionIndex::from_bits(bits));
        if (it == psi.amplitudes().end()) {
          prod = Amp{};
          break;
        }
        prod *= it->second;
      }
      a += prod;
    }
    total += T::abs2(a);
  });
  return total;
}

}  // namespace

template <class Amp>
InvariantOf<Amp> closed_form_I16(const BasicFermionState<Amp>& psi) {
  using T = AmplitudeTraits<Amp>;
  require_k(psi, 2, "closed_form_I16");
  if (psi.n() < 6) throw Error("closed_form_I16: requires n >= 6");
  // Each matching appears 48 = 3! * 2^3 times in the S_6 sum.
  const RealOf<Amp> scale = T::real_from_rational(frac(48 * 48, 5760));
  return make_value<Amp>(scale * matching_sum(psi, 6), Partition{1, 1, 1, 1, 1, 1}, 2, 3);
}

template <class Amp>
InvariantOf<Amp> antisymmetric_family(const BasicFermionState<Amp>& psi, int base_n) {
  using T = AmplitudeTraits<Amp>;
  const int k = psi.k();
  if (k < 1 || base_n < k || base_n % k != 0) throw Error("antisymmetric_family: k must divide base_n");
  if (base_n > psi.n()) throw Error("antisymmetric_family: requires base_n <= n");
  const int m = base_n / k;
  Partition lambda(std::vector<int>(static_cast<std::size_t>(base_n), 1));
  if (k % 2 == 1 && m >= 2) return make_value<Amp>(RealOf<Amp>{0}, lambda, k, m);
  // |w_S|^2 = (number of block partitions) / m!, all factors distinct.
  const auto count = static_cast<long>(block_partitions(base_n, k).size());
  long fact = 1;
  for (int a = 2; a <= m; ++a) fact *= a;
  const RealOf<Amp> inv_norm = T::real_from_rational(frac(fact, count));
  return make_value<Amp>(inv_norm * matching_sum(psi, base_n), lambda, k, m);
}

template <class Amp>
InvariantOf<Amp> complement(const InvariantOf<Amp>& value, const BasicFermionState<Amp>& psi) {
  InvariantOf<Amp> out = value;
  out.value = power_norm(psi, value.m) - value.value;
  out.lambda = Partition();
  return out;
}

template <class Amp>
InvariantOf<Amp> derived_I2211(const InvariantOf<Amp>& i33, const InvariantOf<Amp>& i16, const BasicFermionState<Amp>& psi) {
  require_k(psi, 2, "derived_I2211");
  return make_value<Amp>(power_norm(psi, 3) - i33.value - i16.value, Partition{2, 2, 1, 1}, 2, 3);
}

template <class Amp>
ConstraintCheck<RealOf<Amp>> sum_constraint_check(std::span<const InvariantOf<Amp>> values,
                                                  const BasicFermionState<Amp>& psi) {
  if (values.empty()) throw Error("sum_constraint_check: no values");
  RealOf<Amp> total{0};
  for (const auto& v : values) total += v.value;
  RealOf<Amp> residual = total - power_norm(psi, values.front().m);
  ConstraintCheck<RealOf<Amp>> out;
  if constexpr (std::is_same_v<RealOf<Amp>, Rational>) {
    residual = abs(residual);
    out.ok = sgn(residual) == 0;
  } else {
    residual = std::abs(residual);
    out.ok = residual <= 1e-10;
  }
  out.residual = residual;
  return out;
}

#define LUINV_INSTANTIATE(Amp)                                                                                 \
  template RealOf<Amp> power_norm(const BasicFermionState<Amp>&, int);                                       \
  template InvariantOf<Amp> eval_projection_invariant(const SubspaceBasis&, const BasicFermionState<Amp>&);  \
  template InvariantOf<Amp> closed_form_I22(const BasicFermionState<Amp>&);                                  \
  template InvariantOf<Amp> closed_form_I1111(const BasicFermionState<Amp>&);                                \
  template InvariantOf<Amp> closed_form_I16(const BasicFermionState<Amp>&);                                  \
  template InvariantOf<Amp> antisymmetric_family(const BasicFermionState<Amp>&, int);                        \
  template InvariantOf<Amp> complement(const InvariantOf<Amp>&, const BasicFermionState<Amp>&);              \
  template InvariantOf<Amp> derived_I2211(const InvariantOf<Amp>&, const InvariantOf<Amp>&,                  \
                                          const BasicFermionState<Amp>&);                                    \
  template ConstraintCheck<RealOf<Amp>> sum_constraint_check(std::span<const InvariantOf<Amp>>,              \
                                                             const BasicFermionState<Amp>&);

LUINV_INSTANTIATE(std::complex<double>)
LUINV_INSTANTIATE(ComplexRational)

#undef LUINV_INSTANTIATE

}  // namespace luinv
