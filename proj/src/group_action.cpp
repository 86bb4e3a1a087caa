#include "luinv/group_action.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

namespace luinv {

Permutation identity_permutation(int n) {
  Permutation pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 1);
  return pi;
}

void check_permutation(const Permutation& pi) {
  std::vector<bool> hit(pi.size() + 1, false);
  for (int x : pi) {
    if (x < 1 || x > static_cast<int>(pi.size()) || hit[static_cast<std::size_t>(x)]) {
      throw Error("not a permutation");
    }
    hit[static_cast<std::size_t>(x)] = true;
  }
}

Permutation inverse(const Permutation& pi) {
  Permutation inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[static_cast<std::size_t>(pi[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

TransvectionPolynomial apply_transvection(int i, int j, const SymVector& w) {
  if (i == j) throw Error("apply_transvection: requires i != j");
  if (i < 1 || j < 1 || i > kMaxModes || j > kMaxModes) throw Error("apply_transvection: index out of range");
  TransvectionPolynomial poly;
  poly.coefficients.emplace_back(w.degree());
  for (const auto& [mon, c] : w.terms()) {
    const std::vector<FermionIndex>& flat = mon.flat();
    std::vector<std::size_t> moved;
    std::vector<SignedIndex> images;
    for (std::size_t a = 0; a < flat.size(); ++a) {
      if (flat[a].contains(j) && !flat[a].contains(i)) {
        std::vector<int> seq = flat[a].indices();
        std::replace(seq.begin(), seq.end(), j, i);
        moved.push_back(a);
        images.push_back(canonicalize_index(seq));
      }
    }
    const std::size_t choices = std::size_t{1} << moved.size();
    for (std::size_t mask = 0; mask < choices; ++mask) {
      std::vector<FermionIndex> factors = flat;
      int sign = 1;
      for (std::size_t b = 0; b < moved.size(); ++b) {
        if (mask & (std::size_t{1} << b)) {
          factors[moved[b]] = images[b].index;
          sign *= images[b].sign;
        }
      }
      const auto r = static_cast<std::size_t>(std::popcount(mask));
      while (poly.coefficients.size() <= r) poly.coefficients.emplace_back(w.degree());
      poly.coefficients[r].add(SymMonomial(std::move(factors)), sign > 0 ? c : Rational(-c));
    }
  }
  while (poly.coefficients.size() > 1 && poly.coefficients.back().empty()) poly.coefficients.pop_back();
  return poly;
}

SymVector apply_permutation(const Permutation& pi, const SymVector& w) {
  SymVector out(w.degree());
  const int size = static_cast<int>(pi.size());
  std::vector<int> seq;
  std::vector<FermionIndex> factors;
  for (const auto& [mon, c] : w.terms()) {
    int sign = 1;
    factors.clear();
    for (FermionIndex f : mon.flat()) {
      seq.clear();
      for (int x : f.indices()) seq.push_back(x <= size ? pi[static_cast<std::size_t>(x - 1)] : x);
      const SignedIndex s = canonicalize_index(seq);
      if (s.is_zero()) throw Error("apply_permutation: relabeling is not injective");
      sign *= s.sign;
      factors.push_back(s.index);
    }
    out.add(SymMonomial(factors), sign > 0 ? c : Rational(-c));
  }
  return out;
}

Permutation dominant_permutation(const WeightVector& weight) {
  const int n = weight.size();
  std::vector<int> order = identity_permutation(n);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a - 1] > weight[b - 1]; });
  Permutation pi(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) pi[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)] - 1)] = pos + 1;
  return pi;
}

namespace {

// All permutations that permute each block among itself.
std::vector<Permutation> block_permutations(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<Permutation> out;
  Permutation pi = identity_permutation(n);
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      out.push_back(pi);
      return;
    }
    std::vector<int> images = blocks[b];
    do {
      for (std::size_t a = 0; a < images.size(); ++a) pi[static_cast<std::size_t>(blocks[b][a] - 1)] = images[a];
      rec(b + 1);
    } while (std::next_permutation(images.begin(), images.end()));
    for (int x : blocks[b]) pi[static_cast<std::size_t>(x - 1)] = x;
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<Permutation> weight_stabilizer(const WeightVector& weight) {
  // Blocks in order of first appearance, so a dominant weight enumerates
  // its largest entries in the outermost loop.
  std::vector<int> values;
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < weight.size(); ++i) {
    if (weight[i] == 0) continue;
    const auto it = std::find(values.begin(), values.end(), weight[i]);
    if (it == values.end()) {
      values.push_back(weight[i]);
      blocks.push_back({i + 1});
    } else {
      blocks[static_cast<std::size_t>(it - values.begin())].push_back(i + 1);
    }
  }
  std::erase_if(blocks, [](const std::vector<int>& b) { return b.size() < 2; });
  return block_permutations(weight.size(), blocks);
}

bool term_list_less(const SymVector& a, const SymVector& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

CanonicalForm canonical_orbit_form(const SymVector& w, std::size_t max_candidates) {
  if (w.empty()) throw Error("canonical_orbit_form: zero vector");
  const int top = max_index(w);
  std::vector<long> count(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& [mon, c] : w.terms()) {
    for (FermionIndex f : mon.flat()) {
      for (int i : f.indices()) ++count[static_cast<std::size_t>(i)];
    }
  }
  std::vector<int> order = identity_permutation(top);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return count[static_cast<std::size_t>(a)] > count[static_cast<std::size_t>(b)];
  });
  Permutation relabel(static_cast<std::size_t>(top));
  for (int pos = 0; pos < top; ++pos) relabel[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)] - 1)] = pos + 1;
  const SymVector base = apply_permutation(relabel, w);

  // Blocks of equal nonzero count, now contiguous in 1..top.
  std::vector<std::vector<int>> blocks;
  std::size_t candidates = 1;
  for (int pos = 1; pos <= top;) {
    const long c = count[static_cast<std::size_t>(order[static_cast<std::size_t>(pos - 1)])];
    int end = pos;
    while (end < top && count[static_cast<std::size_t>(order[static_cast<std::size_t>(end)])] == c) ++end;
    if (c > 0 && end > pos) {
      std::vector<int> block(static_cast<std::size_t>(end - pos + 1));
      std::iota(block.begin(), block.end(), pos);
      for (int f = 2; f <= static_cast<int>(block.size()); ++f) {
        candidates = candidates > max_candidates ? candidates : candidates * static_cast<std::size_t>(f);
      }
      blocks.push_back(std::move(block));
    }
    pos = end + 1;
  }

  auto normalize = [](SymVector v) {
    CanonicalForm cf{std::move(v), Rational(0)};
    cf.scalar = cf.form.leading_coefficient();
    cf.form *= Rational(1 / cf.scalar);
    return cf;
  };
  if (candidates > max_candidates || blocks.empty()) return normalize(base);

  std::optional<CanonicalForm> best;
  for (const Permutation& sigma : block_permutations(top, blocks)) {
    CanonicalForm cf = normalize(apply_permutation(sigma, base));
    if (!best || term_list_less(cf.form, best->form)) best = std::move(cf);
  }
  return *best;
}

}  // namespace luinv
