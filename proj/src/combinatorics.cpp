#include "luinv/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "luinv/rational.hpp"

namespace luinv {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error("integer overflow in combinatorial count");
  }
  return a * b;
}

std::string join(const std::vector<int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

}  // namespace

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw Error("partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error("partition parts must be non-increasing");
  }
}

Partition Partition::rectangle(int part, int count) {
  return Partition(std::vector<int>(static_cast<std::size_t>(count), part));
}

std::vector<int> Partition::stripped() const {
  std::vector<int> out = parts_;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int Partition::length() const { return static_cast<int>(stripped().size()); }

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const { return join(stripped()); }

bool WeightVector::is_dominant() const {
  return std::is_sorted(entries_.begin(), entries_.end(), std::greater<>());
}

std::string WeightVector::to_string() const { return "(" + join(entries_) + ")"; }

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::less: return "less";
    case Dominance::equal: return "equal";
    case Dominance::greater: return "greater";
    case Dominance::incomparable: return "incomparable";
  }
  return "?";
}

std::uint64_t multinomial(std::span<const int> ks) {
  // Product of binomials: C(k1, k1) * C(k1+k2, k2) * ...
  std::uint64_t result = 1;
  std::int64_t running = 0;
  for (int k : ks) {
    if (k < 0) throw Error("multinomial: negative entry");
    running += k;
    result = checked_mul(result, binomial(running, k));
  }
  return result;
}

std::uint64_t multinomial(std::initializer_list<int> ks) {
  return multinomial(std::span<const int>(ks.begin(), ks.size()));
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact at every step: the running value is C(n-k+i, i).
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto top = static_cast<std::uint64_t>(n - k + i);
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    result = checked_mul(result / g, top / (static_cast<std::uint64_t>(i) / g));
  }
  return result;
}

std::uint64_t weyl_dimension(const Partition& lambda, int n) {
  const std::vector<int> parts = lambda.stripped();
  if (static_cast<int>(parts.size()) > n) throw Error("partition exceeds dimension");
  std::vector<int> padded(static_cast<std::size_t>(n), 0);
  std::copy(parts.begin(), parts.end(), padded.begin());
  Rational product(1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      product *= frac(padded[static_cast<std::size_t>(i)] - padded[static_cast<std::size_t>(j)] + j - i, j - i);
    }
  }
  product.canonicalize();
  if (product.get_den() != 1 || sgn(product) <= 0 || !product.get_num().fits_ulong_p()) {
    throw Error("weyl_dimension: product is not a positive machine integer");
  }
  return product.get_num().get_ui();
}

std::uint64_t sym_power_dimension(int n, int k, int m) {
  if (k < 0 || k > n) throw Error("sym_power_dimension: requires 0 <= k <= n");
  if (m < 0) throw Error("sym_power_dimension: requires m >= 0");
  const std::uint64_t d = binomial(n, k);
  return binomial(static_cast<std::int64_t>(d) + m - 1, m);
}

Dominance dominance_compare(const WeightVector& lambda, const WeightVector& mu) {
  if (lambda.size() != mu.size()) throw Error("dominance_compare: length mismatch");
  auto positive = [](const WeightVector& a, const WeightVector& b) {
    long prefix = 0;
    for (int i = 0; i < a.size(); ++i) {
      prefix += a[i] - b[i];
      if (i + 1 < a.size() && prefix < 0) return false;
    }
    return prefix == 0;
  };
  if (lambda == mu) return Dominance::equal;
  if (positive(lambda, mu)) return Dominance::greater;
  if (positive(mu, lambda)) return Dominance::less;
  return Dominance::incomparable;
}

void for_each_k_subset(int n, int k, const std::function<void(std::span<const int>)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 1);
  while (true) {
    visit(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) return;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_k_subset(n, k, [&](std::span<const int> s) { out.emplace_back(s.begin(), s.end()); });
  return out;
}

int permutation_sign(std::span<const int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) throw Error("permutation_sign: repeated entry");
      if (seq[i] > seq[j]) sign = -sign;
    }
  }
  return sign;
}

std::uint64_t distinct_arrangements(std::span<const int> entries) {
  std::map<int, int> counts;
  for (int e : entries) ++counts[e];
  std::vector<int> ks;
  for (const auto& [value, count] : counts) ks.push_back(count);
  return multinomial(ks);
}

}  // namespace luinv
