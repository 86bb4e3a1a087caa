#include "luinv/subspace_builder.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "luinv/group_action.hpp"
#include "text_util.hpp"

namespace luinv {

namespace {

struct TermListLess {
  bool operator()(const SymVector& a, const SymVector& b) const { return term_list_less(a, b); }
};

// Incremental exact Gram-Schmidt within one weight space.
class Bucket {
 public:
  SymVector reduce(const SymVector& v) const {
    SymVector r = v;
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      const Rational c = inner_product(basis_[a], r) / norms_[a];
      if (sgn(c) != 0) r.add_scaled(basis_[a], Rational(-c));
    }
    return r;
  }
  bool insert(const SymVector& v) {
    SymVector r = reduce(v);
    if (r.empty()) return false;
    norms_.push_back(inner_product(r, r));
    basis_.push_back(std::move(r));
    return true;
  }
  std::size_t dimension() const { return basis_.size(); }

 private:
  std::vector<SymVector> basis_;
  std::vector<Rational> norms_;
};

SymVector to_dominant(const SymVector& v, int n) {
  const WeightVector w = weight_of(v, n);
  if (w.is_dominant()) return v;
  return apply_permutation(dominant_permutation(w), v);
}

SymVector seed_vector(int k, int m) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) idx[static_cast<std::size_t>(a)] = a + 1;
  const FermionIndex f = FermionIndex::from_sorted(idx);
  SymVector seed(m);
  seed.add(SymMonomial(std::vector<FermionIndex>(static_cast<std::size_t>(m), f)), Rational(1));
  return seed;
}

// Term count first; equal counts compare monomial lists entrywise with the
// larger monomial first.
bool processing_order(const SymVector& a, const SymVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ib->first < ia->first;
  }
  return false;
}

void check_shape(int k, int m, int n) {
  if (k < 1 || m < 1) throw Error("requires k >= 1 and m >= 1");
  if (n < k) throw Error("requires n >= k");
  if (n > kMaxModes) throw Error("requires n <= 64");
}

int count_nonzero(const WeightVector& w) {
  return static_cast<int>(std::count_if(w.entries().begin(), w.entries().end(), [](int x) { return x != 0; }));
}

WeightVector resize_weight(const WeightVector& w, int n) {
  std::vector<int> e;
  for (int x : w.entries()) {
    if (x != 0) e.push_back(x);
  }
  if (static_cast<int>(e.size()) > n) throw Error("weight needs more than n indices");
  e.resize(static_cast<std::size_t>(n), 0);
  return WeightVector(std::move(e));
}

}  // namespace

ClosureResult good_set_closure(int k, int m, int n, const ClosureOptions& options) {
  check_shape(k, m, n);
  ClosureResult result;
  ClosureStats& stats = result.stats;
  stats.target = weyl_dimension(Partition::rectangle(m, k), n);
  const int cap = options.max_rounds > 0 ? options.max_rounds : k * m;

  std::map<WeightVector, Bucket> buckets;
  std::set<SymVector, TermListLess> seen;

  auto accept = [&](const SymVector& v) {
    const SymVector dom = to_dominant(v, n);
    if (options.dedup_by_canonical_form && !seen.insert(canonical_orbit_form(dom).form).second) return false;
    const WeightVector w = weight_of(dom, n);
    Bucket& bucket = buckets[w];
    // The span is stable under the stabilizer of w, so one test suffices.
    if (bucket.reduce(dom).empty()) return false;
    std::size_t added = 0;
    for (const Permutation& sigma : weight_stabilizer(w)) {
      SymVector image = primitive(apply_permutation(sigma, dom));
      if (bucket.insert(image)) ++added;
      result.generators.push_back(std::move(image));
    }
    stats.spanned += added * distinct_arrangements(w.entries());
    ++stats.contributing;
    result.types.push_back(dom);
    return true;
  };

  std::vector<SymVector> level{seed_vector(k, m)};
  accept(level.front());
  while (stats.spanned < stats.target) {
    if (level.empty() || stats.rounds >= cap) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "closure did not certify: spanned %llu of %llu after %d rounds",
                    static_cast<unsigned long long>(stats.spanned), static_cast<unsigned long long>(stats.target),
                    stats.rounds);
      throw Error(msg);
    }
    ++stats.rounds;
    std::vector<SymVector> next;
    for (const SymVector& v : level) {
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          const TransvectionPolynomial poly = apply_transvection(i, j, v);
          for (std::size_t r = 1; r < poly.coefficients.size(); ++r) {
            const SymVector& c = poly.coefficients[r];
            if (c.empty()) continue;
            ++stats.coefficient_vectors;
            if (accept(c)) next.push_back(c);
          }
        }
      }
    }
    level = std::move(next);
  }
  return result;
}

std::vector<SymVector> orbit_members(const SymVector& rep, const WeightVector& weight) {
  const std::vector<int>& mu = weight.entries();
  const int n = weight.size();
  std::vector<int> arrangement = mu;
  std::sort(arrangement.begin(), arrangement.end());
  std::vector<std::vector<int>> arrangements;
  do {
    arrangements.push_back(arrangement);
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  std::sort(arrangements.begin(), arrangements.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });

  std::vector<SymVector> members;
  members.reserve(arrangements.size());
  for (const std::vector<int>& a : arrangements) {
    // The t-th position of each value in mu goes to its t-th position in a.
    Permutation pi(static_cast<std::size_t>(n));
    std::map<int, int> cursor;
    std::map<int, std::vector<int>> slots;
    for (int q = 0; q < n; ++q) slots[a[static_cast<std::size_t>(q)]].push_back(q + 1);
    for (int p = 0; p < n; ++p) {
      const int value = mu[static_cast<std::size_t>(p)];
      pi[static_cast<std::size_t>(p)] = slots[value][static_cast<std::size_t>(cursor[value]++)];
    }
    members.push_back(apply_permutation(pi, rep));
  }
  return members;
}

SubspaceBasis gram_schmidt_by_weight(const std::vector<SymVector>& gens, int k, int m, int n) {
  check_shape(k, m, n);
  std::map<WeightVector, std::vector<SymVector>, std::greater<>> buckets;
  std::set<SymVector, TermListLess> seen;
  for (const SymVector& g : gens) {
    if (g.empty()) continue;
    if (g.degree() != m) throw Error("gram_schmidt_by_weight: generator degree differs from m");
    SymVector p = primitive(to_dominant(g, n));
    if (!seen.insert(p).second) continue;
    const WeightVector w = weight_of(p, n);
    buckets[w].push_back(std::move(p));
  }

  SubspaceBasis basis;
  basis.k = k;
  basis.m = m;
  basis.n = n;
  basis.lambda = Partition::rectangle(m, k);
  for (auto& [w, vecs] : buckets) {
    std::stable_sort(vecs.begin(), vecs.end(), processing_order);
    std::vector<OrthoFamily> out;
    for (const SymVector& v : vecs) {
      SymVector r = v;
      for (const OrthoFamily& f : out) {
        const Rational c = inner_product(f.representative, r) * f.inv_norm_sq;
        if (sgn(c) != 0) r.add_scaled(f.representative, Rational(-c));
      }
      if (r.empty()) continue;
      mpz_class den = 1;
      for (const auto& [mon, c] : r.terms()) den = lcm(den, c.get_den());
      r *= Rational(den);
      OrthoFamily fam;
      fam.inv_norm_sq = 1 / inner_product(r, r);
      fam.representative = std::move(r);
      fam.weight = w;
      fam.pattern_size = count_nonzero(w);
      out.push_back(std::move(fam));
    }
    for (OrthoFamily& f : out) {
      f.orbit_members = orbit_members(f.representative, f.weight);
      basis.total_dimension += f.orbit_size();
      basis.families.push_back(std::move(f));
    }
  }
  return basis;
}

SubspaceBasis expand_orbits(const SubspaceBasis& basis, int n) {
  check_shape(basis.k, basis.m, n);
  SubspaceBasis out;
  out.k = basis.k;
  out.m = basis.m;
  out.n = n;
  out.lambda = basis.lambda;
  for (const OrthoFamily& f : basis.families) {
    if (f.pattern_size > n) continue;
    OrthoFamily g;
    g.representative = f.representative;
    g.inv_norm_sq = f.inv_norm_sq;
    g.pattern_size = f.pattern_size;
    g.weight = resize_weight(f.weight, n);
    g.orbit_members = orbit_members(g.representative, g.weight);
    out.total_dimension += g.orbit_size();
    out.families.push_back(std::move(g));
  }
  return out;
}

SubspaceBasis build_highest_weight_basis(int k, int m, int n, const ClosureOptions& options) {
  check_shape(k, m, n);
  const int n0 = k * m;
  if (n0 > kMaxModes) throw Error("requires k*m <= 64");
  const ClosureResult closure = good_set_closure(k, m, n0, options);
  SubspaceBasis basis = gram_schmidt_by_weight(closure.generators, k, m, n0);
  if (n != n0) basis = expand_orbits(basis, n);
  const std::uint64_t expected = weyl_dimension(basis.lambda, n);
  if (basis.total_dimension != expected) {
    throw Error("closure did not certify: basis dimension " + std::to_string(basis.total_dimension) +
                " differs from " + std::to_string(expected));
  }
  return basis;
}

void write_basis(std::ostream& out, const SubspaceBasis& basis) {
  out << "basis k=" << basis.k << " m=" << basis.m << " n=" << basis.n << " lambda=" << basis.lambda.to_string()
      << " family_count=" << basis.families.size() << "\n";
  for (const OrthoFamily& f : basis.families) {
    out << "family inv_norm_sq=" << to_fraction_string(f.inv_norm_sq) << " terms=" << f.representative.size() << "\n";
    for (const auto& [mon, c] : f.representative.terms()) out << format_term_line(mon, c) << "\n";
  }
}

SubspaceBasis read_basis(std::istream& in) {
  using detail::parse_key_int;
  using detail::parse_int_list;
  using detail::strip_comment;
  std::string raw;
  int line_no = 0;
  auto next_line = [&](std::string& line) {
    while (std::getline(in, raw)) {
      ++line_no;
      line = strip_comment(raw);
      if (!line.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(line_no) + ": " + msg); };

  std::string line;
  if (!next_line(line)) fail("missing 'basis' header");
  std::istringstream hs(line);
  std::string tag, kt, mt, nt, lt, ft, extra;
  hs >> tag >> kt >> mt >> nt >> lt >> ft;
  if (tag != "basis" || ft.empty() || (hs >> extra)) {
    fail("expected 'basis k=<k> m=<m> n=<n> lambda=<parts> family_count=<F>'");
  }
  const int k = parse_key_int(kt, "k", line_no);
  const int m = parse_key_int(mt, "m", line_no);
  const int n = parse_key_int(nt, "n", line_no);
  if (lt.rfind("lambda=", 0) != 0) fail("expected 'lambda=<parts>'");
  const std::vector<int> parts = parse_int_list(lt.substr(7), ',', line_no);
  const int family_count = parse_key_int(ft, "family_count", line_no);
  if (k < 1 || m < 1 || n < k || n > kMaxModes || family_count < 0) fail("header values out of range");
  if (!(Partition(parts) == Partition::rectangle(m, k))) fail("lambda must be (m^k)");

  SubspaceBasis basis;
  basis.k = k;
  basis.m = m;
  basis.n = n;
  basis.lambda = Partition::rectangle(m, k);
  for (int fi = 0; fi < family_count; ++fi) {
    if (!next_line(line)) fail("expected " + std::to_string(family_count) + " families");
    std::istringstream fs(line);
    std::string ftag, inv_tok, terms_tok;
    fs >> ftag >> inv_tok >> terms_tok;
    if (ftag != "family" || inv_tok.rfind("inv_norm_sq=", 0) != 0 || terms_tok.empty() || (fs >> extra)) {
      fail("expected 'family inv_norm_sq=<p>/<q> terms=<T>'");
    }
    Rational inv;
    try {
      inv = parse_rational(inv_tok.substr(12));
    } catch (const ParseError& e) {
      fail(e.what());
    }
    const int terms = parse_key_int(terms_tok, "terms", line_no);
    if (terms < 1) fail("family needs at least one term");
    const int family_line = line_no;
    OrthoFamily fam;
    for (int t = 0; t < terms; ++t) {
      if (!next_line(line)) fail("expected " + std::to_string(terms) + " term lines");
      std::pair<SymMonomial, Rational> term;
      try {
        term = parse_term_line(line);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      if (term.first.degree() != m) fail("monomial degree differs from m");
      for (FermionIndex f : term.first.flat()) {
        if (f.size() != k || f.max_index() > n) fail("factor {" + f.to_string() + "} is not a k-subset of [n]");
      }
      if (fam.representative.terms().count(term.first)) fail("repeated monomial");
      fam.representative.add(term.first, term.second);
    }
    if (fam.representative.empty()) fail("family vector is zero");
    WeightVector w;
    try {
      w = weight_of(fam.representative, n);
    } catch (const Error& e) {
      fail(e.what());
    }
    if (!w.is_dominant()) fail("family representative does not have a dominant weight");
    if (inv != 1 / inner_product(fam.representative, fam.representative)) {
      throw ParseError("line " + std::to_string(family_line) + ": inv_norm_sq does not match the representative");
    }
    fam.inv_norm_sq = inv;
    fam.weight = w;
    fam.pattern_size = count_nonzero(w);
    fam.orbit_members = orbit_members(fam.representative, fam.weight);
    basis.total_dimension += fam.orbit_size();
    basis.families.push_back(std::move(fam));
  }
  if (next_line(line)) fail("unexpected trailing content");
  return basis;
}

void print_family_table(std::ostream& out, const SubspaceBasis& basis) {
  out << "basis k=" << basis.k << " m=" << basis.m << " n=" << basis.n << " lambda=(" << basis.lambda.to_string()
      << ") dimension=" << basis.total_dimension << " weyl=" << weyl_dimension(basis.lambda, basis.n)
      << " families=" << basis.families.size() << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-20s %8s %12s  %s\n", "weight", "orbit", "inv_norm_sq", "representative");
  out << buf;
  for (const OrthoFamily& f : basis.families) {
    std::vector<int> nz;
    for (int x : f.weight.entries()) {
      if (x != 0) nz.push_back(x);
    }
    std::snprintf(buf, sizeof buf, "%-20s %8llu %12s  ", WeightVector(nz).to_string().c_str(),
                  static_cast<unsigned long long>(f.orbit_size()), to_short_string(f.inv_norm_sq).c_str());
    out << buf << pretty(f.representative) << "\n";
  }
}

}  // namespace luinv
