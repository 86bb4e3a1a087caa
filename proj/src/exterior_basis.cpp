#include "luinv/exterior_basis.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <set>
#include <ostream>
#include <sstream>

#include "luinv/combinatorics.hpp"
#include "luinv/random.hpp"
#include "text_util.hpp"

namespace luinv {

FermionIndex FermionIndex::from_sorted(std::span<const int> indices) {
  std::uint64_t bits = 0;
  int prev = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxModes) throw Error("fermion index out of range: " + std::to_string(i));
    if (i <= prev) throw Error("fermion index list is not strictly increasing");
    bits |= std::uint64_t{1} << (i - 1);
    prev = i;
  }
  return from_bits(bits);
}

std::vector<int> FermionIndex::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string FermionIndex::to_string() const {
  std::string s;
  for (int i : indices()) {
    if (!s.empty()) s += ',';
    s += std::to_string(i);
  }
  return s;
}

std::string FermionIndex::label() const {
  if (max_index() <= 9) {
    std::string s;
    for (int i : indices()) s += static_cast<char>('0' + i);
    return s;
  }
  return "{" + to_string() + "}";
}

SignedIndex canonicalize_index(std::span<const int> seq) {
  std::uint64_t bits = 0;
  int sign = 1;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    const int i = seq[a];
    if (i < 1 || i > kMaxModes) throw Error("fermion index out of range: " + std::to_string(i));
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    if (bits & bit) return {};
    // Inversions against earlier entries that are larger.
    if (std::popcount(bits & ~((bit << 1) - 1)) & 1) sign = -sign;
    bits |= bit;
  }
  return {FermionIndex::from_bits(bits), sign};
}

template <class Amp>
BasicFermionState<Amp>::BasicFermionState(int n, int k) : n_(n), k_(k) {
  if (n < 0 || n > kMaxModes) throw Error("mode count must be within 0..64");
  if (k < 0 || k > n) throw Error("particle number must satisfy 0 <= k <= n");
}

template <class Amp>
void BasicFermionState<Amp>::check(FermionIndex idx) const {
  if (idx.size() != k_ || idx.max_index() > n_) {
    throw Error("index {" + idx.to_string() + "} is not a " + std::to_string(k_) + "-subset of [" +
                std::to_string(n_) + "]");
  }
}

template <class Amp>
Amp BasicFermionState<Amp>::amplitude(FermionIndex idx) const {
  const auto it = amps_.find(idx);
  return it == amps_.end() ? Amp{} : it->second;
}

template <class Amp>
Amp BasicFermionState<Amp>::amplitude(std::span<const int> seq) const {
  const SignedIndex s = canonicalize_index(seq);
  if (s.is_zero()) return Amp{};
  Amp a = amplitude(s.index);
  if (s.sign < 0) a = -a;
  return a;
}

template <class Amp>
Amp BasicFermionState<Amp>::amplitude(std::initializer_list<int> seq) const {
  return amplitude(std::span<const int>(seq.begin(), seq.size()));
}

template <class Amp>
void BasicFermionState<Amp>::set(FermionIndex idx, Amp value) {
  check(idx);
  if (AmplitudeTraits<Amp>::is_zero(value)) {
    amps_.erase(idx);
  } else {
    amps_[idx] = std::move(value);
  }
}

template <class Amp>
void BasicFermionState<Amp>::add(FermionIndex idx, const Amp& value) {
  check(idx);
  Amp& slot = amps_[idx];
  slot += value;
  if (AmplitudeTraits<Amp>::is_zero(slot)) amps_.erase(idx);
}

template <class Amp>
BasicFermionState<Amp> BasicFermionState<Amp>::with_modes(int n) const {
  if (n < n_) throw Error("with_modes: cannot shrink the mode space");
  BasicFermionState out(n, k_);
  out.amps_ = amps_;
  return out;
}

template class BasicFermionState<std::complex<double>>;
template class BasicFermionState<ComplexRational>;

template <class Amp>
RealOf<Amp> state_norm_sq(const BasicFermionState<Amp>& psi) {
  RealOf<Amp> total{0};
  for (const auto& [idx, a] : psi.amplitudes()) total += AmplitudeTraits<Amp>::abs2(a);
  return total;
}

template double state_norm_sq(const FermionState&);
template Rational state_norm_sq(const ExactFermionState&);

FermionState to_numeric(const ExactFermionState& psi) {
  FermionState out(psi.n(), psi.k());
  for (const auto& [idx, a] : psi.amplitudes()) out.set(idx, to_complex(a));
  return out;
}

FermionState normalized(const FermionState& psi) {
  const double nsq = state_norm_sq(psi);
  if (nsq == 0.0) throw Error("cannot normalize the zero state");
  const double inv = 1.0 / std::sqrt(nsq);
  FermionState out(psi.n(), psi.k());
  for (const auto& [idx, a] : psi.amplitudes()) out.set(idx, a * inv);
  return out;
}

std::complex<double> minor_det(const Eigen::MatrixXcd& u, std::span<const int> rows, std::span<const int> cols) {
  const std::size_t k = rows.size();
  if (k == 0) return 1.0;
  if (k == 1) return u(rows[0] - 1, cols[0] - 1);
  std::complex<double> total = 0.0;
  std::vector<int> rest(cols.begin() + 1, cols.end());
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) rest[c - 1] = cols[c - 1];
    const std::complex<double> entry = u(rows[0] - 1, cols[c] - 1);
    if (entry == 0.0) continue;
    const std::complex<double> sub = minor_det(u, rows.subspan(1), rest);
    total += (c % 2 == 0 ? 1.0 : -1.0) * entry * sub;
  }
  return total;
}

FermionState lift_unitary(const Eigen::MatrixXcd& u, const FermionState& psi) {
  if (u.rows() != psi.n() || u.cols() != psi.n()) throw Error("lift_unitary: matrix size does not match mode count");
  FermionState out(psi.n(), psi.k());
  std::vector<std::pair<std::vector<int>, std::complex<double>>> support;
  for (const auto& [idx, a] : psi.amplitudes()) support.emplace_back(idx.indices(), a);
  for_each_k_subset(psi.n(), psi.k(), [&](std::span<const int> rows) {
    std::complex<double> value = 0.0;
    for (const auto& [cols, a] : support) value += minor_det(u, rows, cols) * a;
    if (value != 0.0) out.set(FermionIndex::from_sorted(rows), value);
  });
  return out;
}

FermionState random_state(int n, int k, std::uint64_t seed) {
  if (k <= 0 || k > n) throw Error("random_state: requires 0 < k <= n");
  Rng rng(seed);
  FermionState psi(n, k);
  for_each_k_subset(n, k, [&](std::span<const int> s) { psi.set(FermionIndex::from_sorted(s), rng.complex_normal()); });
  return normalized(psi);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::pair<double, std::optional<Rational>> parse_real_token(const std::string& token) {
  try {
    Rational q = parse_rational(token);
    return {to_double(q), q};
  } catch (const ParseError&) {
  }
  char* end = nullptr;
  const double x = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(x)) {
    throw ParseError("malformed number '" + token + "'");
  }
  return {x, std::nullopt};
}

using detail::parse_int_list;
using detail::parse_key_int;
using detail::strip_comment;

FermionStateFile read_fermion_state(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  FermionState numeric;
  ExactFermionState exact;
  bool all_exact = true;
  std::set<FermionIndex> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag, nk, kk, extra;
      ls >> tag >> nk >> kk;
      if (tag != "fermion" || (ls >> extra)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'fermion n=<n> k=<k>'");
      }
      const int n = parse_key_int(nk, "n", line_no);
      const int k = parse_key_int(kk, "k", line_no);
      if (n < 1 || n > kMaxModes || k < 1 || k > n) {
        throw ParseError("line " + std::to_string(line_no) + ": header requires 1 <= k <= n <= 64");
      }
      numeric = FermionState(n, k);
      exact = ExactFermionState(n, k);
      have_header = true;
      continue;
    }
    std::string idx_tok, re_tok, im_tok, extra;
    ls >> idx_tok >> re_tok >> im_tok;
    if (im_tok.empty() || (ls >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '<i1>,...,<ik><TAB><re> <im>'");
    }
    const std::vector<int> idx = parse_int_list(idx_tok, ',', line_no);
    if (static_cast<int>(idx.size()) != numeric.k()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(numeric.k()) + " indices");
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (idx[a] < 1 || idx[a] > numeric.n()) {
        throw ParseError("line " + std::to_string(line_no) + ": index " + std::to_string(idx[a]) + " outside 1.." +
                         std::to_string(numeric.n()));
      }
      if (a > 0 && idx[a] <= idx[a - 1]) {
        throw ParseError("line " + std::to_string(line_no) + ": index list '" + idx_tok + "' is not strictly increasing");
      }
    }
    std::pair<double, std::optional<Rational>> re, im;
    try {
      re = parse_real_token(re_tok);
      im = parse_real_token(im_tok);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    const FermionIndex key = FermionIndex::from_sorted(idx);
    if (!seen.insert(key).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate index '" + idx_tok + "'");
    }
    numeric.set(key, {re.first, im.first});
    if (re.second && im.second) {
      exact.set(key, ComplexRational(*re.second, *im.second));
    } else {
      all_exact = false;
    }
  }
  if (!have_header) throw ParseError("line " + std::to_string(line_no) + ": missing 'fermion' header");
  FermionStateFile file{numeric, std::nullopt};
  if (all_exact) file.exact = exact;
  return file;
}

void write_fermion_state(std::ostream& out, const FermionState& psi) {
  out << "fermion n=" << psi.n() << " k=" << psi.k() << "\n";
  for (const auto& [idx, a] : psi.amplitudes()) {
    out << idx.to_string() << "\t" << format_double(a.real()) << " " << format_double(a.imag()) << "\n";
  }
}

void write_fermion_state(std::ostream& out, const ExactFermionState& psi) {
  out << "fermion n=" << psi.n() << " k=" << psi.k() << "\n";
  for (const auto& [idx, a] : psi.amplitudes()) {
    out << idx.to_string() << "\t" << to_short_string(a.re) << " " << to_short_string(a.im) << "\n";
  }
}

}  // namespace luinv
