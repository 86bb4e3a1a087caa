#include "luinv/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>

#include "luinv/random.hpp"
#include "text_util.hpp"

namespace luinv {

template <class Amp>
BasicDistinguishableState<Amp>::BasicDistinguishableState(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error("distinguishable state needs at least one party");
  int total = 0;
  for (int d : dims_) {
    if (d < 1) throw Error("subsystem dimensions must be positive");
    total += d;
  }
  if (total > kMaxModes) throw Error("total dimension exceeds 64 modes");
}

template <class Amp>
void BasicDistinguishableState<Amp>::check(const std::vector<int>& labels) const {
  if (labels.size() != dims_.size()) throw Error("label count differs from the number of parties");
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (labels[a] < 1 || labels[a] > dims_[a]) {
      throw Error("label " + std::to_string(labels[a]) + " outside 1.." + std::to_string(dims_[a]) + " for party " +
                  std::to_string(a + 1));
    }
  }
}

template <class Amp>
Amp BasicDistinguishableState<Amp>::amplitude(const std::vector<int>& labels) const {
  const auto it = amps_.find(labels);
  return it == amps_.end() ? Amp{} : it->second;
}

template <class Amp>
void BasicDistinguishableState<Amp>::set(const std::vector<int>& labels, Amp value) {
  check(labels);
  if (AmplitudeTraits<Amp>::is_zero(value)) {
    amps_.erase(labels);
  } else {
    amps_[labels] = std::move(value);
  }
}

template class BasicDistinguishableState<std::complex<double>>;
template class BasicDistinguishableState<ComplexRational>;

template <class Amp>
BasicFermionState<Amp> embed_distinguishable(const BasicDistinguishableState<Amp>& phi) {
  int n = 0;
  std::vector<int> offsets;
  for (int d : phi.dims()) {
    offsets.push_back(n);
    n += d;
  }
  BasicFermionState<Amp> psi(n, phi.parties());
  std::vector<int> idx(phi.dims().size());
  for (const auto& [labels, a] : phi.amplitudes()) {
    for (std::size_t p = 0; p < labels.size(); ++p) idx[p] = offsets[p] + labels[p];
    psi.set(FermionIndex::from_sorted(idx), a);
  }
  return psi;
}

template <class Amp>
InvariantOf<Amp> eval_three_qubit_I222(const BasicDistinguishableState<Amp>& phi) {
  using T = AmplitudeTraits<Amp>;
  if (phi.dims() != std::vector<int>{2, 2, 2}) throw Error("eval_three_qubit_I222: requires dims 2,2,2");
  auto p = [&](int i, int j, int k) { return phi.amplitude({i + 1, j + 1, k + 1}); };
  auto r = [](long a, long b) { return T::real_from_rational(frac(a, b)); };
  const Amp two = T::from_rational(Rational(2));
  const Amp three = T::from_rational(Rational(3));
  RealOf<Amp> s{0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const Amp a = p(i, j, k);
        s += T::abs2(a * a);
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      s += r(2, 1) * (T::abs2(p(i, j, 0) * p(i, j, 1)) + T::abs2(p(i, 0, j) * p(i, 1, j)) + T::abs2(p(0, i, j) * p(1, i, j)));
    }
  }
  for (int i = 0; i < 2; ++i) {
    s += T::abs2(p(i, 0, 1) * p(i, 1, 0));
    s += r(1, 3) * T::abs2(p(i, 0, 1) * p(i, 1, 0) + two * p(i, 0, 0) * p(i, 1, 1));
    s += T::abs2(p(0, i, 1) * p(1, i, 0));
    s += r(1, 3) * T::abs2(p(0, i, 1) * p(1, i, 0) + two * p(0, i, 0) * p(1, i, 1));
    s += T::abs2(p(0, 1, i) * p(1, 0, i));
    s += r(1, 3) * T::abs2(p(0, 1, i) * p(1, 0, i) + two * p(0, 0, i) * p(1, 1, i));
  }
  const Amp a = p(0, 0, 0) * p(1, 1, 1);
  const Amp b = p(0, 0, 1) * p(1, 1, 0);
  const Amp c = p(0, 1, 1) * p(1, 0, 0);
  const Amp d = p(0, 1, 0) * p(1, 0, 1);
  s += r(1, 2) * T::abs2(a);
  s += r(1, 6) * T::abs2(a + two * b);
  s += r(1, 6) * T::abs2(a + two * c);
  s += r(1, 18) * T::abs2(a - two * b - two * c);
  s += r(1, 9) * T::abs2(a + b + three * d + c);
  InvariantOf<Amp> out;
  out.value = std::move(s);
  out.lambda = Partition{2, 2, 2};
  out.k = 3;
  out.m = 2;
  return out;
}

template <class Amp>
RealOf<Amp> state_norm_sq(const BasicDistinguishableState<Amp>& phi) {
  RealOf<Amp> total{0};
  for (const auto& [labels, a] : phi.amplitudes()) total += AmplitudeTraits<Amp>::abs2(a);
  return total;
}

template <class Amp>
BasicDistinguishableState<Amp> swap_parties(const BasicDistinguishableState<Amp>& phi, int a, int b) {
  if (a < 0 || b < 0 || a >= phi.parties() || b >= phi.parties()) throw Error("swap_parties: party out of range");
  std::vector<int> dims = phi.dims();
  std::swap(dims[static_cast<std::size_t>(a)], dims[static_cast<std::size_t>(b)]);
  BasicDistinguishableState<Amp> out(dims);
  for (const auto& [key, v] : phi.amplitudes()) {
    std::vector<int> labels = key;
    std::swap(labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)]);
    out.set(labels, v);
  }
  return out;
}

template <class Amp>
RealOf<Amp> concurrence_sq(const BasicDistinguishableState<Amp>& phi) {
  using T = AmplitudeTraits<Amp>;
  if (phi.parties() != 2) throw Error("concurrence_sq: requires two parties");
  const int n1 = phi.dims()[0];
  const int n2 = phi.dims()[1];
  RealOf<Amp> total{0};
  for (int a = 1; a <= n1; ++a) {
    for (int b = a + 1; b <= n1; ++b) {
      for (int c = 1; c <= n2; ++c) {
        for (int d = c + 1; d <= n2; ++d) {
          total += T::abs2(phi.amplitude({a, c}) * phi.amplitude({b, d}) - phi.amplitude({a, d}) * phi.amplitude({b, c}));
        }
      }
    }
  }
  return T::real_from_rational(Rational(4)) * total;
}

#define LUINV_INSTANTIATE(Amp)                                                                        \
  template BasicFermionState<Amp> embed_distinguishable(const BasicDistinguishableState<Amp>&);     \
  template InvariantOf<Amp> eval_three_qubit_I222(const BasicDistinguishableState<Amp>&);           \
  template RealOf<Amp> state_norm_sq(const BasicDistinguishableState<Amp>&);                        \
  template BasicDistinguishableState<Amp> swap_parties(const BasicDistinguishableState<Amp>&, int, int); \
  template RealOf<Amp> concurrence_sq(const BasicDistinguishableState<Amp>&);

LUINV_INSTANTIATE(std::complex<double>)
LUINV_INSTANTIATE(ComplexRational)

#undef LUINV_INSTANTIATE

DistinguishableState to_numeric(const ExactDistinguishableState& phi) {
  DistinguishableState out(phi.dims());
  for (const auto& [labels, a] : phi.amplitudes()) out.set(labels, to_complex(a));
  return out;
}

DistinguishableState normalized(const DistinguishableState& phi) {
  const double nsq = state_norm_sq(phi);
  if (nsq == 0.0) throw Error("cannot normalize the zero state");
  const double inv = 1.0 / std::sqrt(nsq);
  DistinguishableState out(phi.dims());
  for (const auto& [labels, a] : phi.amplitudes()) out.set(labels, a * inv);
  return out;
}

namespace {

// Calls visit(labels) for every label tuple in lexicographic order.
template <class F>
void for_each_label(const std::vector<int>& dims, F&& visit) {
  std::vector<int> labels(dims.size(), 1);
  while (true) {
    visit(labels);
    std::size_t p = dims.size();
    while (p > 0) {
      --p;
      if (labels[p] < dims[p]) {
        ++labels[p];
        break;
      }
      labels[p] = 1;
      if (p == 0) return;
    }
  }
}

}  // namespace

DistinguishableState apply_local(const std::vector<Eigen::MatrixXcd>& locals, const DistinguishableState& phi) {
  if (locals.size() != phi.dims().size()) throw Error("apply_local: one matrix per party required");
  for (std::size_t p = 0; p < locals.size(); ++p) {
    if (locals[p].rows() != phi.dims()[p] || locals[p].cols() != phi.dims()[p]) throw Error("apply_local: size mismatch");
  }
  DistinguishableState out(phi.dims());
  for_each_label(phi.dims(), [&](const std::vector<int>& rows) {
    std::complex<double> v = 0.0;
    for (const auto& [cols, a] : phi.amplitudes()) {
      std::complex<double> w = a;
      for (std::size_t p = 0; p < rows.size(); ++p) w *= locals[p](rows[p] - 1, cols[p] - 1);
      v += w;
    }
    out.set(rows, v);
  });
  return out;
}

Eigen::MatrixXcd direct_sum(const std::vector<Eigen::MatrixXcd>& locals) {
  Eigen::Index n = 0;
  for (const auto& u : locals) n += u.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index o = 0;
  for (const auto& u : locals) {
    out.block(o, o, u.rows(), u.cols()) = u;
    o += u.rows();
  }
  return out;
}

DistinguishableState random_distinguishable(const std::vector<int>& dims, std::uint64_t seed) {
  Rng rng(seed);
  DistinguishableState phi(dims);
  for_each_label(dims, [&](const std::vector<int>& labels) { phi.set(labels, rng.complex_normal()); });
  return normalized(phi);
}

DistinguishableStateFile read_distinguishable_state(std::istream& in, LabelBase base) {
  using detail::parse_int_list;
  using detail::strip_comment;
  struct Row {
    int line;
    std::vector<int> labels;
    std::pair<double, std::optional<Rational>> re, im;
  };
  std::string raw;
  int line_no = 0;
  std::vector<int> dims;
  bool have_header = false;
  std::vector<Row> rows;
  auto fail = [&](int line, const std::string& msg) { throw ParseError("line " + std::to_string(line) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag, dt, extra;
      ls >> tag >> dt;
      if (tag != "distinguishable" || dt.rfind("dims=", 0) != 0 || (ls >> extra)) {
        fail(line_no, "expected header 'distinguishable dims=<n1>,<n2>,...'");
      }
      dims = parse_int_list(dt.substr(5), ',', line_no);
      int total = 0;
      for (int d : dims) {
        if (d < 1) fail(line_no, "dimensions must be positive");
        total += d;
      }
      if (dims.empty() || total > kMaxModes) fail(line_no, "dimensions must be nonempty and sum to at most 64");
      have_header = true;
      continue;
    }
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.size() != dims.size() + 2) {
      fail(line_no, "expected " + std::to_string(dims.size()) + " labels then '<re> <im>'");
    }
    Row row{line_no, {}, {}, {}};
    for (std::size_t p = 0; p < dims.size(); ++p) {
      const std::vector<int> v = parse_int_list(tokens[p], ',', line_no);
      if (v.size() != 1) fail(line_no, "bad label '" + tokens[p] + "'");
      row.labels.push_back(v[0]);
    }
    try {
      row.re = parse_real_token(tokens[dims.size()]);
      row.im = parse_real_token(tokens[dims.size() + 1]);
    } catch (const ParseError& e) {
      fail(line_no, e.what());
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) fail(line_no, "missing 'distinguishable' header");

  bool zero = base == LabelBase::zero;
  if (base == LabelBase::automatic) {
    const bool qubits = std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
    bool saw_two = false;
    for (const Row& r : rows) {
      for (int l : r.labels) saw_two = saw_two || l == 2;
    }
    zero = qubits && !saw_two;
  }

  DistinguishableState numeric(dims);
  ExactDistinguishableState exact(dims);
  bool all_exact = true;
  std::set<std::vector<int>> seen;
  for (Row& r : rows) {
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (zero) ++r.labels[p];
      if (r.labels[p] < 1 || r.labels[p] > dims[p]) {
        fail(r.line, "label for party " + std::to_string(p + 1) + " out of range " + (zero ? "0.." : "1..") +
                         std::to_string(zero ? dims[p] - 1 : dims[p]));
      }
    }
    if (!seen.insert(r.labels).second) fail(r.line, "duplicate label tuple");
    numeric.set(r.labels, {r.re.first, r.im.first});
    if (r.re.second && r.im.second) {
      exact.set(r.labels, ComplexRational(*r.re.second, *r.im.second));
    } else {
      all_exact = false;
    }
  }
  DistinguishableStateFile file{numeric, std::nullopt};
  if (all_exact) file.exact = exact;
  return file;
}

}  // namespace luinv
