#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "luinv/combinatorics.hpp"
#include "luinv/embedding.hpp"
#include "luinv/exterior_basis.hpp"
#include "luinv/invariants.hpp"
#include "luinv/subspace_builder.hpp"
#include "luinv/verification.hpp"

namespace luinv::cli {
namespace {

std::string g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First word of the first meaningful line.
std::string header_word(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string w;
    if (words >> w) return w;
  }
  return {};
}

struct LoadedState {
  FermionState state;
  std::optional<ExactFermionState> exact;
  std::optional<DistinguishableStateFile> distinguishable;
};

LoadedState load_state(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  LoadedState s;
  const std::string head = header_word(text);
  if (head == "distinguishable") {
    DistinguishableStateFile d = read_distinguishable_state(in);
    s.state = embed_distinguishable(d.state);
    if (d.exact) s.exact = embed_distinguishable(*d.exact);
    s.distinguishable = std::move(d);
  } else if (head == "fermion") {
    FermionStateFile f = read_fermion_state(in);
    s.state = std::move(f.state);
    s.exact = std::move(f.exact);
  } else {
    throw ParseError(path + ": line 1: expected a 'fermion' or 'distinguishable' header");
  }
  return s;
}

struct Evaluation {
  std::string name;
  Partition lambda;
  int m = 0;
  double value = 0;
  std::optional<Rational> exact;
};

void require_k(const FermionState& psi, int k, const std::string& name) {
  if (psi.k() != k) {
    throw ParseError(name + " needs k=" + std::to_string(k) + ", state has k=" + std::to_string(psi.k()));
  }
}

// Normalized value on both paths; `eval` is generic over the amplitude type.
template <class F>
Evaluation evaluate(const std::string& name, const LoadedState& s, int m, F&& eval) {
  Evaluation e;
  e.name = name;
  e.m = m;
  const InvariantValue v = eval(s.state);
  e.lambda = v.lambda;
  e.value = v.value / power_norm(s.state, m);
  if (s.exact) {
    const ExactInvariantValue x = eval(*s.exact);
    e.exact = x.value / power_norm(*s.exact, m);
  }
  return e;
}

SubspaceBasis basis_for(int k, int m, int n) { return build_highest_weight_basis(k, m, std::max(n, k * m)); }

Evaluation evaluate_named(const std::string& name, const LoadedState& s) {
  const FermionState& psi = s.state;
  if (name == "I22" || name == "I1111") {
    require_k(psi, 2, name);
    if (name == "I22") return evaluate(name, s, 2, [](const auto& p) { return closed_form_I22(p); });
    return evaluate(name, s, 2, [](const auto& p) { return closed_form_I1111(p); });
  }
  if (name == "I16") {
    require_k(psi, 2, name);
    if (psi.n() < 6) throw ParseError("I16 needs n >= 6");
    return evaluate(name, s, 3, [](const auto& p) { return closed_form_I16(p); });
  }
  if (name == "I33") {
    require_k(psi, 2, name);
    const SubspaceBasis b = basis_for(2, 3, psi.n());
    return evaluate(name, s, 3, [&](const auto& p) { return eval_projection_invariant(b, p); });
  }
  if (name == "I2211") {
    require_k(psi, 2, name);
    if (psi.n() < 6) throw ParseError("I2211 needs n >= 6");
    const SubspaceBasis b = basis_for(2, 3, psi.n());
    return evaluate(name, s, 3, [&](const auto& p) {
      return derived_I2211(eval_projection_invariant(b, p), closed_form_I16(p), p);
    });
  }
  if (name == "I222") {
    require_k(psi, 3, name);
    if (s.distinguishable && s.distinguishable->state.dims() == std::vector<int>{2, 2, 2}) {
      Evaluation e;
      e.name = name;
      e.m = 2;
      e.lambda = Partition::rectangle(2, 3);
      const auto& d = *s.distinguishable;
      e.value = eval_three_qubit_I222(d.state).value / std::pow(state_norm_sq(d.state), 2);
      if (d.exact) {
        const Rational nn = state_norm_sq(*d.exact);
        e.exact = eval_three_qubit_I222(*d.exact).value / (nn * nn);
      }
      return e;
    }
    const SubspaceBasis b = basis_for(3, 2, psi.n());
    return evaluate(name, s, 2, [&](const auto& p) { return eval_projection_invariant(b, p); });
  }
  if (name.rfind("family:", 0) == 0) {
    int base_n = 0;
    try {
      std::size_t used = 0;
      base_n = std::stoi(name.substr(7), &used);
      if (used != name.size() - 7) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad invariant " + name);
    }
    if (base_n <= 0 || base_n % psi.k() != 0) {
      throw ParseError(name + ": base_n must be a positive multiple of k=" + std::to_string(psi.k()));
    }
    return evaluate(name, s, base_n / psi.k(), [&](const auto& p) { return antisymmetric_family(p, base_n); });
  }
  throw ParseError("unknown invariant " + name + " (I22, I1111, I16, I33, I2211, I222, family:<n>)");
}

void print_evaluation(std::ostream& out, const Evaluation& e, const FermionState& psi, bool with_complement) {
  out << "invariant " << e.name << " lambda=(" << e.lambda.to_string() << ") k=" << psi.k() << " m=" << e.m
      << " n=" << psi.n() << "\n";
  out << "value " << g12(e.value) << "\n";
  if (e.exact) out << "exact " << to_short_string(*e.exact) << "\n";
  if (with_complement) {
    out << "complement " << g12(1.0 - e.value) << "\n";
    if (e.exact) out << "complement_exact " << to_short_string(Rational(1) - *e.exact) << "\n";
  }
}

// ---- dims

// Summands of the complement where they are known by name.
std::vector<Partition> named_complement(int k, int m) {
  if (k == 2 && m == 2) return {Partition{1, 1, 1, 1}};
  if (k == 2 && m == 3) return {Partition{2, 2, 1, 1}, Partition{1, 1, 1, 1, 1, 1}};
  if (k == 3 && m == 2) return {Partition{2, 1, 1, 1, 1}};
  return {};
}

std::uint64_t weyl_or_zero(const Partition& p, int n) { return p.length() > n ? 0 : weyl_dimension(p, n); }

int cmd_dims(int k, int m, int n, std::ostream& out) {
  const Partition lambda = Partition::rectangle(m, k);
  const std::uint64_t w = weyl_or_zero(lambda, n);
  const std::uint64_t total = sym_power_dimension(n, k, m);
  out << "lambda=(" << lambda.to_string() << ") k=" << k << " m=" << m << " n=" << n << "\n";
  out << "weyl_dimension " << w << "\n";
  out << "sym_power_dimension " << total << "\n";
  out << "complement " << total - w << "\n";
  const std::vector<Partition> named = named_complement(k, m);
  std::uint64_t acc = w;
  for (const Partition& p : named) {
    const std::uint64_t d = weyl_or_zero(p, n);
    out << "summand (" << p.to_string() << ") " << d << "\n";
    acc += d;
  }
  out << "total " << acc << "\n";
  if (!named.empty() && acc != total) {
    out << "summands do not add up to sym_power_dimension\n";
    return 1;
  }
  return 0;
}

// ---- verify

TrialReport combine(const std::vector<TrialReport>& reports, std::uint64_t seed, double tol) {
  TrialReport all;
  all.seed = seed;
  all.tolerance = tol;
  all.pass = true;
  for (const TrialReport& r : reports) {
    all.trials += r.trials;
    all.max_deviation = std::max(all.max_deviation, r.max_deviation);
    all.pass = all.pass && r.pass;
  }
  return all;
}

void print_report(std::ostream& out, const std::string& label, const TrialReport& r) {
  out << label << ": " << r.summary_line();
  if (!r.detail.empty() && r.detail.find('\n') == std::string::npos) out << " " << r.detail;
  out << "\n";
  if (r.detail.find('\n') != std::string::npos) out << r.detail;
}

std::vector<TrialReport> suite_invariance(int trials, std::uint64_t seed, double tol, std::ostream& out) {
  std::vector<TrialReport> reports;
  auto run = [&](const std::string& label, const FermionInvariant& f, const FermionState& psi) {
    reports.push_back(invariance_test(f, psi, trials, tol, seed));
    print_report(out, label, reports.back());
  };
  const FermionState p4 = random_state(4, 2, seed);
  const FermionState p6 = random_state(6, 2, seed + 1);
  const FermionState q6 = random_state(6, 3, seed + 2);
  const SubspaceBasis b22 = build_highest_weight_basis(2, 2, 4);
  const SubspaceBasis b23 = build_highest_weight_basis(2, 3, 6);
  const SubspaceBasis b32 = build_highest_weight_basis(3, 2, 6);
  run("I22 closed form n=4", [](const FermionState& p) { return closed_form_I22(p).value; }, p4);
  run("I1111 closed form n=4", [](const FermionState& p) { return closed_form_I1111(p).value; }, p4);
  run("I22 projection n=4", [&](const FermionState& p) { return eval_projection_invariant(b22, p).value; }, p4);
  run("I16 closed form n=6", [](const FermionState& p) { return closed_form_I16(p).value; }, p6);
  run("I33 projection n=6", [&](const FermionState& p) { return eval_projection_invariant(b23, p).value; }, p6);
  run("I222 projection n=6", [&](const FermionState& p) { return eval_projection_invariant(b32, p).value; }, q6);

  DistinguishableState ghz({2, 2, 2});
  ghz.set({1, 1, 1}, 1.0);
  ghz.set({2, 2, 2}, 1.0);
  run("I222 on embedded GHZ", [&](const FermionState& p) { return eval_projection_invariant(b32, p).value; },
      normalized(embed_distinguishable(ghz)));
  return reports;
}

std::vector<TrialReport> suite_span(int trials, std::uint64_t seed, double tol, std::ostream& out) {
  std::vector<TrialReport> reports;
  const int cases[3][3] = {{2, 2, 4}, {2, 3, 6}, {3, 2, 6}};
  for (const auto& c : cases) {
    const SubspaceBasis b = build_highest_weight_basis(c[0], c[1], c[2]);
    const int samples = std::max(trials, static_cast<int>(b.total_dimension) + 16);
    reports.push_back(numeric_span_crosscheck(b, samples, seed, tol));
    std::ostringstream label;
    label << "span k=" << c[0] << " m=" << c[1] << " n=" << c[2];
    print_report(out, label.str(), reports.back());
  }
  return reports;
}

std::vector<TrialReport> suite_tables(std::ostream& out) {
  std::vector<TrialReport> reports;
  const int cases[3][3] = {{2, 2, 4}, {2, 3, 6}, {3, 2, 6}};
  for (const auto& c : cases) {
    const SubspaceBasis b = build_highest_weight_basis(c[0], c[1], c[2]);
    reports.push_back(compare_with_reference(b));
    std::ostringstream label;
    label << "tables k=" << c[0] << " m=" << c[1] << " n=" << c[2];
    print_report(out, label.str(), reports.back());
  }
  return reports;
}

std::vector<TrialReport> suite_values(std::ostream& out) {
  std::vector<TrialReport> reports;
  const SubspaceBasis b32 = build_highest_weight_basis(3, 2, 6);
  struct Case {
    std::string name;
    std::vector<std::pair<std::vector<int>, long>> terms;
    Rational expected;
  };
  const std::vector<Case> cases = {
      {"separable", {{{1, 1, 1}, 1}}, Rational(1)},
      {"GHZ", {{{1, 1, 1}, 1}, {{2, 2, 2}, 1}}, frac(3, 4)},
      {"W", {{{2, 1, 1}, 1}, {{1, 2, 1}, 1}, {{1, 1, 2}, 1}}, frac(7, 9)},
      {"biseparable", {{{1, 1, 2}, 1}, {{1, 2, 1}, 1}}, frac(5, 6)},
  };
  for (const Case& c : cases) {
    ExactDistinguishableState phi({2, 2, 2});
    for (const auto& [labels, a] : c.terms) phi.set(labels, ComplexRational{Rational(a), Rational(0)});
    const Rational nn = state_norm_sq(phi);
    const Rational formula = eval_three_qubit_I222(phi).value / (nn * nn);
    const Rational projected = eval_projection_invariant(b32, embed_distinguishable(phi)).value / (nn * nn);
    TrialReport r;
    r.trials = 1;
    r.max_deviation = std::max(std::abs(to_double(formula - c.expected)), std::abs(to_double(projected - c.expected)));
    r.pass = formula == c.expected && projected == c.expected;
    r.detail = "formula=" + to_short_string(formula) + " projection=" + to_short_string(projected) +
               " expected=" + to_short_string(c.expected);
    reports.push_back(r);
    print_report(out, "I222 " + c.name, r);
  }
  return reports;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed, std::optional<double> tol_flag,
               std::ostream& out) {
  std::vector<TrialReport> reports;
  double tol = 0;
  if (suite == "invariance") {
    tol = tol_flag.value_or(1e-9);
    reports = suite_invariance(trials, seed, tol, out);
  } else if (suite == "span") {
    tol = tol_flag.value_or(1e-8);
    reports = suite_span(trials, seed, tol, out);
  } else if (suite == "tables") {
    reports = suite_tables(out);
  } else if (suite == "values") {
    reports = suite_values(out);
  } else {
    throw ParseError("unknown suite " + suite + " (invariance, span, tables, values)");
  }
  const TrialReport all = combine(reports, seed, tol);
  out << all.summary_line() << "\n";
  return all.pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local unitary invariants of fermionic and multipartite pure states"};
  app.require_subcommand(1);

  int k = 0, m = 0;
  std::optional<int> n;
  std::string out_path, basis_path, invariant, state_path, suite;
  bool with_complement = false;
  int trials = 100;
  std::uint64_t seed = 1;
  std::optional<double> tol;

  auto add_kmn = [&](CLI::App* sub) {
    sub->add_option("--k", k, "particles")->required()->check(CLI::Range(1, 16));
    sub->add_option("--m", m, "degree")->required()->check(CLI::Range(1, 16));
    sub->add_option("--n", n, "modes (default k*m)")->check(CLI::Range(1, kMaxModes));
  };

  CLI::App* dims = app.add_subcommand("dims", "dimension bookkeeping for S^m(wedge^k C^n)");
  add_kmn(dims);

  CLI::App* basis = app.add_subcommand("basis", "build the exact highest-weight basis");
  add_kmn(basis);
  basis->add_option("--out", out_path, "basis file to write");

  CLI::App* eval = app.add_subcommand("eval", "evaluate an invariant on a state file");
  auto* basis_opt = eval->add_option("--basis", basis_path, "basis file");
  auto* inv_opt = eval->add_option("--invariant", invariant, "I22, I1111, I16, I33, I2211, I222 or family:<n>");
  basis_opt->excludes(inv_opt);
  eval->add_option("--state", state_path, "state file")->required();
  eval->add_flag("--complement", with_complement, "also print 1 - I");

  CLI::App* embed = app.add_subcommand("embed", "embed a distinguishable state into a fermionic one");
  embed->add_option("--state", state_path, "distinguishable state file")->required();
  embed->add_option("--out", out_path, "fermion state file to write")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "invariance, span, tables or values")->required();
  verify->add_option("--trials", trials, "trials per check")->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (dims->parsed()) return cmd_dims(k, m, n.value_or(k * m), out);

    if (basis->parsed()) {
      const int nn = n.value_or(k * m);
      const SubspaceBasis b = build_highest_weight_basis(k, m, nn);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw ParseError("cannot write " + out_path);
        write_basis(f, b);
      }
      print_family_table(out, b);
      return 0;
    }

    if (eval->parsed()) {
      if (basis_path.empty() == invariant.empty()) throw ParseError("eval needs exactly one of --basis, --invariant");
      const LoadedState s = load_state(state_path);
      Evaluation e;
      if (!basis_path.empty()) {
        std::istringstream in(read_file(basis_path));
        const SubspaceBasis b = read_basis(in);
        if (b.k != s.state.k()) {
          throw ParseError("basis has k=" + std::to_string(b.k) + ", state has k=" + std::to_string(s.state.k()));
        }
        e = evaluate("basis", s, b.m, [&](const auto& p) { return eval_projection_invariant(b, p); });
      } else {
        e = evaluate_named(invariant, s);
      }
      print_evaluation(out, e, s.state, with_complement);
      return 0;
    }

    if (embed->parsed()) {
      std::istringstream in(read_file(state_path));
      const DistinguishableStateFile d = read_distinguishable_state(in);
      std::ofstream f(out_path);
      if (!f) throw ParseError("cannot write " + out_path);
      const FermionState psi = embed_distinguishable(d.state);
      if (d.exact) {
        write_fermion_state(f, embed_distinguishable(*d.exact));
      } else {
        write_fermion_state(f, psi);
      }
      out << "embedded " << d.state.parties() << " parties into n=" << psi.n() << " k=" << psi.k() << " terms="
          << psi.amplitudes().size() << "\n";
      return 0;
    }

    if (verify->parsed()) return cmd_verify(suite, trials, seed, tol, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace luinv::cli
