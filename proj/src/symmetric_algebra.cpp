#include "luinv/symmetric_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace luinv {

SymMonomial::SymMonomial(std::vector<FermionIndex> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

std::vector<std::pair<FermionIndex, int>> SymMonomial::factors() const {
  std::vector<std::pair<FermionIndex, int>> out;
  for (FermionIndex f : factors_) {
    if (!out.empty() && out.back().first == f) {
      ++out.back().second;
    } else {
      out.emplace_back(f, 1);
    }
  }
  return out;
}

std::vector<int> SymMonomial::exponents() const {
  std::vector<int> out;
  for (const auto& [f, e] : factors()) out.push_back(e);
  return out;
}

std::string SymMonomial::to_string() const {
  std::string s;
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    if (a) s += ';';
    s += factors_[a].to_string();
  }
  return s;
}

std::string SymMonomial::pretty() const {
  std::string s;
  for (const auto& [f, e] : factors()) {
    if (!s.empty()) s += ' ';
    s += "e" + f.label();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

namespace {

template <class Scalar>
bool scalar_is_zero(const Scalar& c) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return sgn(c) == 0;
  } else {
    return c == Scalar{};
  }
}

}  // namespace

template <class Scalar>
void BasicSymVector<Scalar>::check_degree(int d) {
  if (terms_.empty() && degree_ == 0) {
    degree_ = d;
  } else if (d != degree_) {
    throw Error("symmetric vector degree mismatch");
  }
}

template <class Scalar>
Scalar BasicSymVector<Scalar>::coefficient(const SymMonomial& mon) const {
  const auto it = terms_.find(mon);
  return it == terms_.end() ? Scalar(0) : it->second;
}

template <class Scalar>
void BasicSymVector<Scalar>::add(const SymMonomial& mon, const Scalar& c) {
  if (scalar_is_zero(c)) return;
  check_degree(mon.degree());
  auto [it, inserted] = terms_.try_emplace(mon, c);
  if (!inserted) {
    it->second += c;
    if (scalar_is_zero(it->second)) terms_.erase(it);
  }
}

template <class Scalar>
void BasicSymVector<Scalar>::add_scaled(const BasicSymVector& other, const Scalar& c) {
  if (scalar_is_zero(c)) return;
  for (const auto& [mon, v] : other.terms_) add(mon, c * v);
}

template <class Scalar>
BasicSymVector<Scalar>& BasicSymVector<Scalar>::operator*=(const Scalar& c) {
  if (scalar_is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [mon, v] : terms_) v *= c;
  return *this;
}

template <class Scalar>
BasicSymVector<Scalar>& BasicSymVector<Scalar>::operator+=(const BasicSymVector& other) {
  for (const auto& [mon, v] : other.terms_) add(mon, v);
  return *this;
}

template <class Scalar>
BasicSymVector<Scalar>& BasicSymVector<Scalar>::operator-=(const BasicSymVector& other) {
  for (const auto& [mon, v] : other.terms_) add(mon, -v);
  return *this;
}

template <class Scalar>
const Scalar& BasicSymVector<Scalar>::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of the zero vector");
  return terms_.begin()->second;
}

template class BasicSymVector<Rational>;
template class BasicSymVector<std::complex<double>>;

Rational monomial_norm_sq(const SymMonomial& mon) {
  const std::vector<int> ex = mon.exponents();
  return Rational(1, static_cast<unsigned long>(multinomial(ex)));
}

Rational inner_product(const SymVector& a, const SymVector& b) {
  if (!a.empty() && !b.empty() && a.degree() != b.degree()) throw Error("inner_product: degree mismatch");
  const SymVector& small = a.size() <= b.size() ? a : b;
  const SymVector& large = a.size() <= b.size() ? b : a;
  Rational total(0);
  for (const auto& [mon, c] : small.terms()) {
    const auto it = large.terms().find(mon);
    if (it != large.terms().end()) total += c * it->second * monomial_norm_sq(mon);
  }
  return total;
}

std::complex<double> inner_product(const ComplexSymVector& a, const ComplexSymVector& b) {
  if (!a.empty() && !b.empty() && a.degree() != b.degree()) throw Error("inner_product: degree mismatch");
  std::complex<double> total = 0.0;
  for (const auto& [mon, c] : a.terms()) {
    const auto it = b.terms().find(mon);
    if (it != b.terms().end()) total += std::conj(c) * it->second * to_double(monomial_norm_sq(mon));
  }
  return total;
}

WeightVector weight_of(const SymMonomial& mon, int n) {
  std::vector<int> r(static_cast<std::size_t>(n), 0);
  for (FermionIndex f : mon.flat()) {
    for (int i : f.indices()) {
      if (i > n) throw Error("weight_of: index " + std::to_string(i) + " exceeds n=" + std::to_string(n));
      ++r[static_cast<std::size_t>(i - 1)];
    }
  }
  return WeightVector(std::move(r));
}

WeightVector weight_of(const SymVector& w, int n) {
  if (w.empty()) throw Error("weight_of: zero vector has no weight");
  WeightVector first = weight_of(w.terms().begin()->first, n);
  for (const auto& [mon, c] : w.terms()) {
    if (weight_of(mon, n) != first) throw Error("weight_of: vector is not a weight vector");
  }
  return first;
}

template <class Amp>
Amp overlap_with_power(const SymVector& w, const BasicFermionState<Amp>& psi) {
  using T = AmplitudeTraits<Amp>;
  Amp total{};
  for (const auto& [mon, beta] : w.terms()) {
    Amp prod = T::from_rational(beta);
    for (FermionIndex f : mon.flat()) {
      const auto it = psi.amplitudes().find(f);
      if (it == psi.amplitudes().end()) {
        prod = Amp{};
        break;
      }
      prod *= it->second;
    }
    total += prod;
  }
  return total;
}

template std::complex<double> overlap_with_power(const SymVector&, const FermionState&);
template ComplexRational overlap_with_power(const SymVector&, const ExactFermionState&);

int max_index(const SymVector& w) {
  int top = 0;
  for (const auto& [mon, c] : w.terms()) {
    for (FermionIndex f : mon.flat()) top = std::max(top, f.max_index());
  }
  return top;
}

SymVector primitive(const SymVector& w) {
  if (w.empty()) throw Error("primitive: zero vector");
  mpz_class den = 1;
  for (const auto& [mon, c] : w.terms()) den = lcm(den, c.get_den());
  mpz_class g = 0;
  for (const auto& [mon, c] : w.terms()) {
    const mpz_class num = c.get_num() * (den / c.get_den());
    g = gcd(g, num);
  }
  Rational scale(den, g);
  if (sgn(w.leading_coefficient()) < 0) scale = -scale;
  scale.canonicalize();
  SymVector out = w;
  out *= scale;
  return out;
}

std::string pretty(const SymVector& w) {
  if (w.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [mon, c] : w.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) s += "-";
    } else {
      s += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1) s += to_short_string(mag) + " ";
    s += mon.pretty();
    first = false;
  }
  return s;
}

std::string format_term_line(const SymMonomial& mon, const Rational& c) {
  return to_fraction_string(c) + "\t" + mon.to_string();
}

std::pair<SymMonomial, Rational> parse_term_line(const std::string& line) {
  std::istringstream ls(line);
  std::string coeff, factors, extra;
  ls >> coeff >> factors;
  if (factors.empty() || (ls >> extra)) throw ParseError("expected '<p>/<q><TAB>I1;I2;...'");
  Rational c = parse_rational(coeff);
  std::vector<FermionIndex> fs;
  std::stringstream fss(factors);
  std::string item;
  while (std::getline(fss, item, ';')) {
    std::vector<int> idx;
    std::stringstream iss(item);
    std::string tok;
    while (std::getline(iss, tok, ',')) {
      try {
        std::size_t used = 0;
        idx.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("bad index '" + tok + "'");
      }
    }
    try {
      fs.push_back(FermionIndex::from_sorted(idx));
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  return {SymMonomial(std::move(fs)), c};
}

SymVector make_sym_vector(std::initializer_list<std::pair<Rational, std::vector<std::vector<int>>>> terms) {
  SymVector v;
  for (const auto& [c, factors] : terms) {
    int sign = 1;
    std::vector<FermionIndex> fs;
    for (const auto& f : factors) {
      const SignedIndex s = canonicalize_index(f);
      sign *= s.sign;
      fs.push_back(s.index);
    }
    if (sign != 0) v.add(SymMonomial(std::move(fs)), sign > 0 ? c : Rational(-c));
  }
  return v;
}

}  // namespace luinv
