#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "luinv/combinatorics.hpp"
#include "luinv/exterior_basis.hpp"
#include "luinv/rational.hpp"

namespace luinv {

/// Degree-m monomial e_{I1} e_{I2} ... e_{Im} in S^m(wedge^k).
///
/// Stored as the sorted factor list with repeats. Ordering is lexicographic
/// on that list, so e12^2 e34 < e12 e13 e24.
class SymMonomial {
 public:
  SymMonomial() = default;
  explicit SymMonomial(std::vector<FermionIndex> factors);
  SymMonomial(std::initializer_list<FermionIndex> factors) : SymMonomial(std::vector<FermionIndex>(factors)) {}

  int degree() const { return static_cast<int>(factors_.size()); }
  /// Sorted factors with repeats.
  const std::vector<FermionIndex>& flat() const { return factors_; }
  /// (factor, exponent) pairs, factors ascending.
  std::vector<std::pair<FermionIndex, int>> factors() const;
  std::vector<int> exponents() const;

  /// "1,2;1,2;3,4" as used by the term-line format.
  std::string to_string() const;
  /// "e12^2 e34"
  std::string pretty() const;

  friend bool operator==(const SymMonomial&, const SymMonomial&) = default;
  friend auto operator<=>(const SymMonomial& a, const SymMonomial& b) { return a.factors_ <=> b.factors_; }

 private:
  std::vector<FermionIndex> factors_;
};

/// Sparse combination of monomials of one degree. Zero coefficients are
/// never stored.
template <class Scalar>
class BasicSymVector {
 public:
  using Map = std::map<SymMonomial, Scalar>;

  BasicSymVector() = default;
  explicit BasicSymVector(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const SymMonomial& mon) const;
  void add(const SymMonomial& mon, const Scalar& c);
  void add_scaled(const BasicSymVector& other, const Scalar& c);
  BasicSymVector& operator*=(const Scalar& c);
  BasicSymVector& operator+=(const BasicSymVector& other);
  BasicSymVector& operator-=(const BasicSymVector& other);

  /// Coefficient of the lexicographically first monomial.
  const Scalar& leading_coefficient() const;

  friend bool operator==(const BasicSymVector&, const BasicSymVector&) = default;

 private:
  void check_degree(int d);

  int degree_ = 0;
  Map terms_;
};

using SymVector = BasicSymVector<Rational>;
using ComplexSymVector = BasicSymVector<std::complex<double>>;

/// 1 / multinomial(exponents).
Rational monomial_norm_sq(const SymMonomial& mon);

/// Sum over shared monomials of conj(a) b |mon|^2.
Rational inner_product(const SymVector& a, const SymVector& b);
std::complex<double> inner_product(const ComplexSymVector& a, const ComplexSymVector& b);

WeightVector weight_of(const SymMonomial& mon, int n);
/// Common weight of every term. Throws when w is not a weight vector.
WeightVector weight_of(const SymVector& w, int n);

/// <w, psi^m> = sum_terms conj(beta) prod_I psi_I^e, with psi^m never formed.
template <class Amp>
Amp overlap_with_power(const SymVector& w, const BasicFermionState<Amp>& psi);

/// Largest index occurring in any factor.
int max_index(const SymVector& w);

/// Scales w to integer coefficients with gcd 1 and a positive leading term.
SymVector primitive(const SymVector& w);

/// Human-readable sum, e.g. "e12 e34 + 2 e13 e24".
std::string pretty(const SymVector& w);

/// `p/q<TAB>I1;I2;...;Im`
std::string format_term_line(const SymMonomial& mon, const Rational& c);
std::pair<SymMonomial, Rational> parse_term_line(const std::string& line);

/// Builds a vector from (coefficient, unsorted factor tuples), resolving
/// signs through canonicalize_index. Handy for writing vectors by hand.
SymVector make_sym_vector(std::initializer_list<std::pair<Rational, std::vector<std::vector<int>>>> terms);

}  // namespace luinv
