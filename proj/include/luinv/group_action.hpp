#pragma once

#include <vector>

#include "luinv/combinatorics.hpp"
#include "luinv/symmetric_algebra.hpp"

namespace luinv {

/// pi[i-1] is the image of index i. Indices beyond pi.size() are fixed.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
/// Throws unless pi is a bijection of 1..pi.size().
void check_permutation(const Permutation& pi);
Permutation inverse(const Permutation& pi);

/// Polynomial in s; coefficients[r] is the coefficient of s^r.
struct TransvectionPolynomial {
  std::vector<SymVector> coefficients;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// u_ij(s) w with u_ij(s) = id + s E_ij: every factor containing j but not
/// i picks up s * e_{I with j replaced by i in place}.
TransvectionPolynomial apply_transvection(int i, int j, const SymVector& w);

SymVector apply_permutation(const Permutation& pi, const SymVector& w);

/// Relabeling that sorts indices by weight descending, index ascending.
/// The image of w then has a non-increasing weight.
Permutation dominant_permutation(const WeightVector& weight);

/// Every permutation fixing `weight`: the product of symmetric groups on
/// blocks of equal nonzero entries (positions holding zero are fixed).
std::vector<Permutation> weight_stabilizer(const WeightVector& weight);

struct CanonicalForm {
  SymVector form;
  /// relabeled w = scalar * form
  Rational scalar;
};

/// Representative of the line of w under index relabeling and scaling.
///
/// Indices are ordered by total occurrence count (descending) and the
/// minimum over relabelings that respect this order is taken, with the
/// leading coefficient scaled to +1. The result is exact when the count
/// classes admit at most `max_candidates` relabelings; past that only the
/// first candidate is used.
CanonicalForm canonical_orbit_form(const SymVector& w, std::size_t max_candidates = 5040);

/// Total order on vectors used by canonical_orbit_form: term by term,
/// monomial first, then coefficient; a proper prefix sorts first.
bool term_list_less(const SymVector& a, const SymVector& b);

}  // namespace luinv
