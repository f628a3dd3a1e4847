#pragma once

// Sparse multivariate polynomials with integer coefficients. Used to expand
// small circuits and to write out norm forms.

#include <campana/arith.hpp>
#include <campana/circuit.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace campana {

/// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::string, unsigned long>>;

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const BigInt& c);
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; 0 for constants and for the zero polynomial.
  unsigned long degree() const;
  /// True for the zero polynomial.
  bool is_homogeneous() const;

  Rational evaluate(const Assignment& values) const;

  /// Sum of coefficient * prod var^e, built in `c`.
  NodeId to_circuit(Circuit& c) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator-(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator-(const Polynomial& x);
  Polynomial pow(unsigned long k) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const BigInt& c);
  std::map<Monomial, BigInt> terms_;
};

/// Expands the sub-circuit at `root`. Norm nodes are expanded through
/// norm_polynomial, so only small norms are practical.
Polynomial expand(const Circuit& c, NodeId root);

/// Determinant of multiplication by y_1 + y_2 t + ... + y_n t^(n-1) on
/// Q(t), t^n = 2, in the variables y1..yn.
Polynomial norm_polynomial(unsigned n);

/// The norm form above as a circuit in y1..yn with its root set.
Circuit norm_form(unsigned n);

}  // namespace campana
