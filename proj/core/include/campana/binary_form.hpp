#pragma once

#include <campana/arith.hpp>

#include <string>
#include <vector>

namespace campana {

/// Homogeneous binary form F(x, y) = sum_i c_i x^i y^(d-i) with rational
/// coefficients.
class BinaryForm {
 public:
  struct Term {
    Rational coefficient;
    unsigned x_exp;
    unsigned y_exp;
  };

  /// Coefficients indexed by the exponent of x; the degree is size()-1.
  explicit BinaryForm(std::vector<Rational> coefficients);

  /// Collects like terms. Throws std::invalid_argument unless every term
  /// with a nonzero coefficient has the same total degree.
  static BinaryForm from_terms(const std::vector<Term>& terms);

  /// F(x, y) = x.
  static BinaryForm identity() { return BinaryForm({Rational(0), Rational(1)}); }

  unsigned degree() const { return static_cast<unsigned>(coefficients_.size() - 1); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  bool has_integer_coefficients() const;

  Rational evaluate(const Rational& x, const Rational& y) const;
  /// F(lambda, 1).
  Rational dehomogenize(const Rational& lambda) const { return evaluate(lambda, Rational(1)); }

  /// Human-readable form such as "x^2 + y^2".
  std::string to_string() const;

 private:
  std::vector<Rational> coefficients_;
};

}  // namespace campana
