#include <campana/binary_form.hpp>

#include <optional>
#include <stdexcept>

namespace campana {

BinaryForm::BinaryForm(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("BinaryForm: no coefficients");
}

BinaryForm BinaryForm::from_terms(const std::vector<Term>& terms) {
  std::optional<unsigned> degree;
  for (const auto& t : terms) {
    if (t.coefficient.is_zero()) continue;
    unsigned d = t.x_exp + t.y_exp;
    if (degree && *degree != d) throw std::invalid_argument("BinaryForm: form is not homogeneous");
    degree = d;
  }
  if (!degree) throw std::invalid_argument("BinaryForm: zero form");
  std::vector<Rational> c(*degree + 1);
  for (const auto& t : terms) {
    if (!t.coefficient.is_zero()) c[t.x_exp] += t.coefficient;
  }
  return BinaryForm(std::move(c));
}

bool BinaryForm::has_integer_coefficients() const {
  for (const auto& c : coefficients_) {
    if (!c.is_integer()) return false;
  }
  return true;
}

Rational BinaryForm::evaluate(const Rational& x, const Rational& y) const {
  // Homogeneous Horner: F = (((c_d x + c_{d-1} y) x + c_{d-2} y^2) ...).
  Rational acc;
  Rational ypow(1);
  for (std::size_t i = coefficients_.size(); i-- > 0;) {
    acc = acc * x + coefficients_[i] * ypow;
    ypow *= y;
  }
  return acc;
}

std::string BinaryForm::to_string() const {
  std::string out;
  unsigned d = degree();
  auto monomial = [](const char* var, unsigned e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return var;
    return std::string(var) + "^" + std::to_string(e);
  };
  for (std::size_t i = coefficients_.size(); i-- > 0;) {
    const Rational& c = coefficients_[i];
    if (c.is_zero()) continue;
    std::string mono = monomial("x", unsigned(i));
    std::string ym = monomial("y", d - unsigned(i));
    if (!mono.empty() && !ym.empty()) mono += "*";
    mono += ym;
    Rational mag = c.abs();
    std::string coef = (mag == Rational(1) && !mono.empty()) ? "" : mag.to_string();
    if (!coef.empty() && !mono.empty()) coef += "*";
    if (out.empty()) {
      out = (c.sign() < 0 ? "-" : "") + coef + mono;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + coef + mono;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace campana
