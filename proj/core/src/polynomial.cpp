#include <campana/polynomial.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace campana {

namespace {

Monomial multiply(const Monomial& x, const Monomial& y) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(y[j++]);
    } else {
      out.emplace_back(x[i].first, x[i].second + y[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

unsigned long monomial_degree(const Monomial& m) {
  unsigned long d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

}  // namespace

Polynomial Polynomial::constant(const BigInt& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned long Polynomial::degree() const {
  unsigned long d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned long d = monomial_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_) {
    if (monomial_degree(m) != d) return false;
  }
  return true;
}

Rational Polynomial::evaluate(const Assignment& values) const {
  Rational sum;
  for (const auto& [m, c] : terms_) {
    Rational term(c);
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw std::invalid_argument("unassigned variable '" + v + "'");
      term *= it->second.pow(long(e));
    }
    sum += term;
  }
  return sum;
}

NodeId Polynomial::to_circuit(Circuit& c) const {
  if (terms_.empty()) return c.constant(0);
  std::optional<NodeId> acc;
  for (const auto& [m, coef] : terms_) {
    std::optional<NodeId> term;
    if (coef != 1 || m.empty()) term = c.constant(coef);
    for (const auto& [v, e] : m) {
      NodeId factor = c.pow(c.var(v), e);
      term = term ? c.mul(*term, factor) : factor;
    }
    acc = acc ? c.add(*acc, *term) : *term;
  }
  return *acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest degree first reads more naturally.
  std::vector<std::pair<Monomial, BigInt>> ordered(terms_.rbegin(), terms_.rend());
  for (const auto& [m, c] : ordered) {
    BigInt mag = abs(c);
    std::string body;
    for (const auto& [v, e] : m) {
      if (!body.empty()) body += "*";
      body += v;
      if (e > 1) body += "^" + std::to_string(e);
    }
    std::string coef = (mag == 1 && !body.empty()) ? "" : mag.get_str();
    if (!coef.empty() && !body.empty()) coef += "*";
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + coef + body;
    } else {
      out += (c < 0 ? " - " : " + ") + coef + body;
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& x, const Polynomial& y) {
  Polynomial out = x;
  for (const auto& [m, c] : y.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& x) {
  Polynomial out;
  for (const auto& [m, c] : x.terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial operator-(const Polynomial& x, const Polynomial& y) { return x + (-y); }

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
  Polynomial out;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) out.add_term(multiply(mx, my), cx * cy);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned long k) const {
  Polynomial result = constant(1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial norm_polynomial(unsigned n) {
  if (n == 0) throw std::invalid_argument("norm_polynomial: n must be positive");
  if (n > 16) throw std::invalid_argument("norm_polynomial: n too large to expand");
  std::vector<Polynomial> y;
  for (unsigned j = 1; j <= n; ++j) y.push_back(Polynomial::variable("y" + std::to_string(j)));
  auto entry = [&](unsigned i, unsigned k) -> Polynomial {
    if (i >= k) return y[i - k];
    return Polynomial::constant(2) * y[i + n - k];
  };
  // Laplace expansion along rows; minors keyed by their remaining columns.
  std::unordered_map<unsigned, Polynomial> memo;
  std::function<Polynomial(unsigned)> det = [&](unsigned cols) -> Polynomial {
    unsigned row = n - static_cast<unsigned>(__builtin_popcount(cols));
    if (row == n) return Polynomial::constant(1);
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Polynomial sum;
    int sign = 1;
    for (unsigned k = 0; k < n; ++k) {
      if (!((cols >> k) & 1)) continue;
      Polynomial term = entry(row, k) * det(cols & ~(1u << k));
      sum = sign > 0 ? sum + term : sum - term;
      sign = -sign;
    }
    memo.emplace(cols, sum);
    return sum;
  };
  return det((1u << n) - 1);
}

Circuit norm_form(unsigned n) {
  Circuit c;
  c.set_root(norm_polynomial(n).to_circuit(c));
  return c;
}

Polynomial expand(const Circuit& c, NodeId root) {
  std::unordered_map<NodeId, Polynomial> val;
  std::function<const Polynomial&(NodeId)> go = [&](NodeId id) -> const Polynomial& {
    auto it = val.find(id);
    if (it != val.end()) return it->second;
    const Node& n = c.node(id);
    Polynomial p;
    switch (n.op) {
      case Op::Var: p = Polynomial::variable(n.name); break;
      case Op::Int: p = Polynomial::constant(n.value); break;
      case Op::Add: p = go(n.args[0]) + go(n.args[1]); break;
      case Op::Mul: p = go(n.args[0]) * go(n.args[1]); break;
      case Op::Neg: p = -go(n.args[0]); break;
      case Op::Pow: p = go(n.args[0]).pow(n.exponent); break;
      case Op::Norm: {
        if (n.value != 2) throw std::invalid_argument("expand: only norms from Q(2^(1/n)) are supported");
        Polynomial G = norm_polynomial(static_cast<unsigned>(n.args.size()));
        // Substitute y_j -> args[j-1] term by term.
        std::vector<Polynomial> args;
        for (NodeId a : n.args) args.push_back(go(a));
        for (const auto& [m, coef] : G.terms()) {
          Polynomial term = Polynomial::constant(coef);
          for (const auto& [v, e] : m) term = term * args[std::stoul(v.substr(1)) - 1].pow(e);
          p = p + term;
        }
        break;
      }
    }
    return val.emplace(id, std::move(p)).first->second;
  };
  return go(root);
}

}  // namespace campana
