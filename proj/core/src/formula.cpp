#include <campana/formula.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace campana {

std::vector<NodeId> Matrix::atoms() const {
  std::vector<NodeId> out;
  std::vector<const Matrix*> stack{this};
  while (!stack.empty()) {
    const Matrix* m = stack.back();
    stack.pop_back();
    if (m->is_atom()) {
      out.push_back(m->atom);
      continue;
    }
    for (auto it = m->children.rbegin(); it != m->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

std::size_t Matrix::atom_count() const { return atoms().size(); }

void Formula::validate() const {
  std::set<std::string> names;
  auto claim = [&](const std::string& v) {
    if (!names.insert(v).second) throw std::invalid_argument("Formula: variable '" + v + "' declared twice");
  };
  for (const auto& v : free) claim(v);
  for (const auto& b : prefix) claim(b.variable);
  for (const auto& s : substitutions) {
    claim(s.variable);
    for (const auto& v : circuit.variables(s.value)) {
      if (std::find(free.begin(), free.end(), v) == free.end()) {
        throw std::invalid_argument("Formula: substitution for '" + s.variable + "' uses non-free '" + v + "'");
      }
    }
  }
  for (NodeId atom : matrix.atoms()) {
    for (const auto& v : circuit.variables(atom)) {
      if (!names.count(v)) throw std::invalid_argument("Formula: variable '" + v + "' is neither free nor bound");
    }
  }
}

FormulaStats stats(const Formula& f) {
  FormulaStats s;
  for (const auto& b : f.prefix) {
    if (b.quantifier == Quantifier::Forall) {
      ++s.universals;
    } else {
      ++s.existentials;
    }
  }
  std::vector<NodeId> atoms = f.matrix.atoms();
  s.atoms = atoms.size();
  for (NodeId a : atoms) s.degree_bound = std::max(s.degree_bound, f.circuit.degree(a));
  std::uint64_t scale = 1;
  for (const auto& sub : f.substitutions) scale = std::max(scale, f.circuit.degree(sub.value));
  s.degree_bound *= scale;
  s.real_embedded = f.real_embedded;
  return s;
}

std::string stats_line(const FormulaStats& s) {
  return "universals=" + std::to_string(s.universals) + " existentials=" + std::to_string(s.existentials) +
         " degree<=" + std::to_string(s.degree_bound);
}

namespace {

bool eval_matrix(const Circuit& c, const Matrix& m, const Assignment& values) {
  switch (m.kind) {
    case Matrix::Kind::Eq: return c.vanishes(m.atom, values);
    case Matrix::Kind::Neq: return !c.vanishes(m.atom, values);
    case Matrix::Kind::And:
      for (const auto& ch : m.children) {
        if (!eval_matrix(c, ch, values)) return false;
      }
      return true;
    case Matrix::Kind::Or:
      for (const auto& ch : m.children) {
        if (eval_matrix(c, ch, values)) return true;
      }
      return false;
  }
  return false;
}

Matrix negate_matrix(Matrix m) {
  switch (m.kind) {
    case Matrix::Kind::Eq: m.kind = Matrix::Kind::Neq; break;
    case Matrix::Kind::Neq: m.kind = Matrix::Kind::Eq; break;
    case Matrix::Kind::And: m.kind = Matrix::Kind::Or; break;
    case Matrix::Kind::Or: m.kind = Matrix::Kind::And; break;
  }
  for (auto& ch : m.children) ch = negate_matrix(std::move(ch));
  return m;
}

}  // namespace

bool evaluate_matrix(const Formula& f, const Assignment& values) {
  Assignment full = values;
  for (const auto& v : f.free) {
    if (!full.count(v)) throw std::invalid_argument("evaluate_matrix: free variable '" + v + "' unassigned");
  }
  for (const auto& b : f.prefix) {
    if (!full.count(b.variable)) {
      throw std::invalid_argument("evaluate_matrix: bound variable '" + b.variable + "' unassigned");
    }
  }
  for (const auto& s : f.substitutions) full[s.variable] = f.circuit.evaluate(s.value, values);
  return eval_matrix(f.circuit, f.matrix, full);
}

Formula negate(Formula f) {
  for (auto& b : f.prefix) {
    b.quantifier = b.quantifier == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall;
  }
  f.matrix = negate_matrix(std::move(f.matrix));
  return f;
}

Formula universally_close(Formula f, const std::vector<std::string>& variables) {
  std::vector<Binder> front;
  for (const auto& v : variables) {
    auto it = std::find(f.free.begin(), f.free.end(), v);
    if (it == f.free.end()) throw std::invalid_argument("universally_close: '" + v + "' is not free");
    f.free.erase(it);
    front.push_back({Quantifier::Forall, v});
  }
  f.prefix.insert(f.prefix.begin(), front.begin(), front.end());
  return f;
}

Formula prenex_or(const Formula& u, const Formula& e, const std::string& fresh_variable) {
  for (const auto& b : u.prefix) {
    if (b.quantifier != Quantifier::Forall) throw std::invalid_argument("prenex_or: first part must be universal");
  }
  for (const auto& b : e.prefix) {
    if (b.quantifier != Quantifier::Exists) throw std::invalid_argument("prenex_or: second part must be existential");
  }
  if (u.matrix.kind != Matrix::Kind::Neq) throw std::invalid_argument("prenex_or: first part must be a single P != 0");
  if (e.matrix.kind != Matrix::Kind::Eq) throw std::invalid_argument("prenex_or: second part must be a single Q = 0");
  if (!u.substitutions.empty() || !e.substitutions.empty()) {
    throw std::invalid_argument("prenex_or: substituted formulas are not supported");
  }

  std::set<std::string> u_bound, e_bound;
  for (const auto& b : u.prefix) u_bound.insert(b.variable);
  for (const auto& b : e.prefix) e_bound.insert(b.variable);
  for (const auto& v : e_bound) {
    if (u_bound.count(v) || std::count(u.free.begin(), u.free.end(), v)) {
      throw std::invalid_argument("prenex_or: variable '" + v + "' bound in both parts");
    }
  }
  auto used = [&](const std::string& v) {
    return u_bound.count(v) || e_bound.count(v) || std::count(u.free.begin(), u.free.end(), v) ||
           std::count(e.free.begin(), e.free.end(), v);
  };
  if (used(fresh_variable)) throw std::invalid_argument("prenex_or: '" + fresh_variable + "' is not fresh");

  Formula out;
  out.real_embedded = u.real_embedded || e.real_embedded;
  out.free = u.free;
  for (const auto& v : e.free) {
    if (!u_bound.count(v) && std::find(out.free.begin(), out.free.end(), v) == out.free.end()) out.free.push_back(v);
  }
  out.prefix = u.prefix;
  out.prefix.push_back({Quantifier::Exists, fresh_variable});
  out.prefix.insert(out.prefix.end(), e.prefix.begin(), e.prefix.end());

  Circuit& c = out.circuit;
  NodeId P = c.import(u.circuit, u.matrix.atom);
  NodeId Q = c.import(e.circuit, e.matrix.atom);
  NodeId y = c.var(fresh_variable);
  NodeId atom = c.mul(c.sub(c.mul(y, P), c.constant(1)), Q);
  out.matrix = Matrix::eq(atom);
  return out;
}

Formula substitute_form(Formula base, const BinaryForm& F, const std::string& variable, const std::string& lambda) {
  if (!F.has_integer_coefficients()) {
    throw std::invalid_argument("substitute_form: F must have integer coefficients");
  }
  auto it = std::find(base.free.begin(), base.free.end(), variable);
  if (it == base.free.end()) throw std::invalid_argument("substitute_form: '" + variable + "' is not free");
  for (const auto& b : base.prefix) {
    if (b.variable == lambda) throw std::invalid_argument("substitute_form: '" + lambda + "' is already bound");
  }
  if (std::find(base.free.begin(), base.free.end(), lambda) != base.free.end()) {
    throw std::invalid_argument("substitute_form: '" + lambda + "' is already free");
  }
  *it = lambda;
  Circuit& c = base.circuit;
  NodeId x = c.var(lambda);
  std::optional<NodeId> acc;
  const auto& coeffs = F.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    NodeId term = i == 0 ? c.constant(coeffs[i].num()) : c.pow(x, i);
    if (i > 0 && coeffs[i] != Rational(1)) term = c.mul(c.constant(coeffs[i].num()), term);
    acc = acc ? c.add(*acc, term) : term;
  }
  base.substitutions.push_back({variable, acc ? *acc : c.constant(0)});
  base.validate();
  return base;
}

}  // namespace campana
