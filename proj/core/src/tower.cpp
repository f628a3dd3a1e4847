#include <campana/tower.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace campana {

const char* block_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::S: return "S";
    case BlockKind::T: return "T";
    case BlockKind::TUnit: return "Tunit";
    case BlockKind::I: return "I";
    case BlockKind::J: return "J";
    case BlockKind::Jabcd: return "Jabcd";
    case BlockKind::InvJ: return "invJ";
    case BlockKind::Disjoint: return "disjoint";
    case BlockKind::Jn: return "Jn";
    case BlockKind::InvJn: return "invJn";
  }
  return "?";
}

void TowerBuilder::absorb(Block& into, Block child) {
  into.vars.insert(into.vars.end(), child.vars.begin(), child.vars.end());
  into.atoms.insert(into.atoms.end(), child.atoms.begin(), child.atoms.end());
  into.trace.children.push_back(std::move(child.trace));
}

namespace {

Block start(BlockKind kind, std::vector<NodeId> params, NodeId element) {
  Block b;
  b.trace.kind = kind;
  b.trace.params = std::move(params);
  b.trace.element = element;
  return b;
}

std::string own_var(Block& b, TowerBuilder& tb) {
  std::string v = tb.fresh();
  b.vars.push_back(v);
  b.trace.vars.push_back(v);
  return v;
}

}  // namespace

Block TowerBuilder::S(NodeId a, NodeId b, NodeId t) {
  Block out = start(BlockKind::S, {a, b}, t);
  NodeId x2 = c_.var(own_var(out, *this));
  NodeId x3 = c_.var(own_var(out, *this));
  NodeId x4 = c_.var(own_var(out, *this));
  NodeId four = c_.constant(4);
  // t^2 - 4a x2^2 - 4b x3^2 + 4ab x4^2 - 4
  NodeId acc = c_.pow(t, 2);
  acc = c_.sub(acc, c_.mul(four, c_.mul(a, c_.pow(x2, 2))));
  acc = c_.sub(acc, c_.mul(four, c_.mul(b, c_.pow(x3, 2))));
  acc = c_.add(acc, c_.mul(four, c_.mul(c_.mul(a, b), c_.pow(x4, 2))));
  acc = c_.sub(acc, four);
  out.atoms.push_back(acc);
  return out;
}

Block TowerBuilder::T(NodeId a, NodeId b, NodeId t) {
  Block out = start(BlockKind::T, {a, b}, t);
  NodeId x = c_.var(own_var(out, *this));
  absorb(out, S(a, b, x));
  absorb(out, S(a, b, c_.sub(t, x)));
  return out;
}

Block TowerBuilder::T_unit(NodeId a, NodeId b, NodeId t) {
  Block out = start(BlockKind::TUnit, {a, b}, t);
  absorb(out, T(a, b, t));
  NodeId v = c_.var(own_var(out, *this));
  absorb(out, T(a, b, v));
  out.atoms.push_back(c_.sub(c_.mul(t, v), c_.constant(1)));
  return out;
}

Block TowerBuilder::I(NodeId a, NodeId b, NodeId c, NodeId t) {
  Block out = start(BlockKind::I, {a, b, c}, t);
  NodeId x = c_.var(own_var(out, *this));
  NodeId y = c_.var(own_var(out, *this));
  NodeId u = c_.var(own_var(out, *this));
  NodeId v = c_.var(own_var(out, *this));
  absorb(out, T_unit(a, b, u));
  absorb(out, T_unit(a, b, v));
  // t = c x^2 u and t - 1 = -y^2 v
  out.atoms.push_back(c_.sub(t, c_.mul(c, c_.mul(c_.pow(x, 2), u))));
  out.atoms.push_back(c_.add(c_.sub(t, c_.constant(1)), c_.mul(c_.pow(y, 2), v)));
  return out;
}

Block TowerBuilder::J(NodeId a, NodeId b, NodeId t) {
  Block out = start(BlockKind::J, {a, b}, t);
  NodeId x = c_.var(own_var(out, *this));
  NodeId y = c_.var(own_var(out, *this));
  absorb(out, I(a, b, a, x));
  absorb(out, I(a, b, a, c_.sub(t, x)));
  absorb(out, I(a, b, b, y));
  absorb(out, I(a, b, b, c_.sub(t, y)));
  return out;
}

Block TowerBuilder::Jabcd(NodeId a, NodeId b, NodeId c, NodeId d, NodeId t) {
  Block out = start(BlockKind::Jabcd, {a, b, c, d}, t);
  NodeId x = c_.var(own_var(out, *this));
  absorb(out, J(a, b, x));
  absorb(out, J(c, d, c_.sub(t, x)));
  return out;
}

Block TowerBuilder::inv_J(NodeId a, NodeId b, NodeId c, NodeId d, NodeId t) {
  Block out = start(BlockKind::InvJ, {a, b, c, d}, t);
  NodeId y = c_.var(own_var(out, *this));
  absorb(out, Jabcd(a, b, c, d, y));
  out.atoms.push_back(c_.sub(c_.mul(t, y), c_.constant(1)));
  return out;
}

Block TowerBuilder::disjoint(const std::vector<NodeId>& abcd, const std::vector<NodeId>& primed) {
  if (abcd.size() != 4 || primed.size() != 4) throw std::invalid_argument("disjoint: expects 4 + 4 parameters");
  std::vector<NodeId> params = abcd;
  params.insert(params.end(), primed.begin(), primed.end());
  Block out = start(BlockKind::Disjoint, params, 0);
  NodeId x = c_.var(own_var(out, *this));
  NodeId y = c_.var(own_var(out, *this));
  NodeId prod = params[0];
  for (std::size_t i = 1; i < params.size(); ++i) prod = c_.mul(prod, params[i]);
  out.atoms.push_back(c_.sub(c_.mul(prod, x), c_.constant(1)));
  absorb(out, Jabcd(abcd[0], abcd[1], abcd[2], abcd[3], y));
  absorb(out, Jabcd(primed[0], primed[1], primed[2], primed[3], c_.sub(c_.constant(1), y)));
  return out;
}

Block TowerBuilder::Jn(NodeId a, NodeId b, NodeId c, NodeId d, long n, NodeId t) {
  if (n < 2) throw std::invalid_argument("Jn: n must be at least 2 (use Jabcd for n = 1)");
  Block out = start(BlockKind::Jn, {a, b, c, d}, t);
  out.trace.n = n;
  NodeId x = c_.var(own_var(out, *this));
  NodeId y = c_.var(own_var(out, *this));
  out.atoms.push_back(c_.sub(t, c_.mul(x, c_.pow(y, static_cast<unsigned long>(n - 1)))));
  absorb(out, Jabcd(a, b, c, d, x));
  absorb(out, Jabcd(a, b, c, d, y));
  return out;
}

Block TowerBuilder::inv_Jn(NodeId a, NodeId b, NodeId c, NodeId d, long n, NodeId t) {
  if (n < 2) throw std::invalid_argument("inv_Jn: n must be at least 2");
  Block out = start(BlockKind::InvJn, {a, b, c, d}, t);
  out.trace.n = n;
  NodeId y = c_.var(own_var(out, *this));
  out.atoms.push_back(c_.sub(c_.mul(t, y), c_.constant(1)));
  absorb(out, Jn(a, b, c, d, n, y));
  return out;
}

Formula block_formula(const Circuit& circuit, const Block& block, std::vector<std::string> free) {
  Formula f;
  f.free = std::move(free);
  for (const auto& v : block.vars) f.prefix.push_back({Quantifier::Exists, v});
  std::vector<Matrix> atoms;
  for (NodeId a : block.atoms) atoms.push_back(Matrix::eq(f.circuit.import(circuit, a)));
  f.matrix = atoms.size() == 1 ? atoms[0] : Matrix::all_of(std::move(atoms));
  f.validate();
  return f;
}

namespace {

void check_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw std::invalid_argument("variable names must be nonempty");
    bool reserved = n.size() > 1 && n[0] == 'x' &&
                    std::all_of(n.begin() + 1, n.end(), [](unsigned char ch) { return std::isdigit(ch); });
    if (reserved) throw std::invalid_argument("variable name '" + n + "' is reserved for bound variables");
    if (!seen.insert(n).second) throw std::invalid_argument("variable name '" + n + "' used twice");
  }
}

const std::vector<std::string> kFree{"a", "b", "c", "d", "r"};
const std::vector<std::string> kPrimed{"a'", "b'", "c'", "d'"};

}  // namespace

Formula build_S(const std::string& a, const std::string& b, const std::string& r) {
  check_names({a, b, r});
  Circuit c;
  // Standalone S uses the witness names x2, x3, x4.
  TowerBuilder tb(c, 2);
  return block_formula(c, tb.S(c.var(a), c.var(b), c.var(r)), {a, b, r});
}

Formula build_T(const std::string& a, const std::string& b, const std::string& r) {
  check_names({a, b, r});
  Circuit c;
  TowerBuilder tb(c);
  return block_formula(c, tb.T(c.var(a), c.var(b), c.var(r)), {a, b, r});
}

Formula build_T_unit(const std::string& a, const std::string& b, const std::string& r) {
  check_names({a, b, r});
  Circuit c;
  TowerBuilder tb(c);
  return block_formula(c, tb.T_unit(c.var(a), c.var(b), c.var(r)), {a, b, r});
}

Formula build_I(const std::string& a, const std::string& b, const std::string& cc, const std::string& r) {
  check_names({a, b, cc, r});
  Circuit c;
  TowerBuilder tb(c);
  return block_formula(c, tb.I(c.var(a), c.var(b), c.var(cc), c.var(r)), {a, b, cc, r});
}

Formula build_J(const std::string& a, const std::string& b, const std::string& r) {
  check_names({a, b, r});
  Circuit c;
  TowerBuilder tb(c);
  return block_formula(c, tb.J(c.var(a), c.var(b), c.var(r)), {a, b, r});
}

Formula build_Jabcd() {
  Circuit c;
  TowerBuilder tb(c);
  Block b = tb.Jabcd(c.var("a"), c.var("b"), c.var("c"), c.var("d"), c.var("r"));
  return block_formula(c, b, kFree);
}

Formula build_inv_J() {
  Circuit c;
  TowerBuilder tb(c);
  Block b = tb.inv_J(c.var("a"), c.var("b"), c.var("c"), c.var("d"), c.var("r"));
  return block_formula(c, b, kFree);
}

Formula build_disjoint() {
  Circuit c;
  TowerBuilder tb(c);
  std::vector<NodeId> abcd, primed;
  for (int i = 0; i < 4; ++i) {
    abcd.push_back(c.var(kFree[i]));
    primed.push_back(c.var(kPrimed[i]));
  }
  Block b = tb.disjoint(abcd, primed);
  std::vector<std::string> free(kFree.begin(), kFree.begin() + 4);
  free.insert(free.end(), kPrimed.begin(), kPrimed.end());
  return block_formula(c, b, free);
}

Formula build_Jn(long n) {
  Circuit c;
  TowerBuilder tb(c);
  Block b = tb.Jn(c.var("a"), c.var("b"), c.var("c"), c.var("d"), n, c.var("r"));
  return block_formula(c, b, kFree);
}

Formula build_inv_Jn(long n) {
  Circuit c;
  TowerBuilder tb(c);
  Block b = tb.inv_Jn(c.var("a"), c.var("b"), c.var("c"), c.var("d"), n, c.var("r"));
  return block_formula(c, b, kFree);
}

std::vector<NodeId> Pipeline::premise_atoms() const {
  std::vector<NodeId> out = disjoint.atoms;
  out.insert(out.end(), inv_J.atoms.begin(), inv_J.atoms.end());
  return out;
}

std::vector<std::string> Pipeline::premise_vars() const {
  std::vector<std::string> out = disjoint.vars;
  out.insert(out.end(), inv_J.vars.begin(), inv_J.vars.end());
  return out;
}

Pipeline build_pipeline(long n, bool integrality) {
  if (!integrality && n < 2) throw std::invalid_argument("build_campana: n must be at least 2");
  Pipeline p;
  p.n = integrality ? 0 : n;
  p.integrality = integrality;
  p.free = kFree;
  p.primed = kPrimed;
  Circuit& c = p.circuit;
  TowerBuilder tb(c);
  std::vector<NodeId> abcd, primed;
  for (int i = 0; i < 4; ++i) {
    abcd.push_back(c.var(kFree[i]));
    primed.push_back(c.var(kPrimed[i]));
  }
  NodeId r = c.var("r");
  p.disjoint = tb.disjoint(abcd, primed);
  p.inv_J = tb.inv_J(primed[0], primed[1], primed[2], primed[3], r);
  if (integrality) {
    p.conclusion = tb.Jabcd(primed[0], primed[1], primed[2], primed[3], c.constant(1));
  } else {
    p.conclusion = tb.inv_Jn(primed[0], primed[1], primed[2], primed[3], n, r);
  }
  return p;
}

namespace {

Formula assemble(const Pipeline& p, bool real_embedded) {
  auto combine = [&](Circuit& c, const std::vector<NodeId>& atoms) {
    return real_embedded ? combine_sos(c, atoms) : combine_many(c, atoms);
  };
  std::vector<std::string> premise_free = p.free;
  premise_free.insert(premise_free.end(), p.primed.begin(), p.primed.end());

  Formula premise;
  premise.free = premise_free;
  for (const auto& v : p.premise_vars()) premise.prefix.push_back({Quantifier::Exists, v});
  premise.circuit = p.circuit;
  premise.matrix = Matrix::eq(combine(premise.circuit, p.premise_atoms()));
  premise.real_embedded = real_embedded;

  Formula universal = universally_close(negate(std::move(premise)), p.primed);

  Formula conclusion;
  conclusion.free = p.primed;
  if (!p.integrality) conclusion.free.push_back("r");
  for (const auto& v : p.conclusion.vars) conclusion.prefix.push_back({Quantifier::Exists, v});
  conclusion.circuit = p.circuit;
  conclusion.matrix = Matrix::eq(combine(conclusion.circuit, p.conclusion.atoms));
  conclusion.real_embedded = real_embedded;

  // Fresh name continuing the x1, x2, ... numbering.
  std::string fresh = "x" + std::to_string(p.premise_vars().size() + p.conclusion.vars.size() + 1);
  Formula out = prenex_or(universal, conclusion, fresh);
  out.validate();
  return out;
}

}  // namespace

Formula build_campana(long n, bool real_embedded) {
  if (n < 2) throw std::invalid_argument("build_campana: n must be at least 2");
  return assemble(build_pipeline(n, false), real_embedded);
}

Formula build_integrality(bool real_embedded) { return assemble(build_pipeline(0, true), real_embedded); }

Formula build_target(const std::string& target, long n, bool real_embedded) {
  if (target == "campana") return build_campana(n, real_embedded);
  if (target == "integrality") return build_integrality(real_embedded);
  if (target == "S") return build_S();
  if (target == "T") return build_T();
  if (target == "Tunit") return build_T_unit();
  if (target == "I") return build_I();
  if (target == "J") return build_J();
  if (target == "Jabcd") return build_Jabcd();
  if (target == "invJ") return build_inv_J();
  if (target == "disjoint") return build_disjoint();
  if (target == "Jn") return build_Jn(n);
  if (target == "invJn") return build_inv_Jn(n);
  throw std::invalid_argument("unknown target '" + target + "'");
}

}  // namespace campana
