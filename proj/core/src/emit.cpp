#include <campana/emit.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace campana {

using ojson = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "sexpr") return Format::Sexpr;
  if (name == "latex") return Format::Latex;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

namespace {

const char* quantifier_name(Quantifier q) { return q == Quantifier::Forall ? "forall" : "exists"; }

Quantifier parse_quantifier(const std::string& s) {
  if (s == "forall") return Quantifier::Forall;
  if (s == "exists") return Quantifier::Exists;
  throw std::invalid_argument("unknown quantifier '" + s + "'");
}

Op parse_op(const std::string& s) {
  for (Op op : {Op::Var, Op::Int, Op::Add, Op::Mul, Op::Neg, Op::Pow, Op::Norm}) {
    if (s == op_name(op)) return op;
  }
  throw std::invalid_argument("unknown circuit op '" + s + "'");
}

std::size_t expected_arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Int: return 0;
    case Op::Neg:
    case Op::Pow: return 1;
    case Op::Add:
    case Op::Mul: return 2;
    case Op::Norm: return SIZE_MAX;
  }
  return 0;
}

// Dense renumbering of the nodes the formula actually uses.
struct Compact {
  std::vector<NodeId> order;             // old ids, ascending
  std::map<NodeId, NodeId> new_id;       // old -> new

  explicit Compact(const Formula& f) {
    std::vector<NodeId> roots = f.matrix.atoms();
    for (const auto& s : f.substitutions) roots.push_back(s.value);
    std::vector<char> seen(f.circuit.size(), 0);
    std::vector<NodeId> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = 1;
      for (NodeId a : f.circuit.node(id).args) stack.push_back(a);
    }
    for (NodeId i = 0; i < f.circuit.size(); ++i) {
      if (seen[i]) {
        new_id[i] = static_cast<NodeId>(order.size());
        order.push_back(i);
      }
    }
  }
};

ojson int_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return ojson(v.get_si());
  return ojson(v.get_str());
}

BigInt json_int(const ojson& v) {
  if (v.is_number_integer()) return BigInt(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    Rational r = Rational::parse(v.get<std::string>());
    if (!r.is_integer()) throw std::invalid_argument("expected an integer, got " + v.get<std::string>());
    return r.num();
  }
  throw std::invalid_argument("expected an integer");
}

ojson matrix_json(const Matrix& m, const Compact& cmp) {
  switch (m.kind) {
    case Matrix::Kind::Eq: return ojson{{"eq", cmp.new_id.at(m.atom)}};
    case Matrix::Kind::Neq: return ojson{{"neq", cmp.new_id.at(m.atom)}};
    case Matrix::Kind::And:
    case Matrix::Kind::Or: {
      ojson arr = ojson::array();
      for (const auto& ch : m.children) arr.push_back(matrix_json(ch, cmp));
      return ojson{{m.kind == Matrix::Kind::And ? "and" : "or", arr}};
    }
  }
  return {};
}

std::string emit_json(const Formula& f) {
  Compact cmp(f);
  ojson j;
  j["free"] = f.free;
  ojson prefix = ojson::array();
  for (const auto& b : f.prefix) prefix.push_back({quantifier_name(b.quantifier), b.variable});
  j["prefix"] = prefix;
  ojson nodes = ojson::array();
  for (NodeId old : cmp.order) {
    const Node& n = f.circuit.node(old);
    ojson node;
    node["op"] = op_name(n.op);
    switch (n.op) {
      case Op::Var: node["name"] = n.name; break;
      case Op::Int: node["value"] = int_json(n.value); break;
      case Op::Norm: node["p"] = int_json(n.value); break;
      default: break;
    }
    if (!n.args.empty()) {
      ojson args = ojson::array();
      for (NodeId a : n.args) args.push_back(cmp.new_id.at(a));
      node["args"] = args;
    }
    if (n.op == Op::Pow) node["exp"] = n.exponent;
    nodes.push_back(node);
  }
  j["nodes"] = nodes;
  j["matrix"] = matrix_json(f.matrix, cmp);
  ojson subs = ojson::array();
  for (const auto& s : f.substitutions) subs.push_back({{"var", s.variable}, {"value", cmp.new_id.at(s.value)}});
  j["substitutions"] = subs;
  j["real_embedded"] = f.real_embedded;
  return j.dump() + "\n";
}

std::string sexpr_matrix(const Matrix& m, const Compact& cmp) {
  switch (m.kind) {
    case Matrix::Kind::Eq: return "(eq " + std::to_string(cmp.new_id.at(m.atom)) + ")";
    case Matrix::Kind::Neq: return "(neq " + std::to_string(cmp.new_id.at(m.atom)) + ")";
    case Matrix::Kind::And:
    case Matrix::Kind::Or: {
      std::string out = m.kind == Matrix::Kind::And ? "(and" : "(or";
      for (const auto& ch : m.children) out += " " + sexpr_matrix(ch, cmp);
      return out + ")";
    }
  }
  return "";
}

std::string emit_sexpr(const Formula& f) {
  Compact cmp(f);
  std::ostringstream os;
  os << "(formula\n  (free";
  for (const auto& v : f.free) os << ' ' << v;
  os << ")\n  (prefix";
  for (const auto& b : f.prefix) os << "\n    (" << quantifier_name(b.quantifier) << ' ' << b.variable << ')';
  os << ")\n  (nodes";
  for (NodeId old : cmp.order) {
    const Node& n = f.circuit.node(old);
    os << "\n    (" << op_name(n.op);
    switch (n.op) {
      case Op::Var: os << ' ' << n.name; break;
      case Op::Int: os << ' ' << n.value.get_str(); break;
      case Op::Norm: os << ' ' << n.value.get_str(); break;
      case Op::Pow: os << ' ' << cmp.new_id.at(n.args[0]) << ' ' << n.exponent; break;
      default: break;
    }
    if (n.op != Op::Pow) {
      for (NodeId a : n.args) os << ' ' << cmp.new_id.at(a);
    }
    os << ')';
  }
  os << ")\n  (matrix " << sexpr_matrix(f.matrix, cmp) << ")\n  (substitutions";
  for (const auto& s : f.substitutions) os << " (" << s.variable << ' ' << cmp.new_id.at(s.value) << ')';
  os << ")\n  (real_embedded " << (f.real_embedded ? "true" : "false") << "))\n";
  return os.str();
}

std::string latex_var(const std::string& name) {
  if (name.size() > 1 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return "x_{" + name.substr(1) + "}";
  }
  if (name == "lambda") return "\\lambda";
  return name;
}

std::string latex_node(const Circuit& c, NodeId id);

bool latex_atomic(const Circuit& c, NodeId id) {
  const Node& n = c.node(id);
  return n.op == Op::Var || (n.op == Op::Int && n.value >= 0) || n.op == Op::Norm;
}

std::string latex_factor(const Circuit& c, NodeId id) {
  const Node& n = c.node(id);
  if (n.op == Op::Add || n.op == Op::Neg || (n.op == Op::Int && n.value < 0)) {
    return "\\left(" + latex_node(c, id) + "\\right)";
  }
  return latex_node(c, id);
}

std::string latex_node(const Circuit& c, NodeId id) {
  const Node& n = c.node(id);
  switch (n.op) {
    case Op::Var: return latex_var(n.name);
    case Op::Int: return n.value.get_str();
    case Op::Add: {
      const Node& r = c.node(n.args[1]);
      if (r.op == Op::Neg) return latex_node(c, n.args[0]) + " - " + latex_factor(c, r.args[0]);
      return latex_node(c, n.args[0]) + " + " + latex_node(c, n.args[1]);
    }
    case Op::Mul: return latex_factor(c, n.args[0]) + " " + latex_factor(c, n.args[1]);
    case Op::Neg: return "-" + latex_factor(c, n.args[0]);
    case Op::Pow: {
      std::string base = latex_atomic(c, n.args[0]) ? latex_node(c, n.args[0])
                                                    : "\\left(" + latex_node(c, n.args[0]) + "\\right)";
      return "{" + base + "}^{" + std::to_string(n.exponent) + "}";
    }
    case Op::Norm: {
      std::string out = "\\mathrm{N}_{" + n.value.get_str() + "," + std::to_string(n.args.size()) + "}\\left(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ",\\allowbreak ";
        out += latex_node(c, n.args[i]);
      }
      return out + "\\right)";
    }
  }
  return "";
}

std::string latex_matrix(const Circuit& c, const Matrix& m) {
  switch (m.kind) {
    case Matrix::Kind::Eq: return "$" + latex_node(c, m.atom) + " = 0$";
    case Matrix::Kind::Neq: return "$" + latex_node(c, m.atom) + " \\neq 0$";
    case Matrix::Kind::And:
    case Matrix::Kind::Or: {
      std::string sep = m.kind == Matrix::Kind::And ? " $\\wedge$\n" : " $\\vee$\n";
      std::string out = "$\\bigl($";
      for (std::size_t i = 0; i < m.children.size(); ++i) {
        if (i) out += sep;
        out += latex_matrix(c, m.children[i]);
      }
      return out + "$\\bigr)$";
    }
  }
  return "";
}

std::string emit_latex(const Formula& f) {
  std::ostringstream os;
  os << "\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n\\noindent\n";
  os << "Free variables: $";
  for (std::size_t i = 0; i < f.free.size(); ++i) os << (i ? ", " : "") << latex_var(f.free[i]);
  os << "$.\n\n\\noindent\n";
  for (std::size_t i = 0; i < f.prefix.size(); ++i) {
    os << "$" << (f.prefix[i].quantifier == Quantifier::Forall ? "\\forall " : "\\exists ")
       << latex_var(f.prefix[i].variable) << "$" << ((i + 1) % 16 == 0 ? "\n" : " ");
  }
  os << "\n\n\\noindent\n" << latex_matrix(f.circuit, f.matrix) << "\n";
  for (const auto& s : f.substitutions) {
    os << "\n\\noindent where $" << latex_var(s.variable) << " = " << latex_node(f.circuit, s.value) << "$.\n";
  }
  if (f.real_embedded) os << "\n\\noindent (real-embedded combination)\n";
  os << "\\end{document}\n";
  return os.str();
}

// Shared reconstruction from parsed parts.
struct RawNode {
  Op op;
  std::vector<std::size_t> args;
  BigInt value;
  std::string name;
  unsigned long exponent = 0;
};

std::vector<NodeId> rebuild_nodes(Circuit& c, const std::vector<RawNode>& raw) {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const RawNode& r = raw[i];
    std::size_t arity = expected_arity(r.op);
    if (arity != SIZE_MAX && r.args.size() != arity) {
      throw std::invalid_argument("node " + std::to_string(i) + ": wrong number of arguments");
    }
    std::vector<NodeId> args;
    for (std::size_t a : r.args) {
      if (a >= i) throw std::invalid_argument("node " + std::to_string(i) + ": argument does not precede it");
      args.push_back(ids[a]);
    }
    switch (r.op) {
      case Op::Var: ids.push_back(c.var(r.name)); break;
      case Op::Int: ids.push_back(c.constant(r.value)); break;
      case Op::Add: ids.push_back(c.add(args[0], args[1])); break;
      case Op::Mul: ids.push_back(c.mul(args[0], args[1])); break;
      case Op::Neg: ids.push_back(c.neg(args[0])); break;
      case Op::Pow:
        if (r.exponent < 2) throw std::invalid_argument("pow node with exponent below 2");
        ids.push_back(c.pow(args[0], r.exponent));
        break;
      case Op::Norm: ids.push_back(c.norm(args, r.value)); break;
    }
  }
  return ids;
}

NodeId node_ref(const std::vector<NodeId>& ids, std::size_t i) {
  if (i >= ids.size()) throw std::invalid_argument("node reference " + std::to_string(i) + " out of range");
  return ids[i];
}

Matrix matrix_from_json(const ojson& j, const std::vector<NodeId>& ids) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("matrix node must be a one-key object");
  auto it = j.begin();
  const std::string& key = it.key();
  if (key == "eq") return Matrix::eq(node_ref(ids, it.value().get<std::size_t>()));
  if (key == "neq") return Matrix::neq(node_ref(ids, it.value().get<std::size_t>()));
  if (key == "and" || key == "or") {
    std::vector<Matrix> children;
    for (const auto& ch : it.value()) children.push_back(matrix_from_json(ch, ids));
    return key == "and" ? Matrix::all_of(std::move(children)) : Matrix::any_of(std::move(children));
  }
  throw std::invalid_argument("unknown matrix node '" + key + "'");
}

// Minimal s-expression reader.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;

  const std::string& head() const {
    if (!is_list || items.empty() || items[0].is_list) throw std::invalid_argument("expected a tagged list");
    return items[0].atom;
  }
};

class SReader {
 public:
  explicit SReader(std::string_view text) : text_(text) {}

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw std::invalid_argument("unexpected end of s-expression");
    if (text_[pos_] == '(') {
      ++pos_;
      SExpr list;
      list.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw std::invalid_argument("unbalanced parentheses");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (text_[pos_] == ')') throw std::invalid_argument("unexpected ')'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    SExpr a;
    a.atom = std::string(text_.substr(start, pos_ - start));
    return a;
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::size_t to_index(const SExpr& e) {
  if (e.is_list || e.atom.empty() || !std::all_of(e.atom.begin(), e.atom.end(), ::isdigit)) {
    throw std::invalid_argument("expected a node index");
  }
  return std::stoul(e.atom);
}

const std::string& to_atom(const SExpr& e) {
  if (e.is_list) throw std::invalid_argument("expected an atom");
  return e.atom;
}

Matrix matrix_from_sexpr(const SExpr& e, const std::vector<NodeId>& ids) {
  const std::string& h = e.head();
  if (h == "eq" || h == "neq") {
    if (e.items.size() != 2) throw std::invalid_argument("atom needs one node index");
    NodeId id = node_ref(ids, to_index(e.items[1]));
    return h == "eq" ? Matrix::eq(id) : Matrix::neq(id);
  }
  if (h == "and" || h == "or") {
    std::vector<Matrix> children;
    for (std::size_t i = 1; i < e.items.size(); ++i) children.push_back(matrix_from_sexpr(e.items[i], ids));
    return h == "and" ? Matrix::all_of(std::move(children)) : Matrix::any_of(std::move(children));
  }
  throw std::invalid_argument("unknown matrix node '" + h + "'");
}

}  // namespace

std::string emit(const Formula& f, Format format) {
  switch (format) {
    case Format::Json: return emit_json(f);
    case Format::Sexpr: return emit_sexpr(f);
    case Format::Latex: return emit_latex(f);
  }
  throw std::invalid_argument("unknown format");
}

Formula parse_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  try {
    Formula f;
    f.free = j.at("free").get<std::vector<std::string>>();
    for (const auto& b : j.at("prefix")) {
      if (!b.is_array() || b.size() != 2) throw std::invalid_argument("prefix entries are [quantifier, name]");
      f.prefix.push_back({parse_quantifier(b[0].get<std::string>()), b[1].get<std::string>()});
    }
    std::vector<RawNode> raw;
    for (const auto& n : j.at("nodes")) {
      RawNode r;
      r.op = parse_op(n.at("op").get<std::string>());
      if (n.contains("args")) r.args = n.at("args").get<std::vector<std::size_t>>();
      if (r.op == Op::Var) r.name = n.at("name").get<std::string>();
      if (r.op == Op::Int) r.value = json_int(n.at("value"));
      if (r.op == Op::Norm) r.value = json_int(n.at("p"));
      if (r.op == Op::Pow) r.exponent = n.at("exp").get<unsigned long>();
      raw.push_back(std::move(r));
    }
    std::vector<NodeId> ids = rebuild_nodes(f.circuit, raw);
    f.matrix = matrix_from_json(j.at("matrix"), ids);
    if (j.contains("substitutions")) {
      for (const auto& s : j.at("substitutions")) {
        f.substitutions.push_back({s.at("var").get<std::string>(), node_ref(ids, s.at("value").get<std::size_t>())});
      }
    }
    f.real_embedded = j.value("real_embedded", false);
    f.validate();
    return f;
  } catch (const ojson::exception& e) {
    throw std::invalid_argument(std::string("malformed formula JSON: ") + e.what());
  }
}

Formula parse_sexpr(std::string_view text) {
  SReader reader(text);
  SExpr top = reader.read();
  if (!reader.at_end()) throw std::invalid_argument("trailing input after s-expression");
  if (top.head() != "formula") throw std::invalid_argument("expected (formula ...)");
  Formula f;
  std::vector<NodeId> ids;
  const SExpr* matrix = nullptr;
  const SExpr* subs = nullptr;
  for (std::size_t i = 1; i < top.items.size(); ++i) {
    const SExpr& sec = top.items[i];
    const std::string& h = sec.head();
    if (h == "free") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) f.free.push_back(to_atom(sec.items[k]));
    } else if (h == "prefix") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const SExpr& b = sec.items[k];
        if (!b.is_list || b.items.size() != 2) throw std::invalid_argument("prefix entries are (quantifier name)");
        f.prefix.push_back({parse_quantifier(to_atom(b.items[0])), to_atom(b.items[1])});
      }
    } else if (h == "nodes") {
      std::vector<RawNode> raw;
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const SExpr& n = sec.items[k];
        RawNode r;
        r.op = parse_op(n.head());
        std::size_t first_arg = 1;
        if (r.op == Op::Var) {
          if (n.items.size() != 2) throw std::invalid_argument("(var name)");
          r.name = to_atom(n.items[1]);
          first_arg = 2;
        } else if (r.op == Op::Int || r.op == Op::Norm) {
          if (n.items.size() < 2) throw std::invalid_argument("missing integer");
          Rational v = Rational::parse(to_atom(n.items[1]));
          if (!v.is_integer()) throw std::invalid_argument("expected an integer");
          r.value = v.num();
          first_arg = 2;
        } else if (r.op == Op::Pow) {
          if (n.items.size() != 3) throw std::invalid_argument("(pow base exponent)");
          r.args.push_back(to_index(n.items[1]));
          r.exponent = to_index(n.items[2]);
          first_arg = n.items.size();
        }
        for (std::size_t a = first_arg; a < n.items.size(); ++a) r.args.push_back(to_index(n.items[a]));
        raw.push_back(std::move(r));
      }
      ids = rebuild_nodes(f.circuit, raw);
    } else if (h == "matrix") {
      if (sec.items.size() != 2) throw std::invalid_argument("(matrix node)");
      matrix = &sec.items[1];
    } else if (h == "substitutions") {
      subs = &sec;
    } else if (h == "real_embedded") {
      if (sec.items.size() != 2) throw std::invalid_argument("(real_embedded flag)");
      const std::string& flag = to_atom(sec.items[1]);
      if (flag != "true" && flag != "false") throw std::invalid_argument("real_embedded must be true or false");
      f.real_embedded = flag == "true";
    } else {
      throw std::invalid_argument("unknown section '" + h + "'");
    }
  }
  if (!matrix) throw std::invalid_argument("missing matrix section");
  f.matrix = matrix_from_sexpr(*matrix, ids);
  if (subs) {
    for (std::size_t k = 1; k < subs->items.size(); ++k) {
      const SExpr& s = subs->items[k];
      if (!s.is_list || s.items.size() != 2) throw std::invalid_argument("substitutions are (var node)");
      f.substitutions.push_back({to_atom(s.items[0]), node_ref(ids, to_index(s.items[1]))});
    }
  }
  f.validate();
  return f;
}

Formula parse(std::string_view text, Format format) {
  switch (format) {
    case Format::Json: return parse_json(text);
    case Format::Sexpr: return parse_sexpr(text);
    case Format::Latex: throw std::invalid_argument("LaTeX output cannot be parsed back");
  }
  throw std::invalid_argument("unknown format");
}

}  // namespace campana
