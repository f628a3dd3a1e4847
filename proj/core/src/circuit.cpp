#include <campana/circuit.hpp>

#include <campana/norm.hpp>

#include <algorithm>
#include <stdexcept>

namespace campana {

const char* op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Int: return "int";
    case Op::Add: return "add";
    case Op::Mul: return "mul";
    case Op::Neg: return "neg";
    case Op::Pow: return "pow";
    case Op::Norm: return "norm";
  }
  return "?";
}

const std::vector<std::uint64_t>& evaluation_primes() {
  static const std::vector<std::uint64_t> primes = large_primes(3);
  return primes;
}

NodeId Circuit::intern(Node node) {
  for (NodeId a : node.args) {
    if (a >= nodes_.size()) throw std::out_of_range("Circuit: child id out of range");
  }
  std::string key = op_name(node.op);
  key += '|';
  for (NodeId a : node.args) key += std::to_string(a) + ',';
  key += '|' + node.value.get_str() + '|' + node.name + '|' + std::to_string(node.exponent);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

NodeId Circuit::var(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("Circuit: empty variable name");
  Node n;
  n.op = Op::Var;
  n.name = name;
  return intern(std::move(n));
}

NodeId Circuit::constant(const BigInt& value) {
  Node n;
  n.op = Op::Int;
  n.value = value;
  return intern(std::move(n));
}

NodeId Circuit::add(NodeId l, NodeId r) {
  Node n;
  n.op = Op::Add;
  n.args = {l, r};
  return intern(std::move(n));
}

NodeId Circuit::mul(NodeId l, NodeId r) {
  Node n;
  n.op = Op::Mul;
  n.args = {l, r};
  return intern(std::move(n));
}

NodeId Circuit::neg(NodeId x) {
  Node n;
  n.op = Op::Neg;
  n.args = {x};
  return intern(std::move(n));
}

NodeId Circuit::pow(NodeId x, unsigned long k) {
  if (k == 0) throw std::invalid_argument("Circuit: exponent must be positive");
  if (k == 1) return x;
  Node n;
  n.op = Op::Pow;
  n.args = {x};
  n.exponent = k;
  return intern(std::move(n));
}

NodeId Circuit::norm(const std::vector<NodeId>& args, const BigInt& p) {
  if (args.empty()) throw std::invalid_argument("Circuit: norm of an empty list");
  if (p < 2) throw std::invalid_argument("Circuit: norm radicand must be at least 2");
  Node n;
  n.op = Op::Norm;
  n.args = args;
  n.value = p;
  return intern(std::move(n));
}

NodeId Circuit::import(const Circuit& other, NodeId root) {
  std::vector<NodeId> order = other.reachable(root);
  std::unordered_map<NodeId, NodeId> remap;
  for (NodeId id : order) {
    Node n = other.nodes_[id];
    for (auto& a : n.args) a = remap.at(a);
    remap[id] = intern(std::move(n));
  }
  return remap.at(root);
}

NodeId Circuit::root() const {
  if (!root_) throw std::logic_error("Circuit: no root designated");
  return *root_;
}

void Circuit::set_root(NodeId id) {
  if (id >= nodes_.size()) throw std::out_of_range("Circuit: root id out of range");
  root_ = id;
}

std::vector<NodeId> Circuit::reachable(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("Circuit: node id out of range");
  std::vector<char> seen(id + 1, 0);
  std::vector<NodeId> stack{id};
  seen[id] = 1;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (NodeId a : nodes_[cur].args) {
      if (!seen[a]) {
        seen[a] = 1;
        stack.push_back(a);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId i = 0; i <= id; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

}  // namespace

std::uint64_t Circuit::degree(NodeId id) const {
  std::vector<NodeId> order = reachable(id);
  std::unordered_map<NodeId, std::uint64_t> deg;
  for (NodeId i : order) {
    const Node& n = nodes_[i];
    std::uint64_t d = 0;
    switch (n.op) {
      case Op::Var: d = 1; break;
      case Op::Int: d = 0; break;
      case Op::Add: d = std::max(deg[n.args[0]], deg[n.args[1]]); break;
      case Op::Mul: d = sat_add(deg[n.args[0]], deg[n.args[1]]); break;
      case Op::Neg: d = deg[n.args[0]]; break;
      case Op::Pow: d = sat_mul(n.exponent, deg[n.args[0]]); break;
      case Op::Norm: {
        std::uint64_t m = 0;
        for (NodeId a : n.args) m = std::max(m, deg[a]);
        d = sat_mul(n.args.size(), m);
        break;
      }
    }
    deg[i] = d;
  }
  return deg[id];
}

bool Circuit::uses_negation(NodeId id) const {
  for (NodeId i : reachable(id)) {
    if (nodes_[i].op == Op::Neg) return true;
    if (nodes_[i].op == Op::Int && nodes_[i].value < 0) return true;
  }
  return false;
}

std::vector<std::string> Circuit::variables(NodeId id) const {
  std::vector<std::string> out;
  for (NodeId i : reachable(id)) {
    if (nodes_[i].op == Op::Var) out.push_back(nodes_[i].name);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational Circuit::evaluate(NodeId id, const Assignment& values) const {
  std::vector<NodeId> order = reachable(id);
  std::unordered_map<NodeId, Rational> val;
  for (NodeId i : order) {
    const Node& n = nodes_[i];
    Rational v;
    switch (n.op) {
      case Op::Var: {
        auto it = values.find(n.name);
        if (it == values.end()) throw std::invalid_argument("unassigned variable '" + n.name + "'");
        v = it->second;
        break;
      }
      case Op::Int: v = Rational(n.value); break;
      case Op::Add: v = val.at(n.args[0]) + val.at(n.args[1]); break;
      case Op::Mul: v = val.at(n.args[0]) * val.at(n.args[1]); break;
      case Op::Neg: v = -val.at(n.args[0]); break;
      case Op::Pow: v = val.at(n.args[0]).pow(long(n.exponent)); break;
      case Op::Norm: {
        std::vector<Rational> args;
        for (NodeId a : n.args) args.push_back(val.at(a));
        v = exact_norm(args, n.value);
        break;
      }
    }
    val[i] = std::move(v);
  }
  return val.at(id);
}

namespace {

std::optional<std::uint64_t> rational_mod(const Rational& r, std::uint64_t q) {
  BigInt num, den;
  mpz_fdiv_r_ui(num.get_mpz_t(), r.num().get_mpz_t(), q);
  mpz_fdiv_r_ui(den.get_mpz_t(), r.den().get_mpz_t(), q);
  if (den == 0) return std::nullopt;
  return mulmod(num.get_ui(), invmod(den.get_ui(), q), q);
}

}  // namespace

std::optional<std::uint64_t> Circuit::evaluate_mod(NodeId id, const Assignment& values, std::uint64_t q) const {
  std::vector<NodeId> order = reachable(id);
  std::unordered_map<NodeId, std::uint64_t> val;
  for (NodeId i : order) {
    const Node& n = nodes_[i];
    std::uint64_t v = 0;
    switch (n.op) {
      case Op::Var: {
        auto it = values.find(n.name);
        if (it == values.end()) throw std::invalid_argument("unassigned variable '" + n.name + "'");
        auto r = rational_mod(it->second, q);
        if (!r) return std::nullopt;
        v = *r;
        break;
      }
      case Op::Int: v = *rational_mod(Rational(n.value), q); break;
      case Op::Add: {
        std::uint64_t s = val.at(n.args[0]) + val.at(n.args[1]);
        v = s >= q ? s - q : s;
        break;
      }
      case Op::Mul: v = mulmod(val.at(n.args[0]), val.at(n.args[1]), q); break;
      case Op::Neg: v = val.at(n.args[0]) == 0 ? 0 : q - val.at(n.args[0]); break;
      case Op::Pow: v = powmod(val.at(n.args[0]), n.exponent, q); break;
      case Op::Norm: {
        std::vector<std::uint64_t> args;
        for (NodeId a : n.args) args.push_back(val.at(a));
        v = norm_mod(args, *rational_mod(Rational(n.value), q), q);
        break;
      }
    }
    val[i] = v;
  }
  return val.at(id);
}

bool Circuit::vanishes(NodeId id, const Assignment& values) const {
  for (std::uint64_t q : evaluation_primes()) {
    auto r = evaluate_mod(id, values, q);
    if (r && *r != 0) return false;
  }
  return evaluate(id, values).is_zero();
}

std::string Circuit::to_string(NodeId id) const {
  const Node& n = nodes_.at(id);
  switch (n.op) {
    case Op::Var: return n.name;
    case Op::Int: return n.value < 0 ? "(" + n.value.get_str() + ")" : n.value.get_str();
    case Op::Add: return "(" + to_string(n.args[0]) + " + " + to_string(n.args[1]) + ")";
    case Op::Mul: return to_string(n.args[0]) + "*" + to_string(n.args[1]);
    case Op::Neg: return "-(" + to_string(n.args[0]) + ")";
    case Op::Pow: return "(" + to_string(n.args[0]) + ")^" + std::to_string(n.exponent);
    case Op::Norm: {
      std::string out = "N_" + n.value.get_str() + "[";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(n.args[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

NodeId combine_pair(Circuit& c, NodeId f, NodeId g) {
  return c.sub(c.pow(f, 2), c.mul(c.constant(2), c.pow(g, 2)));
}

Circuit combine_pair(const Circuit& f, const Circuit& g) {
  Circuit out;
  NodeId a = out.import(f, f.root());
  NodeId b = out.import(g, g.root());
  out.set_root(combine_pair(out, a, b));
  return out;
}

NodeId combine_many(Circuit& c, const std::vector<NodeId>& fs) {
  if (fs.empty()) throw std::invalid_argument("combine_many: empty list");
  if (fs.size() == 1) return fs[0];
  return c.norm(fs, BigInt(2));
}

Circuit combine_many(const std::vector<Circuit>& fs) {
  Circuit out;
  std::vector<NodeId> ids;
  for (const auto& f : fs) ids.push_back(out.import(f, f.root()));
  out.set_root(combine_many(out, ids));
  return out;
}

NodeId combine_sos(Circuit& c, const std::vector<NodeId>& fs) {
  if (fs.empty()) throw std::invalid_argument("combine_sos: empty list");
  NodeId acc = c.pow(fs[0], 2);
  for (std::size_t i = 1; i < fs.size(); ++i) acc = c.add(acc, c.pow(fs[i], 2));
  return acc;
}

Circuit combine_sos(const std::vector<Circuit>& fs) {
  Circuit out;
  std::vector<NodeId> ids;
  for (const auto& f : fs) ids.push_back(out.import(f, f.root()));
  out.set_root(combine_sos(out, ids));
  return out;
}

}  // namespace campana
