#pragma once

// Polynomial circuits: hash-consed DAGs of arithmetic nodes whose degree is
// computed structurally, without expansion.

#include <campana/arith.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace campana {

using NodeId = std::uint32_t;

enum class Op : std::uint8_t {
  Var,
  Int,
  Add,
  Mul,
  Neg,
  Pow,
  /// Field norm from Q(p^(1/n)) of sum_j args[j] * theta^j, theta^n = p,
  /// with n = args.size(). Homogeneous of degree n in the arguments.
  Norm,
};

const char* op_name(Op op);

struct Node {
  Op op = Op::Int;
  std::vector<NodeId> args;
  /// Int: the constant. Norm: the radicand p.
  BigInt value;
  /// Var: the variable name.
  std::string name;
  /// Pow: the exponent (>= 1).
  unsigned long exponent = 0;
};

using Assignment = std::map<std::string, Rational>;

/// Append-only node arena. Children always precede their parents, so every
/// id is a valid root of an acyclic sub-circuit.
class Circuit {
 public:
  Circuit() = default;

  NodeId var(const std::string& name);
  NodeId constant(const BigInt& value);
  NodeId constant(long value) { return constant(BigInt(value)); }
  NodeId add(NodeId l, NodeId r);
  NodeId sub(NodeId l, NodeId r) { return add(l, neg(r)); }
  NodeId mul(NodeId l, NodeId r);
  NodeId neg(NodeId x);
  /// k >= 1; pow(x, 1) is x itself.
  NodeId pow(NodeId x, unsigned long k);
  NodeId norm(const std::vector<NodeId>& args, const BigInt& p);

  /// Copies the sub-circuit of `other` rooted at `root` into this arena.
  NodeId import(const Circuit& other, NodeId root);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }

  /// Root designated for standalone circuits (combiner results, norm forms).
  NodeId root() const;
  void set_root(NodeId id);
  bool has_root() const { return root_.has_value(); }

  /// Structural degree: Var 1, Int 0, Add max, Mul sum, Neg same, Pow k*d,
  /// Norm n*max.
  std::uint64_t degree(NodeId id) const;
  std::uint64_t degree() const { return degree(root()); }

  /// Whether a Neg node is reachable from id.
  bool uses_negation(NodeId id) const;

  /// Variable names reachable from id, sorted.
  std::vector<std::string> variables(NodeId id) const;

  /// Exact value. Throws std::invalid_argument if a variable is unassigned.
  Rational evaluate(NodeId id, const Assignment& values) const;
  Rational evaluate(const Assignment& values) const { return evaluate(root(), values); }

  /// Value modulo the prime q (< 2^63), or nothing when a denominator of an
  /// input vanishes mod q.
  std::optional<std::uint64_t> evaluate_mod(NodeId id, const Assignment& values, std::uint64_t q) const;

  /// Exact zero test. Residues modulo a few large primes settle the nonzero
  /// case; exact evaluation runs only when all of them vanish.
  bool vanishes(NodeId id, const Assignment& values) const;
  bool vanishes(const Assignment& values) const { return vanishes(root(), values); }

  /// Infix rendering, for diagnostics.
  std::string to_string(NodeId id) const;

 private:
  NodeId intern(Node node);
  std::vector<NodeId> reachable(NodeId id) const;

  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeId> index_;
  std::optional<NodeId> root_;
};

/// F = f^2 - 2 g^2: vanishes at a rational point iff f and g both do.
NodeId combine_pair(Circuit& c, NodeId f, NodeId g);
Circuit combine_pair(const Circuit& f, const Circuit& g);

/// G(f_1, ..., f_n) for the norm form G of Q(2^(1/n)); a single input is
/// returned unchanged. Requires a nonempty list.
NodeId combine_many(Circuit& c, const std::vector<NodeId>& fs);
Circuit combine_many(const std::vector<Circuit>& fs);

/// sum f_i^2, which vanishes over the reals iff every f_i does.
NodeId combine_sos(Circuit& c, const std::vector<NodeId>& fs);
Circuit combine_sos(const std::vector<Circuit>& fs);

/// Three fixed primes just below 2^62 used for modular evaluation.
const std::vector<std::uint64_t>& evaluation_primes();

}  // namespace campana
