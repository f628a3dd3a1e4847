#pragma once

// Builders for the existential definitions S, T, T^x, I, J, J_abcd and the
// sets derived from them, and the two universal-existential formulas built
// on top.

#include <campana/circuit.hpp>
#include <campana/formula.hpp>

#include <string>
#include <vector>

namespace campana {

enum class BlockKind { S, T, TUnit, I, J, Jabcd, InvJ, Disjoint, Jn, InvJn };

const char* block_name(BlockKind kind);

/// Records how a block was instantiated so witnesses can be synthesized:
/// the parameter and element circuits, the variables introduced by this
/// level, and the nested blocks in construction order.
struct WitnessTrace {
  BlockKind kind = BlockKind::S;
  std::vector<NodeId> params;
  NodeId element = 0;
  long n = 0;
  std::vector<std::string> vars;
  std::vector<WitnessTrace> children;
};

/// Existentially quantified variables and the conjunction of atoms (= 0).
struct Block {
  std::vector<std::string> vars;
  std::vector<NodeId> atoms;
  WitnessTrace trace;
};

/// Builds blocks into one circuit. Fresh variables are named x1, x2, ...
/// (from `first_index`) in construction order.
class TowerBuilder {
 public:
  explicit TowerBuilder(Circuit& circuit, unsigned first_index = 1)
      : c_(circuit), next_(first_index) {}

  std::string fresh() { return "x" + std::to_string(next_++); }
  Circuit& circuit() { return c_; }

  Block S(NodeId a, NodeId b, NodeId t);
  Block T(NodeId a, NodeId b, NodeId t);
  Block T_unit(NodeId a, NodeId b, NodeId t);
  Block I(NodeId a, NodeId b, NodeId c, NodeId t);
  Block J(NodeId a, NodeId b, NodeId t);
  Block Jabcd(NodeId a, NodeId b, NodeId c, NodeId d, NodeId t);
  Block inv_J(NodeId a, NodeId b, NodeId c, NodeId d, NodeId t);
  Block disjoint(const std::vector<NodeId>& abcd, const std::vector<NodeId>& abcd_prime);
  Block Jn(NodeId a, NodeId b, NodeId c, NodeId d, long n, NodeId t);
  Block inv_Jn(NodeId a, NodeId b, NodeId c, NodeId d, long n, NodeId t);

 private:
  void absorb(Block& into, Block child);

  Circuit& c_;
  unsigned next_;
};

/// Wraps a block as exists vars (conjunction of atoms).
Formula block_formula(const Circuit& circuit, const Block& block, std::vector<std::string> free);

// Formula-level builders. Variable names must be distinct and must not have
// the reserved form x<digits>.
Formula build_S(const std::string& a = "a", const std::string& b = "b", const std::string& r = "r");
Formula build_T(const std::string& a = "a", const std::string& b = "b", const std::string& r = "r");
Formula build_T_unit(const std::string& a = "a", const std::string& b = "b", const std::string& r = "r");
Formula build_I(const std::string& a = "a", const std::string& b = "b", const std::string& c = "c",
                const std::string& r = "r");
Formula build_J(const std::string& a = "a", const std::string& b = "b", const std::string& r = "r");
Formula build_Jabcd();
Formula build_inv_J();
Formula build_disjoint();
/// n >= 2.
Formula build_Jn(long n);
/// n >= 2.
Formula build_inv_Jn(long n);

/// The blocks behind the two universal-existential formulas, all in one
/// circuit with free variables a, b, c, d, r and the quantified parameters
/// a', b', c', d'.
struct Pipeline {
  Circuit circuit;
  std::vector<std::string> free;    // a b c d r
  std::vector<std::string> primed;  // a' b' c' d'
  Block disjoint;                   // Omega(a,b,c,d) and Omega(a',b',c',d') disjoint
  Block inv_J;                      // r in (J' \ 0)^-1
  Block conclusion;                 // r in (J'_n \ 0)^-1, or 1 in J' for integrality
  long n = 0;
  bool integrality = false;

  /// disjoint followed by inv_J.
  std::vector<NodeId> premise_atoms() const;
  std::vector<std::string> premise_vars() const;
};

/// n >= 2 for the Campana pipeline; `integrality` builds the 1 in J' variant
/// instead (n is ignored).
Pipeline build_pipeline(long n, bool integrality);

/// C_{S,n} for the parameters (a,b,c,d) as a universal-existential formula
/// in a, b, c, d, r. n >= 2.
Formula build_campana(long n, bool real_embedded);

/// Elements integral outside Omega(a,b,c,d), in a, b, c, d, r.
Formula build_integrality(bool real_embedded);

/// Builds any named target: S, T, Tunit, I, J, Jabcd, invJ, disjoint, Jn,
/// invJn, campana, integrality.
Formula build_target(const std::string& target, long n, bool real_embedded);

}  // namespace campana
