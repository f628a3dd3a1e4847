#pragma once

// Prenex first-order formulas over a shared polynomial circuit.

#include <campana/binary_form.hpp>
#include <campana/circuit.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace campana {

enum class Quantifier { Forall, Exists };

struct Binder {
  Quantifier quantifier;
  std::string variable;

  friend bool operator==(const Binder&, const Binder&) = default;
};

/// Quantifier-free matrix: atoms (circuit = 0, circuit != 0) under And/Or.
struct Matrix {
  enum class Kind { Eq, Neq, And, Or };

  Kind kind = Kind::And;
  NodeId atom = 0;
  std::vector<Matrix> children;

  static Matrix eq(NodeId atom) { return {Kind::Eq, atom, {}}; }
  static Matrix neq(NodeId atom) { return {Kind::Neq, atom, {}}; }
  static Matrix all_of(std::vector<Matrix> children) { return {Kind::And, 0, std::move(children)}; }
  static Matrix any_of(std::vector<Matrix> children) { return {Kind::Or, 0, std::move(children)}; }

  bool is_atom() const { return kind == Kind::Eq || kind == Kind::Neq; }
  /// Atoms in left-to-right order.
  std::vector<NodeId> atoms() const;
  std::size_t atom_count() const;
};

/// `variable` stands for the circuit `value`, whose variables are free.
struct Substitution {
  std::string variable;
  NodeId value;
};

class Formula {
 public:
  std::vector<std::string> free;
  std::vector<Binder> prefix;
  Circuit circuit;
  Matrix matrix;
  std::vector<Substitution> substitutions;
  bool real_embedded = false;

  /// Throws std::invalid_argument unless names are distinct and every
  /// matrix variable is free, bound once, or substituted.
  void validate() const;
};

struct FormulaStats {
  std::size_t universals = 0;
  std::size_t existentials = 0;
  std::size_t atoms = 0;
  std::uint64_t degree_bound = 0;
  bool real_embedded = false;

  friend bool operator==(const FormulaStats&, const FormulaStats&) = default;
};

/// Counts quantifiers and atoms and bounds the atom degrees structurally.
/// Substitutions multiply the bound by the largest substituted degree.
FormulaStats stats(const Formula& f);

/// "universals=U existentials=E degree<=D".
std::string stats_line(const FormulaStats& s);

/// Exact truth value of the matrix. The assignment must cover every free
/// and bound variable; substituted variables are computed.
bool evaluate_matrix(const Formula& f, const Assignment& values);

/// Flips every quantifier and negates the matrix (De Morgan on And/Or).
Formula negate(Formula f);

/// Moves the listed free variables to the front of the prefix as universals.
Formula universally_close(Formula f, const std::vector<std::string>& variables);

/// forall x (P != 0)  or  exists z (Q = 0)   becomes
/// forall x exists y exists z ((y P - 1) Q = 0).
/// The universal part binds variables of the existential part that it
/// quantifies. Throws std::invalid_argument on any other shape.
Formula prenex_or(const Formula& universal_part, const Formula& existential_part,
                  const std::string& fresh_variable);

/// Replaces the free variable `variable` by F(lambda, 1), recorded as a
/// substitution so the quantifier structure stays intact. F must have
/// integer coefficients.
Formula substitute_form(Formula base, const BinaryForm& F, const std::string& variable = "r",
                        const std::string& lambda = "lambda");

}  // namespace campana
