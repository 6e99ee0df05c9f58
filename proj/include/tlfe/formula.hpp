#ifndef TLFE_FORMULA_HPP
#define TLFE_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlfe/observation.hpp"

namespace tlfe {

enum class FormulaKind { True, False, Obs, NegObs, And, Or, Until, Eventually };

/// Immutable scLTL syntax tree node. Negation only ever wraps an observation
/// and there are no Next/Globally operators.
///
/// And/Or nodes hold two or more operands. Parsed formulas are binary and keep
/// the source order; formulas produced by `canonical` or `progress` are
/// flattened, deduplicated and sorted by their printed form.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula obs(std::size_t index, std::string name);
  static Formula neg_obs(std::size_t index, std::string name);
  static Formula conj(std::vector<Formula> operands);
  static Formula disj(std::vector<Formula> operands);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula sub);

  // Simplifying constructors; the result is in canonical form when the
  // arguments are.
  static Formula make_and(std::vector<Formula> operands);
  static Formula make_or(std::vector<Formula> operands);
  static Formula make_until(Formula lhs, Formula rhs);
  static Formula make_eventually(Formula sub);

  FormulaKind kind() const { return node_->kind; }
  bool is_true() const { return kind() == FormulaKind::True; }
  bool is_false() const { return kind() == FormulaKind::False; }

  /// Observation index for Obs/NegObs nodes.
  std::size_t atom() const { return node_->atom; }
  const std::string& atom_name() const { return node_->name; }

  std::span<const Formula> operands() const { return node_->operands; }
  const Formula& lhs() const { return node_->operands.at(0); }
  const Formula& rhs() const { return node_->operands.at(1); }
  const Formula& sub() const { return node_->operands.at(0); }

  /// Fully parenthesised text that re-parses to the same tree.
  const std::string& str() const { return node_->text; }

  std::size_t depth() const;

  bool operator==(const Formula& other) const {
    return node_ == other.node_ || str() == other.str();
  }
  bool operator<(const Formula& other) const { return str() < other.str(); }

 private:
  struct Node {
    FormulaKind kind;
    std::size_t atom = 0;
    std::string name;
    std::vector<Formula> operands;
    std::string text;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make_node(FormulaKind kind, std::vector<Formula> operands);

  std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax:
///   atom     [a-z][a-z0-9_]*        (must belong to `alphabet`)
///   true
///   !atom    F x    x U y    x & y    x | y    ( x )
/// Precedence from tightest: `!`/`F`, `U` (right associative), `&`, `|`.
Formula parse_formula(std::string_view text, const ObservationSet& alphabet);

/// Rewrites `phi` into canonical form: n-ary And/Or with sorted, unique
/// operands and unit/absorption rules applied.
Formula canonical(const Formula& phi);

/// One-step formula progression followed by canonical simplification.
Formula progress(const Formula& phi, Letter letter);

/// True iff progressing `phi` through `word` reaches `true` at or before the
/// last letter.
bool is_good_prefix(const Formula& phi, std::span<const Letter> word);

/// Observation indices mentioned in `phi`, sorted.
std::vector<std::size_t> atoms_of(const Formula& phi);

}  // namespace tlfe

#endif  // TLFE_FORMULA_HPP
