#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abduct/partial_example.hpp"

namespace abduct {

/// A possibly negated attribute. The ordering (attribute ascending, positive
/// before negative) fixes the canonical form of terms and clauses.
struct Literal {
  std::uint32_t attr = 0;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

std::string to_string(const Literal& lit);

class Formula;

/// Conjunction of literals, kept sorted; no attribute may appear twice, so a
/// term is never contradictory and equality is structural.
class Term {
 public:
  explicit Term(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t width() const { return literals_.size(); }

  bool eval(const std::vector<bool>& assignment) const;
  Formula to_formula() const;
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend bool operator<(const Term& a, const Term& b) { return a.literals_ < b.literals_; }

 private:
  std::vector<Literal> literals_;
};

/// Disjunction of terms of width at most k.
class KDnf {
 public:
  KDnf() = default;
  KDnf(std::vector<Term> terms, int k);

  const std::vector<Term>& terms() const { return terms_; }
  int k() const { return k_; }
  bool empty() const { return terms_.empty(); }

  bool eval(const std::vector<bool>& assignment) const;
  Formula to_formula() const;
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  int k_ = 0;
};

/// Immutable Boolean formula AST: constants, variables, negation, and n-ary
/// conjunction/disjunction. Copies share nodes.
class Formula {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Negation, Conjunction, Disjunction };

  Formula();  // constant 0

  static Formula constant(bool value);
  static Formula variable(std::uint32_t attr);
  static Formula negation(Formula operand);
  // Empty lists normalize to the neutral constant, singletons to the child.
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  Kind kind() const;
  bool constant_value() const;             // pre: Constant
  std::uint32_t attr() const;              // pre: Variable
  const Formula& operand() const;          // pre: Negation
  const std::vector<Formula>& children() const;  // pre: Conjunction/Disjunction

  /// 1 + highest attribute index referenced, 0 for variable-free formulas.
  std::uint32_t attr_bound() const;

  bool operator==(const Formula& other) const;  // structural
  std::string to_string() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t offset_in);
  std::size_t offset;
};

/// Parses `x<digits>` (1-indexed in text), `~`, `&`, `|`, parentheses and the
/// constants `0`/`1`; whitespace is insignificant. Attribute indices must be
/// within [1, n].
Formula parse_formula(std::string_view text, std::size_t n);

/// f restricted to rho: observed values substituted, constants propagated
/// (0&g -> 0, 1&g -> g, 1|g -> 1, 0|g -> g, ~0 -> 1, ~1 -> 0). Unobserved
/// variables remain. No other rewriting happens, so the result is the
/// syntactic restriction and runs in time linear in |f|.
Formula restrict(const Formula& f, const PartialExample& rho);

enum class WitnessStatus { WitnessedTrue, WitnessedFalse, NotWitnessed };

WitnessStatus witness_status(const Formula& f, const PartialExample& rho);

bool eval_total(const Formula& f, const std::vector<bool>& assignment);
/// Rejects assignments with unobserved entries.
bool eval_total(const Formula& f, const PartialExample& assignment);

/// Reads a formula back as a k-DNF if it has that shape (a disjunction of
/// conjunctions of literals, widths at most k). Constant 0 maps to the empty
/// k-DNF.
std::optional<KDnf> kdnf_from_formula(const Formula& f, int k);

}  // namespace abduct
