#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "abduct/formula.hpp"
#include "abduct/partial_example.hpp"

namespace abduct {

/// Disjunction of literals, kept sorted and duplicate-free. No attribute may
/// appear with both polarities (tautological clauses are rejected). The empty
/// clause stands for contradiction.
class Clause {
 public:
  Clause() = default;  // empty clause
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t width() const { return literals_.size(); }

  std::string to_string() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend bool operator<(const Clause& a, const Clause& b) { return a.literals_ < b.literals_; }

 private:
  std::vector<Literal> literals_;
};

struct KnowledgeBase {
  std::vector<Clause> clauses;
  std::size_t n = 0;

  /// Canonicalizes: sorts, drops duplicates, range-checks literals.
  static KnowledgeBase from_clauses(std::vector<Clause> clauses, std::size_t n);
};

/// Text format: one clause per line, literals `x3` / `~x3` joined by `|`;
/// blank lines and `#` comments ignored.
KnowledgeBase parse_kb(std::istream& in, std::size_t n);
KnowledgeBase parse_kb_string(const std::string& text, std::size_t n);
void save_kb(const KnowledgeBase& kb, std::ostream& out);

/// Which restriction-closed prover answers provability queries.
///  - witnessed_only: no inference; only rho's own observations count.
///  - unit_propagation: restrict clauses by the current assignment and assert
///    unit clauses to a fixpoint.
///  - bounded_resolution(w): additionally saturate resolvents of width <= w
///    between rounds of unit extraction.
struct ProofEngine {
  enum class Kind { WitnessedOnly, UnitPropagation, BoundedResolution };

  Kind kind = Kind::UnitPropagation;
  int width = 0;  // >= 1 for BoundedResolution

  static ProofEngine witnessed_only() { return {Kind::WitnessedOnly, 0}; }
  static ProofEngine unit_propagation() { return {Kind::UnitPropagation, 0}; }
  static ProofEngine bounded_resolution(int w);

  /// "witnessed" | "unitprop" | "resolution" | "resolution:W". A bare
  /// "resolution" gets default_width.
  static ProofEngine parse(std::string_view text, int default_width);

  std::string to_string() const;
};

struct Derivation {
  PartialExample values;       // rho extended with every derived literal
  bool contradiction = false;  // empty clause derived from KB|rho
};

/// Extends rho with all literals the engine derives from KB|rho.
/// Contradiction is a result, not an error.
Derivation derive_literals(const KnowledgeBase& kb, const PartialExample& rho,
                           const ProofEngine& engine);

/// True when the derivation (ex falso included) settles every literal of t.
bool term_provable_in(const Derivation& d, const Term& t);
/// True when the derivation witnesses c false.
bool neg_query_provable_in(const Derivation& d, const Formula& c);

bool term_provable(const KnowledgeBase& kb, const Term& t, const PartialExample& rho,
                   const ProofEngine& engine);
bool neg_query_provable(const KnowledgeBase& kb, const Formula& c, const PartialExample& rho,
                        const ProofEngine& engine);

}  // namespace abduct
