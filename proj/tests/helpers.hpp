#pragma once

#include <cstdint>
#include <vector>

#include "abduct/dataset.hpp"
#include "abduct/formula.hpp"
#include "abduct/proofsys.hpp"
#include "abduct/rng.hpp"

namespace abduct::testing {

inline Formula random_formula(Rng& rng, std::size_t n, int depth) {
  if (depth <= 0 || rand_bool(rng, 0.3)) {
    if (rand_bool(rng, 0.1)) return Formula::constant(rand_bool(rng, 0.5));
    return Formula::variable(static_cast<std::uint32_t>(rand_below(rng, n)));
  }
  switch (rand_below(rng, 3)) {
    case 0: return Formula::negation(random_formula(rng, n, depth - 1));
    case 1: {
      std::vector<Formula> kids;
      std::size_t arity = 2 + rand_below(rng, 2);
      for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_formula(rng, n, depth - 1));
      return Formula::conjunction(std::move(kids));
    }
    default: {
      std::vector<Formula> kids;
      std::size_t arity = 2 + rand_below(rng, 2);
      for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_formula(rng, n, depth - 1));
      return Formula::disjunction(std::move(kids));
    }
  }
}

inline std::vector<bool> random_assignment(Rng& rng, std::size_t n) {
  std::vector<bool> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = rand_bool(rng, 0.5);
  return a;
}

inline PartialExample random_partial(Rng& rng, std::size_t n, double observe_probability) {
  PartialExample rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rand_bool(rng, observe_probability))
      rho[i] = rand_bool(rng, 0.5) ? TriValue::True : TriValue::False;
  }
  return rho;
}

/// A partial example agreeing with `a` on each observed coordinate.
inline PartialExample random_mask_of(Rng& rng, const std::vector<bool>& a,
                                     double observe_probability) {
  PartialExample rho(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rand_bool(rng, observe_probability))
      rho[i] = a[i] ? TriValue::True : TriValue::False;
  }
  return rho;
}

/// Observes a superset of rho's coordinates; new values are arbitrary.
inline PartialExample random_refinement(Rng& rng, const PartialExample& rho) {
  PartialExample finer = rho;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!rho.observed(i) && rand_bool(rng, 0.5))
      finer[i] = rand_bool(rng, 0.5) ? TriValue::True : TriValue::False;
  }
  return finer;
}

inline Term random_term(Rng& rng, std::size_t n, int max_width) {
  int width = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_width)));
  std::vector<Literal> lits;
  std::vector<std::uint32_t> attrs(n);
  for (std::size_t i = 0; i < n; ++i) attrs[i] = static_cast<std::uint32_t>(i);
  for (int i = 0; i < width && !attrs.empty(); ++i) {
    std::size_t pick = rand_below(rng, attrs.size());
    lits.push_back(Literal{attrs[pick], rand_bool(rng, 0.5)});
    attrs.erase(attrs.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Term(std::move(lits));
}

inline KnowledgeBase random_kb(Rng& rng, std::size_t n, std::size_t max_clauses) {
  std::vector<Clause> clauses;
  std::size_t count = rand_below(rng, max_clauses + 1);
  for (std::size_t i = 0; i < count; ++i) {
    Term t = random_term(rng, n, 3);
    clauses.emplace_back(t.literals());  // reuse the no-repeats guarantee
  }
  return KnowledgeBase::from_clauses(std::move(clauses), n);
}

inline ProofEngine random_engine(Rng& rng) {
  switch (rand_below(rng, 4)) {
    case 0: return ProofEngine::witnessed_only();
    case 1: return ProofEngine::unit_propagation();
    case 2: return ProofEngine::bounded_resolution(2);
    default: return ProofEngine::bounded_resolution(3);
  }
}

}  // namespace abduct::testing
