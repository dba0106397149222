#include "abduct/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

// Everything here is written against the naive definitions, on purpose: the
// point of the oracle is to disagree with the pipeline when the pipeline is
// wrong. Only the formula/clause types are shared.

namespace abduct {

namespace {

// Signed-int literal encoding: +(attr+1) / -(attr+1).
int encode(const Literal& lit) {
  int v = static_cast<int>(lit.attr) + 1;
  return lit.negated ? -v : v;
}

struct NaiveState {
  std::vector<int> value;  // -1 unknown, else 0/1
  bool contradiction = false;
};

int wanted(int lit) { return lit > 0 ? 1 : 0; }
int var_of(int lit) { return (lit > 0 ? lit : -lit) - 1; }

NaiveState naive_derive(const std::vector<std::vector<int>>& clauses,
                        const PartialExample& rho, const ProofEngine& engine) {
  NaiveState state;
  state.value.assign(rho.size(), -1);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] == TriValue::True) state.value[i] = 1;
    if (rho[i] == TriValue::False) state.value[i] = 0;
  }
  if (engine.kind == ProofEngine::Kind::WitnessedOnly) return state;

  const bool with_resolution = engine.kind == ProofEngine::Kind::BoundedResolution;
  for (std::size_t round = 0; round <= rho.size() + 1; ++round) {
    // Restrict every clause by the current values.
    std::set<std::vector<int>> pool;
    for (const std::vector<int>& clause : clauses) {
      std::vector<int> rest;
      bool satisfied = false;
      for (int lit : clause) {
        int v = state.value[var_of(lit)];
        if (v == -1)
          rest.push_back(lit);
        else if (v == wanted(lit))
          satisfied = true;
      }
      if (satisfied) continue;
      if (rest.empty()) {
        state.contradiction = true;
        return state;
      }
      std::sort(rest.begin(), rest.end());
      pool.insert(rest);
    }

    if (with_resolution) {
      std::vector<std::vector<int>> work(pool.begin(), pool.end());
      for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          int pivots = 0;
          int pivot = 0;
          for (int la : work[i])
            for (int lb : work[j])
              if (la == -lb) {
                ++pivots;
                pivot = la;
              }
          if (pivots != 1) continue;
          std::vector<int> resolvent;
          for (int lit : work[i])
            if (lit != pivot) resolvent.push_back(lit);
          for (int lit : work[j])
            if (lit != -pivot) resolvent.push_back(lit);
          std::sort(resolvent.begin(), resolvent.end());
          resolvent.erase(std::unique(resolvent.begin(), resolvent.end()), resolvent.end());
          if (static_cast<int>(resolvent.size()) > engine.width) continue;
          if (resolvent.empty()) {
            state.contradiction = true;
            return state;
          }
          if (pool.insert(resolvent).second) work.push_back(resolvent);
        }
      }
    }

    bool asserted = false;
    for (const std::vector<int>& clause : pool) {
      if (clause.size() != 1) continue;
      int lit = clause.front();
      int v = state.value[var_of(lit)];
      if (v == -1) {
        state.value[var_of(lit)] = wanted(lit);
        asserted = true;
      } else if (v != wanted(lit)) {
        state.contradiction = true;
        return state;
      }
    }
    if (!asserted) break;
  }
  return state;
}

// Three-valued (Kleene) evaluation; 0/1 mean witnessed, -1 unknown.
int eval_kleene(const Formula& f, const std::vector<int>& value) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.constant_value() ? 1 : 0;
    case Formula::Kind::Variable: return value[f.attr()];
    case Formula::Kind::Negation: {
      int v = eval_kleene(f.operand(), value);
      return v == -1 ? -1 : 1 - v;
    }
    case Formula::Kind::Conjunction: {
      int result = 1;
      for (const Formula& child : f.children()) {
        int v = eval_kleene(child, value);
        if (v == 0) return 0;
        if (v == -1) result = -1;
      }
      return result;
    }
    case Formula::Kind::Disjunction: {
      int result = 0;
      for (const Formula& child : f.children()) {
        int v = eval_kleene(child, value);
        if (v == 1) return 1;
        if (v == -1) result = -1;
      }
      return result;
    }
  }
  return -1;
}

std::vector<std::vector<int>> encode_kb(const KnowledgeBase& kb) {
  std::vector<std::vector<int>> clauses;
  clauses.reserve(kb.clauses.size());
  for (const Clause& clause : kb.clauses) {
    std::vector<int> lits;
    for (const Literal& lit : clause.literals()) lits.push_back(encode(lit));
    clauses.push_back(std::move(lits));
  }
  return clauses;
}

}  // namespace

std::vector<std::uint64_t> exact_filter_counts(std::span<const Term> terms,
                                               const KnowledgeBase& kb, const Formula& c,
                                               const Dataset& dataset, const ProofEngine& engine,
                                               const OracleConfig& config) {
  if (dataset.n > config.max_n) throw std::invalid_argument("oracle limit: n too large");
  if (dataset.rows.size() > config.max_m) throw std::invalid_argument("oracle limit: m too large");
  if (kb.n != dataset.n)
    throw std::invalid_argument("knowledge base and dataset disagree on attribute count");

  std::vector<std::vector<int>> clauses = encode_kb(kb);
  std::vector<std::uint64_t> counts(terms.size(), 0);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const PartialExample& row : dataset.rows) {
      NaiveState state = naive_derive(clauses, row, engine);
      bool provable = true;
      if (!state.contradiction) {
        for (const Literal& lit : terms[t].literals()) {
          if (state.value[lit.attr] != (lit.negated ? 0 : 1)) {
            provable = false;
            break;
          }
        }
      }
      bool neg_c = state.contradiction || eval_kleene(c, state.value) == 0;
      if (provable && neg_c) ++counts[t];
    }
  }
  return counts;
}

namespace {

struct MaskWords {
  std::vector<std::uint64_t> w;

  explicit MaskWords(std::size_t bits) : w((bits + 63) / 64, 0) {}

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t total = 0;
    for (std::uint64_t word : w) total += static_cast<std::size_t>(__builtin_popcountll(word));
    return total;
  }

  MaskWords united(const MaskWords& other) const {
    MaskWords out = *this;
    for (std::size_t i = 0; i < w.size(); ++i) out.w[i] |= other.w[i];
    return out;
  }
};

struct CoverSearch {
  const std::vector<MaskWords>* sets = nullptr;
  std::vector<std::size_t> suffix_union;  // best coverage reachable from index i
  std::size_t target = 0;
  std::size_t best = 0;

  void dfs(std::size_t idx, std::size_t chosen, const MaskWords& covered) {
    if (covered.count() >= target) {
      best = std::min(best, chosen);
      return;
    }
    if (idx >= sets->size() || chosen + 1 >= best) return;
    if (covered.count() + suffix_union[idx] < target) return;
    dfs(idx + 1, chosen + 1, covered.united((*sets)[idx]));
    dfs(idx + 1, chosen, covered);
  }
};

}  // namespace

OptimalCover optimal_partial_cover(const std::vector<std::vector<std::size_t>>& sets,
                                   std::size_t target, const OracleConfig& config) {
  if (sets.size() > config.max_terms)
    throw std::invalid_argument("oracle limit: too many sets for exact search");
  if (target == 0) return {0, true};

  std::size_t universe = 0;
  for (const auto& s : sets)
    for (std::size_t e : s) universe = std::max(universe, e + 1);
  if (universe == 0) return {0, false};

  std::vector<MaskWords> masks;
  masks.reserve(sets.size());
  for (const auto& s : sets) {
    MaskWords mask(universe);
    for (std::size_t e : s) mask.set(e);
    masks.push_back(std::move(mask));
  }
  // Larger sets first helps both the greedy-style descent and the bound.
  std::sort(masks.begin(), masks.end(),
            [](const MaskWords& a, const MaskWords& b) { return a.count() > b.count(); });

  CoverSearch search;
  search.sets = &masks;
  search.target = target;
  search.best = masks.size() + 1;
  search.suffix_union.assign(masks.size() + 1, 0);
  MaskWords suffix(universe);
  for (std::size_t i = masks.size(); i-- > 0;) {
    suffix = suffix.united(masks[i]);
    search.suffix_union[i] = suffix.count();
  }
  if (search.suffix_union[0] < target) return {0, false};

  search.dfs(0, 0, MaskWords(universe));
  if (search.best > masks.size()) return {0, false};
  return {search.best, true};
}

bool semantic_provability(const KnowledgeBase& kb, const Term& t, const PartialExample& rho,
                          const OracleConfig& config) {
  if (rho.size() > config.max_n) throw std::invalid_argument("oracle limit: n too large");
  if (kb.n != rho.size())
    throw std::invalid_argument("knowledge base and example disagree on attribute count");

  std::vector<std::size_t> free_attrs;
  std::vector<bool> assignment(rho.size(), false);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho.observed(i))
      assignment[i] = rho[i] == TriValue::True;
    else
      free_attrs.push_back(i);
  }

  const std::uint64_t completions = std::uint64_t{1} << free_attrs.size();
  for (std::uint64_t bits = 0; bits < completions; ++bits) {
    for (std::size_t j = 0; j < free_attrs.size(); ++j)
      assignment[free_attrs[j]] = (bits >> j) & 1;

    bool kb_satisfied = true;
    for (const Clause& clause : kb.clauses) {
      bool clause_true = false;
      for (const Literal& lit : clause.literals()) {
        if (assignment[lit.attr] != lit.negated) {
          clause_true = true;
          break;
        }
      }
      if (!clause_true) {
        kb_satisfied = false;
        break;
      }
    }
    if (kb_satisfied && !t.eval(assignment)) return false;
  }
  return true;  // every consistent completion satisfies t, or none exists
}

}  // namespace abduct
