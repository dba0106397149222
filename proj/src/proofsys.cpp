#include "abduct/proofsys.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace abduct {

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i].attr == literals_[i - 1].attr)
      throw std::invalid_argument("tautological clause: x" +
                                  std::to_string(literals_[i].attr + 1) +
                                  " appears with both polarities");
  }
}

std::string Clause::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) s += " | ";
    s += abduct::to_string(literals_[i]);
  }
  return s;
}

KnowledgeBase KnowledgeBase::from_clauses(std::vector<Clause> clauses, std::size_t n) {
  for (const Clause& c : clauses)
    for (const Literal& lit : c.literals())
      if (lit.attr >= n)
        throw std::invalid_argument("clause literal " + abduct::to_string(lit) +
                                    " out of range (n = " + std::to_string(n) + ")");
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  return KnowledgeBase{std::move(clauses), n};
}

// ---------------------------------------------------------------------------
// Text format

namespace {

Literal parse_kb_literal(const std::string& token, std::size_t n, std::size_t line_no) {
  std::string body = token;
  bool negated = false;
  if (!body.empty() && body[0] == '~') {
    negated = true;
    body.erase(body.begin());
  }
  if (body.size() < 2 || body[0] != 'x' ||
      !std::all_of(body.begin() + 1, body.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("kb line " + std::to_string(line_no) + ": bad literal \"" +
                                token + "\"");
  std::uint64_t index = std::stoull(body.substr(1));
  if (index == 0 || index > n)
    throw std::invalid_argument("kb line " + std::to_string(line_no) + ": attribute x" +
                                std::to_string(index) + " out of range (n = " +
                                std::to_string(n) + ")");
  return Literal{static_cast<std::uint32_t>(index - 1), negated};
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KnowledgeBase parse_kb(std::istream& in, std::size_t n) {
  std::vector<Clause> clauses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;
    std::vector<Literal> lits;
    std::string token;
    std::istringstream parts(line);
    while (std::getline(parts, token, '|')) {
      token = strip(token);
      if (token.empty())
        throw std::invalid_argument("kb line " + std::to_string(line_no) + ": empty literal");
      lits.push_back(parse_kb_literal(token, n, line_no));
    }
    try {
      clauses.emplace_back(std::move(lits));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("kb line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return KnowledgeBase::from_clauses(std::move(clauses), n);
}

KnowledgeBase parse_kb_string(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  return parse_kb(in, n);
}

void save_kb(const KnowledgeBase& kb, std::ostream& out) {
  for (const Clause& c : kb.clauses) out << c.to_string() << '\n';
}

// ---------------------------------------------------------------------------
// Engines

ProofEngine ProofEngine::bounded_resolution(int w) {
  if (w < 1) throw std::invalid_argument("resolution width must be at least 1");
  return {Kind::BoundedResolution, w};
}

ProofEngine ProofEngine::parse(std::string_view text, int default_width) {
  if (text == "witnessed") return witnessed_only();
  if (text == "unitprop") return unit_propagation();
  if (text == "resolution") return bounded_resolution(default_width);
  if (text.starts_with("resolution:")) {
    int w = 0;
    std::string digits(text.substr(11));
    try {
      w = std::stoi(digits);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad resolution width \"" + digits + "\"");
    }
    return bounded_resolution(w);
  }
  throw std::invalid_argument("unknown engine \"" + std::string(text) +
                              "\" (expected witnessed, unitprop, or resolution[:W])");
}

std::string ProofEngine::to_string() const {
  switch (kind) {
    case Kind::WitnessedOnly: return "witnessed";
    case Kind::UnitPropagation: return "unitprop";
    case Kind::BoundedResolution: return "resolution:" + std::to_string(width);
  }
  return "?";
}

namespace {

bool literal_true(const PartialExample& vals, const Literal& lit) {
  TriValue v = vals[lit.attr];
  return lit.negated ? v == TriValue::False : v == TriValue::True;
}

void assert_literal(PartialExample& vals, const Literal& lit) {
  vals[lit.attr] = lit.negated ? TriValue::False : TriValue::True;
}

Derivation propagate_units(const KnowledgeBase& kb, const PartialExample& rho) {
  Derivation d{rho, false};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& clause : kb.clauses) {
      bool satisfied = false;
      int unassigned = 0;
      Literal pending{};
      for (const Literal& lit : clause.literals()) {
        TriValue v = d.values[lit.attr];
        if (v == TriValue::Unobserved) {
          ++unassigned;
          if (unassigned > 1) break;
          pending = lit;
        } else if (literal_true(d.values, lit)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied || unassigned > 1) continue;
      if (unassigned == 0) {
        d.contradiction = true;
        return d;
      }
      assert_literal(d.values, pending);
      changed = true;
    }
  }
  return d;
}

// Restricted clauses, canonical and sorted, for the resolution pool.
using Lits = std::vector<Literal>;

// Resolves a and b on their unique complementary attribute. Returns false if
// there is no pivot, more than one (resolvent tautological), or the resolvent
// would exceed the width bound.
bool resolve(const Lits& a, const Lits& b, int width, Lits& out) {
  std::uint32_t pivot = 0;
  int pivots = 0;
  for (const Literal& la : a) {
    for (const Literal& lb : b) {
      if (la.attr == lb.attr && la.negated != lb.negated) {
        pivot = la.attr;
        if (++pivots > 1) return false;
      }
    }
  }
  if (pivots != 1) return false;
  out.clear();
  for (const Literal& lit : a)
    if (lit.attr != pivot) out.push_back(lit);
  for (const Literal& lit : b)
    if (lit.attr != pivot) out.push_back(lit);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return static_cast<int>(out.size()) <= width;
}

Derivation saturate_resolution(const KnowledgeBase& kb, const PartialExample& rho, int width) {
  Derivation d{rho, false};
  // Each outer round restricts the knowledge base by the current assignment,
  // saturates width-bounded resolvents, then asserts the resulting units.
  for (std::size_t round = 0; round <= kb.n; ++round) {
    std::set<Lits> pool;
    std::vector<Lits> work;
    for (const Clause& clause : kb.clauses) {
      bool satisfied = false;
      Lits rest;
      for (const Literal& lit : clause.literals()) {
        TriValue v = d.values[lit.attr];
        if (v == TriValue::Unobserved) {
          rest.push_back(lit);
        } else if (literal_true(d.values, lit)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (rest.empty()) {
        d.contradiction = true;
        return d;
      }
      if (pool.insert(rest).second) work.push_back(std::move(rest));
    }

    Lits resolvent;
    for (std::size_t i = 0; i < work.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!resolve(work[i], work[j], width, resolvent)) continue;
        if (resolvent.empty()) {
          d.contradiction = true;
          return d;
        }
        if (pool.insert(resolvent).second) work.push_back(resolvent);
      }
    }

    bool asserted = false;
    for (const Lits& clause : pool) {
      if (clause.size() != 1) continue;
      const Literal& lit = clause.front();
      if (d.values[lit.attr] == TriValue::Unobserved) {
        assert_literal(d.values, lit);
        asserted = true;
      } else if (!literal_true(d.values, lit)) {
        d.contradiction = true;
        return d;
      }
    }
    if (!asserted) break;
  }
  return d;
}

}  // namespace

Derivation derive_literals(const KnowledgeBase& kb, const PartialExample& rho,
                           const ProofEngine& engine) {
  if (kb.n != rho.size())
    throw std::invalid_argument("knowledge base and example disagree on attribute count");
  switch (engine.kind) {
    case ProofEngine::Kind::WitnessedOnly: return Derivation{rho, false};
    case ProofEngine::Kind::UnitPropagation: return propagate_units(kb, rho);
    case ProofEngine::Kind::BoundedResolution:
      if (engine.width < 1) throw std::invalid_argument("resolution width must be at least 1");
      return saturate_resolution(kb, rho, engine.width);
  }
  throw std::logic_error("unreachable engine kind");
}

bool term_provable_in(const Derivation& d, const Term& t) {
  if (d.contradiction) return true;  // ex falso
  for (const Literal& lit : t.literals())
    if (!literal_true(d.values, lit)) return false;
  return true;
}

bool neg_query_provable_in(const Derivation& d, const Formula& c) {
  if (d.contradiction) return true;
  return witness_status(c, d.values) == WitnessStatus::WitnessedFalse;
}

bool term_provable(const KnowledgeBase& kb, const Term& t, const PartialExample& rho,
                   const ProofEngine& engine) {
  return term_provable_in(derive_literals(kb, rho, engine), t);
}

bool neg_query_provable(const KnowledgeBase& kb, const Formula& c, const PartialExample& rho,
                        const ProofEngine& engine) {
  return neg_query_provable_in(derive_literals(kb, rho, engine), c);
}

}  // namespace abduct
