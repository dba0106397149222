#include "abduct/formula.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace abduct {

std::string to_string(const Literal& lit) {
  std::string s = lit.negated ? "~x" : "x";
  s += std::to_string(lit.attr + 1);
  return s;
}

// ---------------------------------------------------------------------------
// Term / KDnf

Term::Term(std::vector<Literal> literals) : literals_(std::move(literals)) {
  if (literals_.empty()) throw std::invalid_argument("term must contain at least one literal");
  std::sort(literals_.begin(), literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i].attr == literals_[i - 1].attr) {
      if (literals_[i] == literals_[i - 1])
        throw std::invalid_argument("term repeats literal " + abduct::to_string(literals_[i]));
      throw std::invalid_argument("term is contradictory on x" +
                                  std::to_string(literals_[i].attr + 1));
    }
  }
}

bool Term::eval(const std::vector<bool>& assignment) const {
  for (const Literal& lit : literals_) {
    if (lit.attr >= assignment.size())
      throw std::out_of_range("term attribute out of range");
    if (assignment[lit.attr] == lit.negated) return false;
  }
  return true;
}

Formula Term::to_formula() const {
  std::vector<Formula> parts;
  parts.reserve(literals_.size());
  for (const Literal& lit : literals_) {
    Formula v = Formula::variable(lit.attr);
    parts.push_back(lit.negated ? Formula::negation(std::move(v)) : std::move(v));
  }
  return Formula::conjunction(std::move(parts));
}

std::string Term::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) s += " & ";
    s += abduct::to_string(literals_[i]);
  }
  return s;
}

KDnf::KDnf(std::vector<Term> terms, int k) : terms_(std::move(terms)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("k-DNF width bound must be at least 1");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.width()) > k_)
      throw std::invalid_argument("term " + t.to_string() + " exceeds width bound");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i] == terms_[j])
        throw std::invalid_argument("duplicate term " + terms_[i].to_string());
}

bool KDnf::eval(const std::vector<bool>& assignment) const {
  for (const Term& t : terms_)
    if (t.eval(assignment)) return true;
  return false;
}

Formula KDnf::to_formula() const {
  if (terms_.empty()) return Formula::constant(false);
  std::vector<Formula> parts;
  parts.reserve(terms_.size());
  for (const Term& t : terms_) parts.push_back(t.to_formula());
  return Formula::disjunction(std::move(parts));
}

std::string KDnf::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " | ";
    s += terms_[i].to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind = Kind::Constant;
  bool value = false;
  std::uint32_t attr = 0;
  std::vector<Formula> children;  // operand(s) of Negation/Conjunction/Disjunction
};

Formula::Formula() : Formula(constant(false)) {}

Formula Formula::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->value = value;
  return Formula(std::move(node));
}

Formula Formula::variable(std::uint32_t attr) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->attr = attr;
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Negation;
  node->children.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) return constant(true);
  if (children.size() == 1) return std::move(children.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::Conjunction;
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) return constant(false);
  if (children.size() == 1) return std::move(children.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::Disjunction;
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::constant_value() const { return node_->value; }

std::uint32_t Formula::attr() const { return node_->attr; }

const Formula& Formula::operand() const { return node_->children.front(); }

const std::vector<Formula>& Formula::children() const { return node_->children; }

std::uint32_t Formula::attr_bound() const {
  switch (kind()) {
    case Kind::Constant: return 0;
    case Kind::Variable: return node_->attr + 1;
    default: {
      std::uint32_t bound = 0;
      for (const Formula& c : node_->children) bound = std::max(bound, c.attr_bound());
      return bound;
    }
  }
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Constant: return node_->value == other.node_->value;
    case Kind::Variable: return node_->attr == other.node_->attr;
    default: {
      const auto& a = node_->children;
      const auto& b = other.node_->children;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
      return true;
    }
  }
}

namespace {

// Rendering precedence: | lowest, then &, then ~, atoms highest. Children of
// equal precedence are parenthesized so structure survives a reparse.
void render(const Formula& f, std::string& out) {
  auto wrapped = [&out](const Formula& g, bool parens) {
    if (parens) out += '(';
    render(g, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::Constant:
      out += f.constant_value() ? '1' : '0';
      return;
    case Formula::Kind::Variable:
      out += 'x';
      out += std::to_string(f.attr() + 1);
      return;
    case Formula::Kind::Negation: {
      out += '~';
      const Formula& g = f.operand();
      bool parens = g.kind() != Formula::Kind::Constant && g.kind() != Formula::Kind::Variable &&
                    g.kind() != Formula::Kind::Negation;
      wrapped(g, parens);
      return;
    }
    case Formula::Kind::Conjunction: {
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += " & ";
        bool parens = kids[i].kind() == Formula::Kind::Conjunction ||
                      kids[i].kind() == Formula::Kind::Disjunction;
        wrapped(kids[i], parens);
      }
      return;
    }
    case Formula::Kind::Disjunction: {
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += " | ";
        bool parens = kids[i].kind() == Formula::Kind::Disjunction;
        wrapped(kids[i], parens);
      }
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(const std::string& message, std::size_t offset_in)
    : std::runtime_error(message + " at offset " + std::to_string(offset_in)),
      offset(offset_in) {}

namespace {

struct Token {
  enum Kind { Var, Const0, Const1, Not, And, Or, LParen, RParen, End } kind;
  std::size_t offset;
  std::uint32_t attr = 0;
};

std::vector<Token> lex(std::string_view text, std::size_t n) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '~': tokens.push_back({Token::Not, start}); ++i; continue;
      case '&': tokens.push_back({Token::And, start}); ++i; continue;
      case '|': tokens.push_back({Token::Or, start}); ++i; continue;
      case '(': tokens.push_back({Token::LParen, start}); ++i; continue;
      case ')': tokens.push_back({Token::RParen, start}); ++i; continue;
      case '0': tokens.push_back({Token::Const0, start}); ++i; continue;
      case '1': tokens.push_back({Token::Const1, start}); ++i; continue;
      case 'x': {
        ++i;
        std::size_t digits = 0;
        std::uint64_t index = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          index = index * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (index > 1'000'000'000) throw ParseError("attribute index too large", start);
          ++digits;
          ++i;
        }
        if (digits == 0) throw ParseError("expected digits after 'x'", start);
        if (index == 0) throw ParseError("attribute indices are 1-based", start);
        if (index > n)
          throw ParseError("attribute x" + std::to_string(index) + " out of range (n = " +
                               std::to_string(n) + ")",
                           start);
        tokens.push_back({Token::Var, start, static_cast<std::uint32_t>(index - 1)});
        continue;
      }
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  tokens.push_back({Token::End, text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_disjunction();
    if (peek().kind != Token::End) throw ParseError("unexpected token", peek().offset);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  Formula parse_disjunction() {
    std::vector<Formula> parts;
    parts.push_back(parse_conjunction());
    while (peek().kind == Token::Or) {
      take();
      parts.push_back(parse_conjunction());
    }
    return Formula::disjunction(std::move(parts));
  }

  Formula parse_conjunction() {
    std::vector<Formula> parts;
    parts.push_back(parse_unary());
    while (peek().kind == Token::And) {
      take();
      parts.push_back(parse_unary());
    }
    return Formula::conjunction(std::move(parts));
  }

  Formula parse_unary() {
    if (peek().kind == Token::Not) {
      take();
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Var: take(); return Formula::variable(t.attr);
      case Token::Const0: take(); return Formula::constant(false);
      case Token::Const1: take(); return Formula::constant(true);
      case Token::LParen: {
        Token open = take();
        open_parens_.push_back(open.offset);
        Formula inner = parse_disjunction();
        if (peek().kind != Token::RParen)
          throw ParseError("unbalanced parenthesis", open.offset);
        take();
        open_parens_.pop_back();
        return inner;
      }
      case Token::End:
        // An open paren is the root cause of running off the end.
        if (!open_parens_.empty())
          throw ParseError("unbalanced parenthesis", open_parens_.back());
        throw ParseError("expected operand", t.offset);
      default: throw ParseError("expected operand", t.offset);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> open_parens_;
};

}  // namespace

Formula parse_formula(std::string_view text, std::size_t n) {
  return Parser(lex(text, n)).parse();
}

// ---------------------------------------------------------------------------
// Restriction and evaluation

Formula restrict(const Formula& f, const PartialExample& rho) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f;
    case Formula::Kind::Variable: {
      if (f.attr() >= rho.size())
        throw std::out_of_range("variable x" + std::to_string(f.attr() + 1) +
                                " outside example range");
      switch (rho[f.attr()]) {
        case TriValue::False: return Formula::constant(false);
        case TriValue::True: return Formula::constant(true);
        default: return f;
      }
    }
    case Formula::Kind::Negation: {
      Formula r = restrict(f.operand(), rho);
      if (r.kind() == Formula::Kind::Constant) return Formula::constant(!r.constant_value());
      return Formula::negation(std::move(r));
    }
    case Formula::Kind::Conjunction: {
      std::vector<Formula> kept;
      for (const Formula& child : f.children()) {
        Formula r = restrict(child, rho);
        if (r.kind() == Formula::Kind::Constant) {
          if (!r.constant_value()) return Formula::constant(false);
          continue;  // drop the 1
        }
        kept.push_back(std::move(r));
      }
      return Formula::conjunction(std::move(kept));
    }
    case Formula::Kind::Disjunction: {
      std::vector<Formula> kept;
      for (const Formula& child : f.children()) {
        Formula r = restrict(child, rho);
        if (r.kind() == Formula::Kind::Constant) {
          if (r.constant_value()) return Formula::constant(true);
          continue;
        }
        kept.push_back(std::move(r));
      }
      return Formula::disjunction(std::move(kept));
    }
  }
  throw std::logic_error("unreachable formula kind");
}

WitnessStatus witness_status(const Formula& f, const PartialExample& rho) {
  Formula r = restrict(f, rho);
  if (r.kind() != Formula::Kind::Constant) return WitnessStatus::NotWitnessed;
  return r.constant_value() ? WitnessStatus::WitnessedTrue : WitnessStatus::WitnessedFalse;
}

bool eval_total(const Formula& f, const std::vector<bool>& assignment) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.constant_value();
    case Formula::Kind::Variable:
      if (f.attr() >= assignment.size())
        throw std::out_of_range("variable x" + std::to_string(f.attr() + 1) +
                                " outside assignment range");
      return assignment[f.attr()];
    case Formula::Kind::Negation: return !eval_total(f.operand(), assignment);
    case Formula::Kind::Conjunction:
      for (const Formula& child : f.children())
        if (!eval_total(child, assignment)) return false;
      return true;
    case Formula::Kind::Disjunction:
      for (const Formula& child : f.children())
        if (eval_total(child, assignment)) return true;
      return false;
  }
  throw std::logic_error("unreachable formula kind");
}

bool eval_total(const Formula& f, const PartialExample& assignment) {
  std::vector<bool> total;
  total.reserve(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!assignment.observed(i))
      throw std::invalid_argument("total evaluation requires a fully observed assignment; x" +
                                  std::to_string(i + 1) + " is unobserved");
    total.push_back(assignment[i] == TriValue::True);
  }
  return eval_total(f, total);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Literal> literal_of(const Formula& f) {
  if (f.kind() == Formula::Kind::Variable) return Literal{f.attr(), false};
  if (f.kind() == Formula::Kind::Negation &&
      f.operand().kind() == Formula::Kind::Variable)
    return Literal{f.operand().attr(), true};
  return std::nullopt;
}

std::optional<Term> term_of(const Formula& f) {
  std::vector<Literal> lits;
  if (auto single = literal_of(f)) {
    lits.push_back(*single);
  } else if (f.kind() == Formula::Kind::Conjunction) {
    for (const Formula& child : f.children()) {
      auto lit = literal_of(child);
      if (!lit) return std::nullopt;
      lits.push_back(*lit);
    }
  } else {
    return std::nullopt;
  }
  try {
    return Term(std::move(lits));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<KDnf> kdnf_from_formula(const Formula& f, int k) {
  std::vector<Term> terms;
  if (f.kind() == Formula::Kind::Constant && !f.constant_value()) {
    // empty k-DNF
  } else if (f.kind() == Formula::Kind::Disjunction) {
    for (const Formula& child : f.children()) {
      auto t = term_of(child);
      if (!t) return std::nullopt;
      terms.push_back(std::move(*t));
    }
  } else {
    auto t = term_of(f);
    if (!t) return std::nullopt;
    terms.push_back(std::move(*t));
  }
  try {
    return KDnf(std::move(terms), k);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace abduct
