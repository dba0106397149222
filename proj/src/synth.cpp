#include "abduct/synth.hpp"

#include <algorithm>
#include <stdexcept>

namespace abduct {

PlantedInstance plant(std::size_t n, int k, int r, double mu_target, double epsilon_star,
                      std::uint64_t seed, bool with_kb) {
  if (k < 1 || r < 1) throw std::invalid_argument("k and r must be at least 1");
  if (static_cast<std::size_t>(k) * static_cast<std::size_t>(r) + 1 > n)
    throw std::invalid_argument(
        "need r*k + 1 <= n: disjoint planted terms plus the query column");
  if (!(mu_target > 0.0 && mu_target <= 1.0))
    throw std::invalid_argument("mu_target must be in (0,1]");
  if (!(epsilon_star >= 0.0 && epsilon_star < 1.0))
    throw std::invalid_argument("epsilon_star must be in [0,1)");

  PlantedInstance instance;
  instance.n = n;
  instance.k = k;
  instance.r = r;
  instance.mu_target = mu_target;
  instance.epsilon_star = epsilon_star;
  instance.seed = seed;
  instance.query_attr = static_cast<std::uint32_t>(n - 1);
  instance.c = Formula::variable(instance.query_attr);
  instance.attr_bias.assign(n, 0.5);

  Rng rng(seed);
  std::vector<Term> terms;
  for (int j = 0; j < r; ++j) {
    std::vector<Literal> lits;
    for (int i = 0; i < k; ++i) {
      auto attr = static_cast<std::uint32_t>(j * k + i);
      lits.push_back(Literal{attr, rand_bool(rng, 0.5)});
    }
    terms.emplace_back(std::move(lits));
  }
  instance.h_star = KDnf(std::move(terms), k);

  std::vector<Clause> clauses;
  if (with_kb) {
    // One alias column per planted term, as long as free attributes remain.
    std::uint32_t next_free = static_cast<std::uint32_t>(r) * static_cast<std::uint32_t>(k);
    for (int j = 0; j < r && next_free + 1 < n; ++j, ++next_free) {
      Literal mirrored = instance.h_star.terms()[j].literals().front();
      instance.aliases.emplace_back(next_free, mirrored);
      clauses.emplace_back(std::vector<Literal>{Literal{next_free, true}, mirrored});
    }
  }
  instance.kb = KnowledgeBase::from_clauses(std::move(clauses), n);
  return instance;
}

GroundSample draw_ground(const PlantedInstance& instance, Rng& rng) {
  GroundSample sample;
  sample.assignment.assign(instance.n, false);
  sample.term_true.assign(instance.h_star.terms().size(), false);

  std::vector<bool> planted(instance.n, false);
  for (const Term& t : instance.h_star.terms())
    for (const Literal& lit : t.literals()) planted[lit.attr] = true;
  std::vector<bool> aliased(instance.n, false);
  for (const auto& [attr, lit] : instance.aliases) aliased[attr] = true;

  for (std::size_t i = 0; i < instance.n; ++i) {
    if (planted[i] || aliased[i] || i == instance.query_attr) continue;
    sample.assignment[i] = rand_bool(rng, instance.attr_bias[i]);
  }

  bool forced = rand_bool(rng, instance.mu_target);
  std::size_t forced_term =
      forced ? static_cast<std::size_t>(rand_below(rng, instance.h_star.terms().size())) : 0;

  for (std::size_t j = 0; j < instance.h_star.terms().size(); ++j) {
    const Term& term = instance.h_star.terms()[j];
    if (forced && j == forced_term) {
      for (const Literal& lit : term.literals()) sample.assignment[lit.attr] = !lit.negated;
      sample.term_true[j] = true;
      continue;
    }
    // Draw the term's own attributes conditioned on the term being false.
    // Terms are attribute-disjoint, so rejection here is exact and local.
    do {
      for (const Literal& lit : term.literals())
        sample.assignment[lit.attr] = rand_bool(rng, instance.attr_bias[lit.attr]);
    } while (term.eval(sample.assignment));
  }

  bool h_holds = std::any_of(sample.term_true.begin(), sample.term_true.end(),
                             [](bool b) { return b; });
  sample.query_value = h_holds ? !rand_bool(rng, instance.epsilon_star) : rand_bool(rng, 0.5);
  sample.assignment[instance.query_attr] = sample.query_value;

  for (const auto& [attr, lit] : instance.aliases)
    sample.assignment[attr] = sample.assignment[lit.attr] != lit.negated;

  return sample;
}

MaskedDataset sample_masked(const PlantedInstance& instance, std::size_t m,
                            const MaskProcess& process, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("need at least one sample");
  MaskedDataset out;
  out.data.n = instance.n;
  out.data.attribute_names = Dataset::default_names(instance.n);
  out.data.rows.reserve(m);
  out.ground.reserve(m);

  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    GroundSample sample = draw_ground(instance, rng);
    out.data.rows.push_back(mask(sample.assignment, process, rng));
    out.ground.push_back(std::move(sample));
  }
  return out;
}

}  // namespace abduct
