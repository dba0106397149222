#include <doctest.h>

#include <cmath>

#include "abduct/proofsys.hpp"
#include "abduct/synth.hpp"

using namespace abduct;

TEST_SUITE("synth") {

TEST_CASE("plant validates its shape") {
  CHECK_THROWS_AS(plant(6, 2, 3, 0.5, 0.0, 1), std::invalid_argument);  // no room for query
  CHECK_THROWS_AS(plant(8, 2, 2, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(plant(8, 2, 2, 0.5, 1.0, 1), std::invalid_argument);

  PlantedInstance instance = plant(10, 2, 3, 0.5, 0.1, 42);
  CHECK(instance.h_star.terms().size() == 3);
  for (const Term& t : instance.h_star.terms()) CHECK(t.width() == 2);
  CHECK(instance.query_attr == 9);
  // planted terms are attribute-disjoint
  std::vector<bool> seen(instance.n, false);
  for (const Term& t : instance.h_star.terms()) {
    for (const Literal& lit : t.literals()) {
      CHECK_FALSE(seen[lit.attr]);
      seen[lit.attr] = true;
    }
  }
}

TEST_CASE("mu_target = 1 makes some planted term always true") {
  PlantedInstance instance = plant(8, 2, 2, 1.0, 0.0, 5);
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    GroundSample sample = draw_ground(instance, rng);
    CHECK(instance.h_star.eval(sample.assignment));
    CHECK(sample.query_value);  // zero noise
  }
}

TEST_CASE("ground labels are consistent with the assignment") {
  PlantedInstance instance = plant(11, 2, 3, 0.6, 0.2, 7);
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    GroundSample sample = draw_ground(instance, rng);
    for (std::size_t j = 0; j < instance.h_star.terms().size(); ++j)
      CHECK(sample.term_true[j] == instance.h_star.terms()[j].eval(sample.assignment));
    CHECK(sample.assignment[instance.query_attr] == sample.query_value);
    // alias columns mirror their literal
    for (const auto& [attr, lit] : instance.aliases)
      CHECK(sample.assignment[attr] == (sample.assignment[lit.attr] != lit.negated));
  }
}

TEST_CASE("plant hits mu_target and epsilon_star") {
  const double mu_target = 0.55;
  const double eps_star = 0.1;
  PlantedInstance instance = plant(9, 2, 2, mu_target, eps_star, 11);
  Rng rng(12);
  const int samples = 100000;
  int h_true = 0;
  int c_false_given_h = 0;
  for (int i = 0; i < samples; ++i) {
    GroundSample sample = draw_ground(instance, rng);
    bool h = instance.h_star.eval(sample.assignment);
    if (h) {
      ++h_true;
      if (!sample.query_value) ++c_false_given_h;
    }
  }
  double mu_hat = static_cast<double>(h_true) / samples;
  double mu_sigma = std::sqrt(mu_target * (1 - mu_target) / samples);
  CHECK(std::abs(mu_hat - mu_target) <= 3 * mu_sigma);

  double eps_hat = static_cast<double>(c_false_given_h) / h_true;
  double eps_sigma = std::sqrt(eps_star * (1 - eps_star) / h_true);
  CHECK(std::abs(eps_hat - eps_star) <= 3 * eps_sigma);
}

TEST_CASE("single-literal instance statistics") {
  PlantedInstance instance = plant(3, 1, 1, 0.5, 0.2, 13, /*with_kb=*/false);
  Rng rng(14);
  const int samples = 10000;
  int term_true = 0;
  int c_false_given_term = 0;
  for (int i = 0; i < samples; ++i) {
    GroundSample sample = draw_ground(instance, rng);
    if (sample.term_true[0]) {
      ++term_true;
      if (!sample.query_value) ++c_false_given_term;
    }
  }
  CHECK(std::abs(term_true / 10000.0 - 0.5) <= 3 * std::sqrt(0.25 / samples));
  double eps_hat = static_cast<double>(c_false_given_term) / term_true;
  CHECK(std::abs(eps_hat - 0.2) <= 3 * std::sqrt(0.2 * 0.8 / term_true));
}

TEST_CASE("zero noise, zero mask: planted terms never meet a witnessed ~c") {
  PlantedInstance instance = plant(9, 2, 2, 0.6, 0.0, 17);
  MaskedDataset sample = sample_masked(instance, 500, IndependentMask{0.0}, 18);
  ProofEngine up = ProofEngine::unit_propagation();
  for (const PartialExample& row : sample.data.rows) {
    Derivation d = derive_literals(instance.kb, row, up);
    REQUIRE_FALSE(d.contradiction);
    bool planted_provable = false;
    for (const Term& t : instance.h_star.terms())
      if (term_provable_in(d, t)) planted_provable = true;
    if (planted_provable) CHECK_FALSE(neg_query_provable_in(d, instance.c));
  }
}

TEST_CASE("masked sampling keeps a faithful sidecar") {
  PlantedInstance instance = plant(9, 2, 2, 0.6, 0.1, 21);

  MaskedDataset clear = sample_masked(instance, 50, IndependentMask{0.0}, 22);
  for (const PartialExample& row : clear.data.rows)
    for (std::size_t i = 0; i < row.size(); ++i) CHECK(row.observed(i));

  MaskedDataset dark = sample_masked(instance, 50, IndependentMask{1.0}, 23);
  for (const PartialExample& row : dark.data.rows)
    for (std::size_t i = 0; i < row.size(); ++i) CHECK_FALSE(row.observed(i));

  MaskedDataset mixed = sample_masked(instance, 300, IndependentMask{0.4}, 24);
  REQUIRE(mixed.ground.size() == mixed.data.rows.size());
  for (std::size_t r = 0; r < mixed.data.rows.size(); ++r) {
    for (std::size_t i = 0; i < instance.n; ++i) {
      if (mixed.data.rows[r].observed(i))
        CHECK((mixed.data.rows[r][i] == TriValue::True) == mixed.ground[r].assignment[i]);
    }
  }
}

TEST_CASE("witnessing rate under masking matches the closed form") {
  // A forced term is witnessed true exactly when its k attributes survive
  // the mask; non-forced terms are never true: mu_target * (1-p)^k.
  const double p = 0.3;
  const double mu_target = 0.7;
  PlantedInstance instance = plant(10, 2, 3, mu_target, 0.0, 31, /*with_kb=*/false);
  MaskedDataset sample = sample_masked(instance, 10000, IndependentMask{p}, 32);

  int witnessed = 0;
  for (const PartialExample& row : sample.data.rows) {
    bool any = false;
    for (const Term& t : instance.h_star.terms()) {
      bool all = true;
      for (const Literal& lit : t.literals()) {
        if (!row.observed(lit.attr) ||
            (row[lit.attr] == TriValue::True) == lit.negated) {
          all = false;
          break;
        }
      }
      if (all) { any = true; break; }
    }
    if (any) ++witnessed;
  }
  double expected = mu_target * std::pow(1 - p, 2);
  double sigma = std::sqrt(expected * (1 - expected) / 10000.0);
  CHECK(std::abs(witnessed / 10000.0 - expected) <= 3 * sigma);
}

TEST_CASE("the knowledge base lets the prover reach masked literals") {
  PlantedInstance instance = plant(10, 2, 2, 0.8, 0.0, 41, /*with_kb=*/true);
  REQUIRE_FALSE(instance.kb.clauses.empty());

  // Hide exactly the mirrored planted attribute; the alias column plus the
  // KB clause still prove it.
  const auto& [alias_attr, mirrored] = instance.aliases.front();
  Rng rng(42);
  ProofEngine up = ProofEngine::unit_propagation();
  int provable_via_kb = 0;
  for (int i = 0; i < 200; ++i) {
    GroundSample ground = draw_ground(instance, rng);
    if (ground.assignment[mirrored.attr] == mirrored.negated) continue;  // literal false
    PartialExample rho = mask(ground.assignment, FixedSubsetMask{{mirrored.attr}}, rng);
    Derivation d = derive_literals(instance.kb, rho, up);
    REQUIRE_FALSE(d.contradiction);
    if (term_provable_in(d, Term({mirrored}))) ++provable_via_kb;
  }
  CHECK(provable_via_kb > 0);
}

}  // TEST_SUITE
