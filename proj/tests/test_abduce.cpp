#include <doctest.h>

#include <cmath>

#include "abduct/abduce.hpp"
#include "abduct/synth.hpp"
#include "helpers.hpp"

using namespace abduct;

namespace {

Dataset dataset_of(std::size_t n, std::initializer_list<const char*> rows) {
  Dataset d;
  d.n = n;
  d.attribute_names = Dataset::default_names(n);
  for (const char* row : rows) d.rows.push_back(PartialExample::from_string(row));
  return d;
}

Bitset bits_of(std::size_t m, std::initializer_list<std::size_t> on) {
  Bitset b(m);
  for (std::size_t i : on) b.set(i);
  return b;
}

}  // namespace

TEST_SUITE("bitset") {

TEST_CASE("bitset matches a plain bool vector") {
  Rng rng(31);
  for (int round = 0; round < 50; ++round) {
    std::size_t m = 1 + rand_below(rng, 200);
    Bitset a(m);
    Bitset b(m);
    std::vector<bool> ra(m, false);
    std::vector<bool> rb(m, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (rand_bool(rng, 0.4)) { a.set(i); ra[i] = true; }
      if (rand_bool(rng, 0.4)) { b.set(i); rb[i] = true; }
    }
    std::size_t count = 0;
    std::size_t diff = 0;
    for (std::size_t i = 0; i < m; ++i) {
      count += ra[i];
      diff += ra[i] && !rb[i];
    }
    CHECK(a.count() == count);
    CHECK(a.count_and_not(b) == diff);
    Bitset u = a;
    u.or_with(b);
    for (std::size_t i = 0; i < m; ++i) CHECK(u.test(i) == (ra[i] || rb[i]));
  }
  CHECK_THROWS_AS(Bitset(5).count_and_not(Bitset(6)), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("abduce") {

TEST_CASE("term enumeration order and contents") {
  std::vector<Term> one = enumerate_terms(2, 1);
  REQUIRE(one.size() == 4);
  CHECK(one[0] == Term({Literal{0, false}}));
  CHECK(one[1] == Term({Literal{0, true}}));
  CHECK(one[2] == Term({Literal{1, false}}));
  CHECK(one[3] == Term({Literal{1, true}}));

  std::vector<Term> two = enumerate_terms(2, 2);
  CHECK(two.size() == 8);
  for (const Term& t : two) {
    if (t.width() == 2) CHECK(t.literals()[0].attr != t.literals()[1].attr);
  }
  for (std::size_t i = 1; i < two.size(); ++i) CHECK(two[i - 1] < two[i]);

  std::vector<Term> tiny = enumerate_terms(1, 1);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0].to_string() == "x1");
  CHECK(tiny[1].to_string() == "~x1");

  CHECK_THROWS_AS(enumerate_terms(2, 3), std::domain_error);
}

TEST_CASE("coverage counting") {
  KnowledgeBase empty = KnowledgeBase::from_clauses({}, 2);
  ProofEngine up = ProofEngine::unit_propagation();

  // Only row 0 observes x1 = 1.
  Dataset d = dataset_of(2, {"1*", "0*", "**"});
  std::vector<Term> terms{Term({Literal{0, false}})};
  Formula c = Formula::variable(1);
  CoverageMatrix matrix = build_coverage(terms, empty, c, d, up);
  CHECK(matrix.provable_sets[0] == bits_of(3, {0}));
  CHECK(matrix.bad_counts[0] == 0);

  // c = x2; a row observing x1=1, x2=0 makes the term bad there.
  Dataset bad = dataset_of(2, {"10"});
  CoverageMatrix matrix2 = build_coverage(terms, empty, c, bad, up);
  CHECK(matrix2.provable_sets[0] == bits_of(1, {0}));
  CHECK(matrix2.bad_counts[0] == 1);

  // Nothing observed, nothing provable.
  Dataset blank = dataset_of(2, {"**", "**"});
  CoverageMatrix matrix3 = build_coverage(terms, empty, c, blank, up);
  CHECK(matrix3.provable_sets[0].count() == 0);

  CHECK_THROWS_AS(build_coverage(terms, empty, c, dataset_of(2, {}), up),
                  std::invalid_argument);
}

TEST_CASE("filter keeps at most the threshold") {
  CoverageMatrix matrix;
  matrix.example_count = 100;
  matrix.provable_sets.assign(3, Bitset(100));
  matrix.bad_counts = {6, 5, 0};
  // m=100, mu=0.5, eps=0.1: threshold 5; the 6 goes, the 5 stays.
  CHECK(filter_terms(matrix, filter_threshold_for(0.5, 0.1, 100)) ==
        std::vector<std::size_t>{1, 2});
  CHECK(filter_terms(matrix, 0) == std::vector<std::size_t>{2});
  matrix.bad_counts = {6, 7, 8};
  CHECK(filter_terms(matrix, 5).empty());
}

TEST_CASE("greedy partial cover") {
  // {1,2}, {2,3}, {3} with target 3: two sets suffice and greedy finds them.
  std::vector<Bitset> sets{bits_of(4, {1, 2}), bits_of(4, {2, 3}), bits_of(4, {3})};
  CoverResult cover = greedy_partial_cover(sets, 3);
  CHECK(cover.success);
  CHECK(cover.chosen == std::vector<std::size_t>{0, 1});
  CHECK(cover.covered == 3);

  CoverResult zero = greedy_partial_cover(sets, 0);
  CHECK(zero.success);
  CHECK(zero.chosen.empty());

  std::vector<Bitset> small{bits_of(4, {1}), bits_of(4, {2})};
  CoverResult fail = greedy_partial_cover(small, 3);
  CHECK_FALSE(fail.success);
  CHECK(fail.covered == 2);
}

TEST_CASE("greedy ties break toward the earlier set") {
  std::vector<Bitset> sets{bits_of(4, {0, 1}), bits_of(4, {2, 3})};
  CoverResult cover = greedy_partial_cover(sets, 2);
  CHECK(cover.chosen == std::vector<std::size_t>{0});
}

TEST_CASE("abduce recovers a planted explanation at zero noise") {
  PlantedInstance instance = plant(8, 2, 2, 0.7, 0.0, 77, /*with_kb=*/false);
  MaskedDataset sample = sample_masked(instance, 400, IndependentMask{0.0}, 78);
  AbductionParams params{0.4, 0.1, 0.5, 0.1, 2, 2, 8};
  AbductionResult result = abduce(instance.kb, instance.c, sample.data, params,
                                  ProofEngine::unit_propagation());
  REQUIRE(result.status == AbduceStatus::Found);
  CHECK(result.covered >= result.cover_target);
  CHECK(result.cover_target == cover_target_for(0.4, 400));
  for (const TermStats& stats : result.chosen_terms) CHECK(stats.bad_count == 0);
  CHECK(result.r_prime == result.h.terms().size());
  CHECK(result.theoretical_bound ==
        doctest::Approx(static_cast<double>(result.r_prime) * 1.5 * 0.1 / 0.5));
}

TEST_CASE("a never-true query forces no-plausible-explanation") {
  // All rows identical and fully observed; ~c is provable everywhere, so
  // every provable term exceeds the filter threshold.
  Dataset d = dataset_of(3, {"110", "110", "110", "110", "110", "110", "110", "110", "110",
                             "110"});
  KnowledgeBase empty = KnowledgeBase::from_clauses({}, 3);
  AbductionParams params{0.5, 0.1, 0.5, 0.1, 2, 1, 3};
  AbductionResult result = abduce(empty, Formula::constant(false), d, params,
                                  ProofEngine::unit_propagation());
  CHECK(result.status == AbduceStatus::NoPlausibleExplanation);
  CHECK(result.h.empty());

  // Same for an all-unobserved dataset: nothing is provable at all.
  Dataset blank = dataset_of(3, {"***", "***"});
  AbductionResult none = abduce(empty, Formula::variable(2), blank, params,
                                ProofEngine::unit_propagation());
  CHECK(none.status == AbduceStatus::NoPlausibleExplanation);
}

TEST_CASE("abduce rejects mismatched shapes") {
  Dataset d = dataset_of(2, {"11"});
  KnowledgeBase kb3 = KnowledgeBase::from_clauses({}, 3);
  AbductionParams params{0.5, 0.1, 0.5, 0.1, 1, 1, 2};
  CHECK_THROWS_AS(abduce(kb3, Formula::variable(0), d, params,
                         ProofEngine::unit_propagation()),
                  std::invalid_argument);
  AbductionParams wrong_n = params;
  wrong_n.n = 3;
  KnowledgeBase kb2 = KnowledgeBase::from_clauses({}, 2);
  CHECK_THROWS_AS(abduce(kb2, Formula::variable(0), d, wrong_n,
                         ProofEngine::unit_propagation()),
                  std::invalid_argument);
}

TEST_CASE("found results satisfy their own construction rules") {
  Rng rng(301);
  for (int round = 0; round < 20; ++round) {
    PlantedInstance instance =
        plant(7, 2, 2, 0.6 + 0.3 * rand_unit(rng), 0.05 * rand_unit(rng), rng(), true);
    MaskedDataset sample = sample_masked(instance, 200, IndependentMask{0.2}, rng());
    AbductionParams params{0.3, 0.2, 0.5, 0.1, 2, 2, 7};
    AbductionResult result = abduce(instance.kb, instance.c, sample.data, params,
                                    ProofEngine::unit_propagation());
    if (result.status != AbduceStatus::Found) continue;
    CHECK(result.covered >= result.cover_target);
    for (const TermStats& stats : result.chosen_terms)
      CHECK(stats.bad_count <= result.filter_threshold);
  }
}

TEST_CASE("abduce is deterministic and thread-count independent") {
  PlantedInstance instance = plant(8, 2, 2, 0.7, 0.02, 500, true);
  MaskedDataset sample = sample_masked(instance, 300, IndependentMask{0.25}, 501);
  AbductionParams params{0.3, 0.15, 0.5, 0.1, 2, 2, 8};
  ProofEngine up = ProofEngine::unit_propagation();

  AbductionResult serial = abduce(instance.kb, instance.c, sample.data, params, up, 1);
  AbductionResult again = abduce(instance.kb, instance.c, sample.data, params, up, 1);
  AbductionResult parallel = abduce(instance.kb, instance.c, sample.data, params, up, 4);

  CHECK(serial.h.to_string() == again.h.to_string());
  CHECK(serial.h.to_string() == parallel.h.to_string());
  CHECK(serial.covered == parallel.covered);
}

TEST_CASE("parallel coverage equals serial coverage bit for bit") {
  Rng rng(302);
  for (int round = 0; round < 25; ++round) {
    std::size_t n = 2 + rand_below(rng, 5);
    std::size_t m = 1 + rand_below(rng, 300);
    Dataset d;
    d.n = n;
    d.attribute_names = Dataset::default_names(n);
    for (std::size_t i = 0; i < m; ++i)
      d.rows.push_back(abduct::testing::random_partial(rng, n, 0.5));
    KnowledgeBase kb = abduct::testing::random_kb(rng, n, 4);
    Formula c = abduct::testing::random_formula(rng, n, 2);
    std::vector<Term> terms = enumerate_terms(n, 2);
    ProofEngine engine = abduct::testing::random_engine(rng);

    CoverageMatrix serial = build_coverage(terms, kb, c, d, engine, 1);
    CoverageMatrix parallel = build_coverage(terms, kb, c, d, engine, 3);
    CHECK(serial == parallel);
  }
}

TEST_CASE("mu estimation walks the grid") {
  // Terms cover exactly 6 of 10 rows; with gamma = 0.3 the grid passes
  // through 1, 0.769, 0.592 and the cover first succeeds at 0.592.
  Dataset d = dataset_of(2, {"1*", "1*", "1*", "1*", "1*", "1*", "**", "**", "**", "**"});
  KnowledgeBase empty = KnowledgeBase::from_clauses({}, 2);
  AbductionParams params{0.5, 0.1, 0.3, 0.1, 1, 1, 2};
  MuEstimate estimate = estimate_mu(empty, Formula::variable(1), d, params,
                                    ProofEngine::unit_propagation());
  CHECK(estimate.found);
  CHECK(estimate.mu == doctest::Approx(1.0 / (1.3 * 1.3)).epsilon(1e-12));

  // Nothing provable: the floor comes back marked not-found.
  Dataset blank = dataset_of(2, {"**", "**"});
  MuEstimate none = estimate_mu(empty, Formula::variable(1), blank, params,
                                ProofEngine::unit_propagation(), 0.01);
  CHECK_FALSE(none.found);
  CHECK(none.mu == doctest::Approx(0.01));

  // Full coverage: the first grid value 1.0 already succeeds.
  Dataset full = dataset_of(2, {"1*", "0*"});
  MuEstimate one = estimate_mu(empty, Formula::variable(1), full, params,
                               ProofEngine::unit_propagation());
  CHECK(one.found);
  CHECK(one.mu == doctest::Approx(1.0));
}

}  // TEST_SUITE
