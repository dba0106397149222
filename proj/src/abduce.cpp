#include "abduct/abduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace abduct {

namespace {

void extend_terms(std::size_t n, int k, std::uint32_t next_attr, std::vector<Literal>& prefix,
                  std::vector<Term>& out) {
  for (std::uint32_t attr = next_attr; attr < n; ++attr) {
    for (bool negated : {false, true}) {
      prefix.push_back(Literal{attr, negated});
      out.emplace_back(prefix);
      if (static_cast<int>(prefix.size()) < k) extend_terms(n, k, attr + 1, prefix, out);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<Term> enumerate_terms(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::domain_error("term width must satisfy 1 <= k <= n");
  std::vector<Term> out;
  out.reserve(term_count(n, k));
  std::vector<Literal> prefix;
  extend_terms(n, k, 0, prefix, out);
  return out;
}

CoverageMatrix build_coverage(std::span<const Term> terms, const KnowledgeBase& kb,
                              const Formula& c, const Dataset& dataset,
                              const ProofEngine& engine, unsigned num_threads) {
  const std::size_t m = dataset.rows.size();
  if (m == 0) throw std::invalid_argument("coverage requires a nonempty dataset");
  if (kb.n != dataset.n)
    throw std::invalid_argument("knowledge base and dataset disagree on attribute count");
  if (c.attr_bound() > dataset.n)
    throw std::invalid_argument("query references attributes beyond the dataset");

  CoverageMatrix matrix;
  matrix.example_count = m;
  matrix.provable_sets.assign(terms.size(), Bitset(m));
  matrix.bad_counts.assign(terms.size(), 0);

  struct ChunkTotals {
    std::vector<std::uint64_t> bad;
    std::uint64_t contradictions = 0;
  };

  auto process = [&](std::size_t lo, std::size_t hi, ChunkTotals& totals) {
    totals.bad.assign(terms.size(), 0);
    for (std::size_t i = lo; i < hi; ++i) {
      Derivation d = derive_literals(kb, dataset.rows[i], engine);
      if (d.contradiction) ++totals.contradictions;
      bool bad_row = neg_query_provable_in(d, c);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        if (!term_provable_in(d, terms[t])) continue;
        matrix.provable_sets[t].set(i);
        if (bad_row) ++totals.bad[t];
      }
    }
  };

  if (num_threads <= 1) {
    ChunkTotals totals;
    process(0, m, totals);
    matrix.bad_counts = std::move(totals.bad);
    matrix.contradiction_rows = totals.contradictions;
    return matrix;
  }

  // Chunks are multiples of 64 examples so no two workers touch the same
  // bitset word.
  std::size_t chunk = (m + num_threads - 1) / num_threads;
  chunk = (chunk + 63) / 64 * 64;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t lo = 0; lo < m; lo += chunk) ranges.emplace_back(lo, std::min(lo + chunk, m));

  std::vector<ChunkTotals> totals(ranges.size());
  std::vector<std::thread> workers;
  workers.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w)
    workers.emplace_back([&, w] { process(ranges[w].first, ranges[w].second, totals[w]); });
  for (std::thread& worker : workers) worker.join();

  for (const ChunkTotals& chunk_totals : totals) {
    matrix.contradiction_rows += chunk_totals.contradictions;
    for (std::size_t t = 0; t < terms.size(); ++t)
      matrix.bad_counts[t] += chunk_totals.bad[t];
  }
  return matrix;
}

std::vector<std::size_t> filter_terms(const CoverageMatrix& matrix, std::uint64_t threshold) {
  std::vector<std::size_t> survivors;
  for (std::size_t t = 0; t < matrix.bad_counts.size(); ++t)
    if (matrix.bad_counts[t] <= threshold) survivors.push_back(t);
  return survivors;
}

CoverResult greedy_partial_cover(std::span<const Bitset> sets, std::uint64_t cover_target) {
  CoverResult result;
  if (cover_target == 0) {
    result.success = true;
    return result;
  }
  if (sets.empty()) return result;

  Bitset covered(sets.front().size());
  while (result.covered < cover_target) {
    std::size_t best = sets.size();
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t gain = sets[s].count_and_not(covered);
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best == sets.size()) return result;  // nothing adds coverage
    covered.or_with(sets[best]);
    result.covered += best_gain;
    result.chosen.push_back(best);
  }
  result.success = true;
  return result;
}

AbductionResult abduce(const KnowledgeBase& kb, const Formula& c, const Dataset& dataset,
                       const AbductionParams& params, const ProofEngine& engine,
                       unsigned num_threads) {
  params.validate();
  if (params.n != dataset.n)
    throw std::invalid_argument("params and dataset disagree on attribute count");
  if (dataset.rows.empty()) throw std::invalid_argument("abduction requires at least one example");

  const std::uint64_t m = dataset.rows.size();
  std::vector<Term> terms = enumerate_terms(dataset.n, params.k);
  CoverageMatrix matrix = build_coverage(terms, kb, c, dataset, engine, num_threads);

  AbductionResult result;
  result.example_count = m;
  result.term_universe = terms.size();
  result.contradiction_rows = matrix.contradiction_rows;
  result.filter_threshold = filter_threshold_for(params.mu, params.epsilon, m);
  result.cover_target = cover_target_for(params.mu, m);

  std::vector<std::size_t> survivors = filter_terms(matrix, result.filter_threshold);
  result.survivors = survivors.size();

  // Zero-coverage terms can never help the cover; dropping them only saves
  // work, the outcome is unchanged.
  std::vector<std::size_t> useful;
  std::vector<Bitset> sets;
  for (std::size_t idx : survivors) {
    if (!matrix.provable_sets[idx].any()) continue;
    useful.push_back(idx);
    sets.push_back(matrix.provable_sets[idx]);
  }

  CoverResult cover = greedy_partial_cover(sets, result.cover_target);
  result.covered = cover.covered;

  std::vector<Term> chosen;
  for (std::size_t pick : cover.chosen) {
    std::size_t term_idx = useful[pick];
    chosen.push_back(terms[term_idx]);
    result.chosen_terms.push_back(
        TermStats{terms[term_idx], matrix.provable_sets[term_idx].count(),
                  matrix.bad_counts[term_idx]});
  }

  if (cover.success) {
    result.status = AbduceStatus::Found;
    result.h = KDnf(std::move(chosen), params.k);
    result.r_prime = result.h.terms().size();
    result.theoretical_bound =
        params.gamma < 1.0
            ? static_cast<double>(result.r_prime) * (1.0 + params.gamma) * params.epsilon /
                  (1.0 - params.gamma)
            : std::numeric_limits<double>::infinity();
  } else {
    result.status = AbduceStatus::NoPlausibleExplanation;
    result.h = KDnf({}, params.k);
    result.chosen_terms.clear();
  }
  return result;
}

MuEstimate estimate_mu(const KnowledgeBase& kb, const Formula& c, const Dataset& dataset,
                       const AbductionParams& params, const ProofEngine& engine,
                       double mu_floor, unsigned num_threads) {
  AbductionParams probe = params;
  probe.mu = 1.0;
  probe.validate();
  if (!(mu_floor > 0.0 && mu_floor <= 1.0))
    throw std::domain_error("mu floor must be in (0,1]");
  if (dataset.rows.empty()) throw std::invalid_argument("abduction requires at least one example");

  const std::uint64_t m = dataset.rows.size();
  std::vector<Term> terms = enumerate_terms(dataset.n, params.k);
  CoverageMatrix matrix = build_coverage(terms, kb, c, dataset, engine, num_threads);

  MuEstimate estimate;
  estimate.mu = mu_floor;
  double candidate = 1.0;
  while (candidate >= mu_floor) {
    ++estimate.grid_steps;
    std::uint64_t threshold = filter_threshold_for(candidate, params.epsilon, m);
    std::uint64_t target = cover_target_for(candidate, m);
    std::vector<Bitset> sets;
    for (std::size_t idx : filter_terms(matrix, threshold)) {
      if (matrix.provable_sets[idx].any()) sets.push_back(matrix.provable_sets[idx]);
    }
    if (greedy_partial_cover(sets, target).success) {
      estimate.mu = candidate;
      estimate.found = true;
      return estimate;
    }
    candidate /= 1.0 + params.gamma;
  }
  return estimate;
}

}  // namespace abduct
