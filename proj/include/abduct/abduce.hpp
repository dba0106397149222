#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abduct/bitset.hpp"
#include "abduct/dataset.hpp"
#include "abduct/formula.hpp"
#include "abduct/proofsys.hpp"
#include "abduct/sampling.hpp"

namespace abduct {

/// All non-contradictory terms of 1..k literals over n attributes, in
/// lexicographic order of the canonical literal sequence. The empty term is
/// deliberately absent: it is provable everywhere and explains nothing.
std::vector<Term> enumerate_terms(std::size_t n, int k);

/// Per-term provability sets and bad counts over a dataset.
struct CoverageMatrix {
  std::vector<Bitset> provable_sets;       // provable_sets[t] over example indices
  std::vector<std::uint64_t> bad_counts;   // #{rho : t provable and ~c provable}
  std::size_t example_count = 0;
  std::uint64_t contradiction_rows = 0;    // rows where KB|rho was contradictory

  friend bool operator==(const CoverageMatrix&, const CoverageMatrix&) = default;
};

/// One derivation pass per example, shared across all terms. Data-parallel
/// over examples when num_threads > 1; the result is identical to the serial
/// one (thread chunks are word-aligned, counts are summed in chunk order).
CoverageMatrix build_coverage(std::span<const Term> terms, const KnowledgeBase& kb,
                              const Formula& c, const Dataset& dataset,
                              const ProofEngine& engine, unsigned num_threads = 1);

/// Indices of terms with bad_count <= threshold (the filter deletes on a
/// strict > comparison).
std::vector<std::size_t> filter_terms(const CoverageMatrix& matrix, std::uint64_t threshold);

struct CoverResult {
  std::vector<std::size_t> chosen;  // indices into the input span, pick order
  std::uint64_t covered = 0;
  bool success = false;
};

/// Greedy partial set cover: repeatedly take the set covering the most
/// uncovered examples (ties go to the lowest index, i.e. the caller's order)
/// until cover_target is reached or no set adds anything.
CoverResult greedy_partial_cover(std::span<const Bitset> sets, std::uint64_t cover_target);

enum class AbduceStatus { Found, NoPlausibleExplanation };

struct TermStats {
  Term term;
  std::uint64_t coverage = 0;
  std::uint64_t bad_count = 0;
};

struct AbductionResult {
  AbduceStatus status = AbduceStatus::NoPlausibleExplanation;
  KDnf h;
  std::size_t r_prime = 0;
  std::uint64_t covered = 0;
  std::uint64_t cover_target = 0;
  std::uint64_t filter_threshold = 0;
  std::uint64_t example_count = 0;
  std::uint64_t term_universe = 0;
  std::uint64_t survivors = 0;
  std::uint64_t contradiction_rows = 0;
  std::vector<TermStats> chosen_terms;
  double theoretical_bound = 0.0;  // r' (1+gamma) epsilon / (1-gamma)
};

/// The whole pipeline: enumerate, count, filter at floor(mu epsilon m), cover
/// to ceil(mu m), assemble h. Thresholds come from the dataset actually given.
AbductionResult abduce(const KnowledgeBase& kb, const Formula& c, const Dataset& dataset,
                       const AbductionParams& params, const ProofEngine& engine,
                       unsigned num_threads = 1);

struct MuEstimate {
  double mu = 0.0;
  bool found = false;        // false: even the floor candidate failed to cover
  std::size_t grid_steps = 0;
};

/// Walks mu down the grid 1, (1+gamma)^-1, (1+gamma)^-2, ... to mu_floor and
/// returns the largest candidate whose filter+cover pass succeeds.
MuEstimate estimate_mu(const KnowledgeBase& kb, const Formula& c, const Dataset& dataset,
                       const AbductionParams& params, const ProofEngine& engine,
                       double mu_floor = 1e-3, unsigned num_threads = 1);

}  // namespace abduct
