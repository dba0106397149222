#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abduct/dataset.hpp"
#include "abduct/formula.hpp"
#include "abduct/proofsys.hpp"

namespace abduct {

/// Size limits for the brute-force reference implementations. These exist to
/// keep exhaustive search honest, not fast.
struct OracleConfig {
  std::size_t max_n = 12;
  std::size_t max_m = 2000;
  std::size_t max_terms = 24;  // for the exact cover search
};

/// Recomputes the filter counts with a naive per-(term, example) loop: its own
/// propagation, its own three-valued query evaluation, no shared pass, no bit
/// packing. Must agree with build_coverage exactly.
std::vector<std::uint64_t> exact_filter_counts(std::span<const Term> terms,
                                               const KnowledgeBase& kb, const Formula& c,
                                               const Dataset& dataset, const ProofEngine& engine,
                                               const OracleConfig& config = {});

struct OptimalCover {
  std::size_t size = 0;
  bool feasible = false;
};

/// Exact minimum number of sets whose union reaches `target` elements, by
/// branch-and-bound over all subsets.
OptimalCover optimal_partial_cover(const std::vector<std::vector<std::size_t>>& sets,
                                   std::size_t target, const OracleConfig& config = {});

/// True when every total completion of rho that satisfies the knowledge base
/// also satisfies t (vacuously true when no completion does). Semantic
/// entailment by enumeration; the engines are sound but not complete for it.
bool semantic_provability(const KnowledgeBase& kb, const Term& t, const PartialExample& rho,
                          const OracleConfig& config = {});

}  // namespace abduct
