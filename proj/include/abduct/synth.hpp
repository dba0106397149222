#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "abduct/dataset.hpp"
#include "abduct/formula.hpp"
#include "abduct/proofsys.hpp"
#include "abduct/rng.hpp"

namespace abduct {

/// A ground-truth abduction instance with a planted r-term k-DNF explanation.
///
/// The query is materialized as a dedicated attribute column (the last one),
/// observable and maskable like any other, wired to the noisy rule
/// "query = h_star holds, flipped off with probability epsilon_star".
/// Sampling makes some planted term true with probability exactly mu_target:
/// one uniformly chosen term is forced true with that probability, and every
/// non-forced term is drawn conditioned false (terms are attribute-disjoint,
/// so the conditioning is per-term rejection).
struct PlantedInstance {
  std::size_t n = 0;
  int k = 1;
  int r = 1;
  KDnf h_star;
  Formula c;                    // variable(query_attr)
  std::uint32_t query_attr = 0; // always n-1
  KnowledgeBase kb;
  std::vector<double> attr_bias;  // Bernoulli mean of each free attribute
  double mu_target = 0.5;
  double epsilon_star = 0.0;
  std::uint64_t seed = 0;
  // Alias columns mirror a planted literal; the KB clause alias => literal
  // lets the prover reach hidden planted attributes.
  std::vector<std::pair<std::uint32_t, Literal>> aliases;
};

/// Plants r attribute-disjoint terms of exactly k literals on attributes
/// [0, r k); requires r k <= n - 1 so the query column fits.
PlantedInstance plant(std::size_t n, int k, int r, double mu_target, double epsilon_star,
                      std::uint64_t seed, bool with_kb = true);

struct GroundSample {
  std::vector<bool> assignment;
  bool query_value = false;
  std::vector<bool> term_true;  // per planted term
};

GroundSample draw_ground(const PlantedInstance& instance, Rng& rng);

struct MaskedDataset {
  Dataset data;
  std::vector<GroundSample> ground;  // sidecar, for evaluation only
};

MaskedDataset sample_masked(const PlantedInstance& instance, std::size_t m,
                            const MaskProcess& process, std::uint64_t seed);

}  // namespace abduct
