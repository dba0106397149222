#pragma once

#include <cstdint>

#include "abduct/abduce.hpp"
#include "abduct/dataset.hpp"
#include "abduct/formula.hpp"
#include "abduct/proofsys.hpp"
#include "abduct/sampling.hpp"

namespace abduct {

enum class EntailmentStatus { Defined, Undefined };

/// Holdout measurement of an explanation: how often some term of h is
/// provable, and how often ~c is provable among those rows. The conditional
/// error is Undefined when no row has a provable term; it is never coerced
/// to 0 or 1.
struct EvalReport {
  std::uint64_t holdout_rows = 0;
  std::uint64_t denominator = 0;  // rows with some term of h provable
  double plausibility_hat = 0.0;
  double entailment_error_hat = 0.0;  // meaningful only when Defined
  EntailmentStatus entailment_status = EntailmentStatus::Undefined;
  std::size_t r_prime = 0;
  double plausibility_floor = 0.0;  // (1-gamma) mu
  double error_ceiling = 0.0;       // r' (1+gamma) epsilon / (1-gamma)

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

EvalReport evaluate(const KDnf& h, const KnowledgeBase& kb, const Formula& c,
                    const Dataset& holdout, const AbductionParams& params,
                    const ProofEngine& engine);

/// Pass/fail per criterion with margins. Slack is the 3-sigma normal
/// approximation with the Bernoulli variance bound 1/4; comparisons are
/// inclusive at the slackened boundary.
struct BoundCheck {
  bool plausibility_pass = false;
  double plausibility_margin = 0.0;  // hat - floor
  double plausibility_slack = 0.0;
  bool entailment_defined = false;
  bool entailment_pass = false;
  double entailment_margin = 0.0;  // ceiling - hat
  double entailment_slack = 0.0;
};

BoundCheck compare_bounds(const EvalReport& report, const AbductionParams& params,
                          std::size_t r_prime);

}  // namespace abduct
