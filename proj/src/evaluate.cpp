#include "abduct/evaluate.hpp"

#include <cmath>
#include <limits>

namespace abduct {

namespace {

double error_ceiling_for(const AbductionParams& params, std::size_t r_prime) {
  if (params.gamma >= 1.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(r_prime) * (1.0 + params.gamma) * params.epsilon /
         (1.0 - params.gamma);
}

}  // namespace

EvalReport evaluate(const KDnf& h, const KnowledgeBase& kb, const Formula& c,
                    const Dataset& holdout, const AbductionParams& params,
                    const ProofEngine& engine) {
  params.validate();
  if (kb.n != holdout.n)
    throw std::invalid_argument("knowledge base and holdout disagree on attribute count");
  if (c.attr_bound() > holdout.n)
    throw std::invalid_argument("query references attributes beyond the holdout");

  EvalReport report;
  report.holdout_rows = holdout.rows.size();
  report.r_prime = h.terms().size();
  report.plausibility_floor = (1.0 - params.gamma) * params.mu;
  report.error_ceiling = error_ceiling_for(params, report.r_prime);

  std::uint64_t bad = 0;
  for (const PartialExample& row : holdout.rows) {
    Derivation d = derive_literals(kb, row, engine);
    bool provable = false;
    for (const Term& t : h.terms()) {
      if (term_provable_in(d, t)) {
        provable = true;
        break;
      }
    }
    if (!provable) continue;
    ++report.denominator;
    if (neg_query_provable_in(d, c)) ++bad;
  }

  if (report.holdout_rows > 0)
    report.plausibility_hat =
        static_cast<double>(report.denominator) / static_cast<double>(report.holdout_rows);
  if (report.denominator > 0) {
    report.entailment_status = EntailmentStatus::Defined;
    report.entailment_error_hat =
        static_cast<double>(bad) / static_cast<double>(report.denominator);
  }
  return report;
}

BoundCheck compare_bounds(const EvalReport& report, const AbductionParams& params,
                          std::size_t r_prime) {
  BoundCheck check;
  double floor = (1.0 - params.gamma) * params.mu;
  double ceiling = error_ceiling_for(params, r_prime);

  check.plausibility_slack =
      report.holdout_rows > 0
          ? 3.0 * std::sqrt(0.25 / static_cast<double>(report.holdout_rows))
          : std::numeric_limits<double>::infinity();
  check.plausibility_margin = report.plausibility_hat - floor;
  check.plausibility_pass = report.plausibility_hat >= floor - check.plausibility_slack;

  check.entailment_defined = report.entailment_status == EntailmentStatus::Defined;
  if (check.entailment_defined) {
    check.entailment_slack = 3.0 * std::sqrt(0.25 / static_cast<double>(report.denominator));
    check.entailment_margin = ceiling - report.entailment_error_hat;
    check.entailment_pass =
        report.entailment_error_hat <= ceiling + check.entailment_slack;
  }
  return check;
}

}  // namespace abduct
