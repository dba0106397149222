#include "abduct/report.hpp"

#include <limits>

namespace abduct {

nlohmann::json to_json(const DerivedParams& derived) {
  return {
      {"term_count", derived.term_count_T},
      {"m_algorithm1", derived.m_algorithm1},
      {"m_claim_bound", derived.m_claim_bound},
      {"m_theoretical", derived.m_theoretical},
      {"m", derived.m},
      {"budget_capped", derived.budget_capped},
      {"delta_prime", derived.delta_prime},
      {"filter_threshold", derived.filter_threshold},
      {"cover_target", derived.cover_target},
  };
}

nlohmann::json to_json(const AbductionResult& result) {
  nlohmann::json terms = nlohmann::json::array();
  for (const TermStats& stats : result.chosen_terms) {
    terms.push_back({
        {"term", stats.term.to_string()},
        {"coverage", stats.coverage},
        {"bad_count", stats.bad_count},
    });
  }
  return {
      {"status", result.status == AbduceStatus::Found ? "found" : "no_plausible_explanation"},
      {"h", result.h.to_string()},
      {"r_prime", result.r_prime},
      {"covered", result.covered},
      {"cover_target", result.cover_target},
      {"filter_threshold", result.filter_threshold},
      {"example_count", result.example_count},
      {"term_universe", result.term_universe},
      {"survivors", result.survivors},
      {"contradiction_rows", result.contradiction_rows},
      {"empty_term_excluded", true},
      {"terms", std::move(terms)},
      {"theoretical_bound", result.theoretical_bound},
  };
}

nlohmann::json to_json(const EvalReport& report) {
  return {
      {"schema", kReportSchema},
      {"holdout_rows", report.holdout_rows},
      {"denominator", report.denominator},
      {"plausibility_hat", report.plausibility_hat},
      {"entailment_error_hat", report.entailment_error_hat},
      {"entailment_status",
       report.entailment_status == EntailmentStatus::Defined ? "defined" : "undefined"},
      {"r_prime", report.r_prime},
      {"plausibility_floor", report.plausibility_floor},
      {"error_ceiling", report.error_ceiling},
  };
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  EvalReport report;
  report.holdout_rows = j.at("holdout_rows").get<std::uint64_t>();
  report.denominator = j.at("denominator").get<std::uint64_t>();
  report.plausibility_hat = j.at("plausibility_hat").get<double>();
  report.entailment_error_hat = j.at("entailment_error_hat").get<double>();
  report.entailment_status = j.at("entailment_status").get<std::string>() == "defined"
                                 ? EntailmentStatus::Defined
                                 : EntailmentStatus::Undefined;
  report.r_prime = j.at("r_prime").get<std::size_t>();
  report.plausibility_floor = j.at("plausibility_floor").get<double>();
  // JSON has no infinity; an unbounded ceiling (gamma = 1) lands as null.
  report.error_ceiling = j.at("error_ceiling").is_null()
                             ? std::numeric_limits<double>::infinity()
                             : j.at("error_ceiling").get<double>();
  return report;
}

nlohmann::json to_json(const BoundCheck& check) {
  return {
      {"plausibility_pass", check.plausibility_pass},
      {"plausibility_margin", check.plausibility_margin},
      {"plausibility_slack", check.plausibility_slack},
      {"entailment_defined", check.entailment_defined},
      {"entailment_pass", check.entailment_pass},
      {"entailment_margin", check.entailment_margin},
      {"entailment_slack", check.entailment_slack},
  };
}

}  // namespace abduct
