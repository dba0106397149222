#pragma once

#include <json.hpp>

#include "abduct/abduce.hpp"
#include "abduct/evaluate.hpp"
#include "abduct/sampling.hpp"

namespace abduct {

// JSON views of the pipeline results; the report schema is versioned.
inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const DerivedParams& derived);
nlohmann::json to_json(const AbductionResult& result);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const BoundCheck& check);

EvalReport eval_report_from_json(const nlohmann::json& j);

}  // namespace abduct
