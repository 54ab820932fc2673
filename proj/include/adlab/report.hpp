#pragma once

#include <string>
#include <vector>

#include "adlab/protocol.hpp"
#include "adlab/toy_model.hpp"

namespace adlab {

/// Shortest exact decimal for a double ("%.17g"); all file output goes
/// through this so reruns are byte-identical.
std::string format_double(double v);

std::string rate_curve_to_csv(const RateCurve& curve);
std::string rate_curve_to_json(const RateCurve& curve);

/// Flat result schema: experiment_id, dataset_digest, setting, attribute,
/// value, scorer, d, auc, n_normal, n_anomalous, seed.
std::string result_records_to_csv(const std::vector<ResultRecord>& records);
std::string result_records_to_jsonl(const std::vector<ResultRecord>& records);

std::string sweep_result_to_csv(const SweepResult& sweep);
std::string bridge_points_to_csv(const std::vector<BridgePoint>& points);

} // namespace adlab
