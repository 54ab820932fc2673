#pragma once

#include <string>
#include <utility>
#include <vector>

namespace adlab {

/// Scores with ground-truth labels; higher score = more anomalous.
struct ScoredSet {
    std::vector<double> scores;
    std::vector<int> labels;
};

struct EvalResult {
    double auc = 0.0;
    long n_normal = 0;
    long n_anomalous = 0;
    std::vector<std::pair<double, double>> tpr_at_fpr;  // (target_fpr, tpr)
    std::string config_digest;
};

/// ROC-AUC as the Mann-Whitney statistic: over all (anomalous, normal) pairs,
/// the fraction where the anomalous score is higher, ties counting 1/2.
/// Computed by rank sum in O(n log n).
/// Throws std::invalid_argument when only one class is present.
double roc_auc(const ScoredSet& set);

/// TPR at the best operating point whose empirical FPR does not exceed
/// target_fpr; among equal-TPR points the largest threshold wins.
double tpr_at_fpr(const ScoredSet& set, double target_fpr);

/// Mean AUC over runs; counts are summed, config digests concatenated with
/// '+'. tpr_at_fpr lists are averaged when every run shares the same targets.
EvalResult mean_over_runs(const std::vector<EvalResult>& results);

} // namespace adlab
