#include "adlab/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace adlab {
namespace {

void check_set(const ScoredSet& set) {
    if (set.scores.size() != set.labels.size()) {
        throw std::invalid_argument("scored set: score/label counts differ");
    }
    long n1 = 0, n0 = 0;
    for (int y : set.labels) {
        if (y == 1) ++n1;
        else if (y == 0) ++n0;
        else throw std::invalid_argument("scored set: labels must be 0 or 1");
    }
    if (n0 == 0 || n1 == 0) {
        throw std::invalid_argument("scored set: both classes required for the metric");
    }
}

} // namespace

double roc_auc(const ScoredSet& set) {
    check_set(set);
    const std::size_t n = set.scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return set.scores[a] < set.scores[b];
    });

    // midranks for tied scores
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && set.scores[order[j + 1]] == set.scores[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = mid;
        i = j + 1;
    }

    double rank_sum_pos = 0.0;
    long n1 = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (set.labels[r] == 1) {
            rank_sum_pos += rank[r];
            ++n1;
        }
    }
    const long n0 = static_cast<long>(n) - n1;
    return (rank_sum_pos - 0.5 * static_cast<double>(n1) * (n1 + 1)) /
           (static_cast<double>(n1) * static_cast<double>(n0));
}

double tpr_at_fpr(const ScoredSet& set, double target_fpr) {
    check_set(set);
    if (!(target_fpr >= 0.0 && target_fpr <= 1.0)) {
        throw std::invalid_argument("tpr_at_fpr: target must lie in [0, 1]");
    }
    const std::size_t n = set.scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return set.scores[a] > set.scores[b];
    });

    long n0 = 0, n1 = 0;
    for (int y : set.labels) (y == 1 ? n1 : n0)++;

    // Sweep thresholds downward through the distinct score values. At the
    // threshold equal to scores[order[i]] everything with score >= it is
    // flagged. The empty-flag point (threshold above the max) is FPR=TPR=0.
    double best_tpr = 0.0;
    long fp = 0, tp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && set.scores[order[j + 1]] == set.scores[order[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) {
            (set.labels[order[t]] == 1 ? tp : fp)++;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(n0);
        const double tpr = static_cast<double>(tp) / static_cast<double>(n1);
        if (fpr <= target_fpr && tpr > best_tpr) best_tpr = tpr;
        i = j + 1;
    }
    return best_tpr;
}

EvalResult mean_over_runs(const std::vector<EvalResult>& results) {
    if (results.empty()) {
        throw std::invalid_argument("mean_over_runs: empty result list");
    }
    EvalResult mean;
    bool same_targets = true;
    for (const auto& r : results) {
        mean.auc += r.auc;
        mean.n_normal += r.n_normal;
        mean.n_anomalous += r.n_anomalous;
        if (!mean.config_digest.empty()) mean.config_digest += '+';
        mean.config_digest += r.config_digest;
        if (r.tpr_at_fpr.size() != results.front().tpr_at_fpr.size()) {
            same_targets = false;
        } else {
            for (std::size_t i = 0; i < r.tpr_at_fpr.size(); ++i) {
                if (r.tpr_at_fpr[i].first != results.front().tpr_at_fpr[i].first) {
                    same_targets = false;
                }
            }
        }
    }
    mean.auc /= static_cast<double>(results.size());
    if (same_targets && !results.front().tpr_at_fpr.empty()) {
        mean.tpr_at_fpr = results.front().tpr_at_fpr;
        for (auto& [target, tpr] : mean.tpr_at_fpr) tpr = 0.0;
        for (const auto& r : results) {
            for (std::size_t i = 0; i < r.tpr_at_fpr.size(); ++i) {
                mean.tpr_at_fpr[i].second += r.tpr_at_fpr[i].second;
            }
        }
        for (auto& [target, tpr] : mean.tpr_at_fpr) {
            tpr /= static_cast<double>(results.size());
        }
    }
    return mean;
}

} // namespace adlab
