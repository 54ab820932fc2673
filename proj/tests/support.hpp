// Test-only oracles, independent of the library implementation paths they
// check: quadrature over densities, Monte Carlo samplers, brute-force
// pairwise metrics.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adlab/matrix.hpp"
#include "adlab/random.hpp"

namespace testsupport {

// Composite Simpson rule on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

// chi-squared density with dof degrees of freedom.
inline double chi2_pdf(int dof, double x) {
    const double a = 0.5 * dof;
    return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) -
                    std::lgamma(a));
}

// Survival of chi^2_dof by direct quadrature of the density on [t, cutoff].
inline double chi2_survival_quadrature(int dof, double t) {
    const double cutoff = std::max(t * 4.0 + 200.0, 400.0);
    return simpson([dof](double x) { return chi2_pdf(dof, x); }, t, cutoff, 200000);
}

// Gamma(shape >= 1, scale 2) draw by Marsaglia-Tsang squeeze.
inline double draw_gamma_shape_ge1(adlab::RandomStream& rs, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rs.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rs.next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

// One draw of ||x + delta e1||^2 with x ~ N(0, I_dof): a shifted normal
// square plus an independent central chi^2_{dof-1}. Requires dof >= 3.
inline double draw_noncentral_chi2(adlab::RandomStream& rs, int dof, double delta) {
    const double z = rs.next_normal() + delta;
    const double central = 2.0 * draw_gamma_shape_ge1(rs, 0.5 * (dof - 1));
    return z * z + central;
}

struct McEstimate {
    double value = 0.0;
    double se = 0.0;
};

// Monte Carlo estimate of Pr(||x + delta e1||^2 > t) over n draws.
inline McEstimate noncentral_survival_mc(std::uint64_t seed, int dof, double delta,
                                         double t, std::size_t n) {
    adlab::RandomStream rs(seed, 777);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (draw_noncentral_chi2(rs, dof, delta) > t) ++hits;
    }
    McEstimate est;
    est.value = static_cast<double>(hits) / static_cast<double>(n);
    est.se = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n));
    return est;
}

// O(n^2) ROC-AUC by explicit pair counting, ties worth 1/2.
inline double auc_pair_count(const std::vector<double>& scores,
                             const std::vector<int>& labels) {
    double credit = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) credit += 1.0;
            else if (scores[i] == scores[j]) credit += 0.5;
        }
    }
    return credit / static_cast<double>(pairs);
}

// TPR at FPR <= target by enumerating thresholds at every score value.
inline double tpr_at_fpr_bruteforce(const std::vector<double>& scores,
                                    const std::vector<int>& labels,
                                    double target_fpr) {
    long n0 = 0, n1 = 0;
    for (int y : labels) (y == 1 ? n1 : n0)++;
    double best = 0.0;
    for (double threshold : scores) {
        long fp = 0, tp = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= threshold) (labels[i] == 1 ? tp : fp)++;
        }
        const double fpr = static_cast<double>(fp) / n0;
        const double tpr = static_cast<double>(tp) / n1;
        if (fpr <= target_fpr) best = std::max(best, tpr);
    }
    return best;
}

// kNN scores by exhaustively sorting every pairwise distance.
inline std::vector<double> knn_scores_bruteforce(const adlab::RowMatrix& train,
                                                 const adlab::RowMatrix& queries,
                                                 int k, bool kth_only) {
    std::vector<double> out;
    for (std::size_t q = 0; q < queries.rows; ++q) {
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t r = 0; r < train.rows; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < train.cols; ++c) {
                const double diff = queries.at(q, c) - train.at(r, c);
                s += diff * diff;
            }
            dist.emplace_back(std::sqrt(s), r);
        }
        std::sort(dist.begin(), dist.end());
        if (kth_only) {
            out.push_back(dist[k - 1].first);
        } else {
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += dist[i].first;
            out.push_back(sum / k);
        }
    }
    return out;
}

// Uniformly random matrix for property-style tests.
inline adlab::RowMatrix random_matrix(adlab::RandomStream& rs, std::size_t rows,
                                      std::size_t cols, double scale = 1.0) {
    adlab::RowMatrix m(rows, cols);
    for (auto& v : m.data) v = scale * rs.next_normal();
    return m;
}

} // namespace testsupport
