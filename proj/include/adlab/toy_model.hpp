#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adlab/matrix.hpp"
#include "adlab/random.hpp"

namespace adlab {

/// Population for the Gaussian mixture model: normal mass N(0, I_d), anomalous
/// mass N(delta * e1, I_d) with proportion pi.
struct ToyModelParams {
    int d = 1;            // ambient dimension
    double delta = 0.0;   // mean shift along the first axis
    double pi = 0.5;      // anomaly proportion of the mixture
    std::uint64_t seed = 0;
};

/// Sensitivity parameter y of the threshold family t_d(y).
struct ThresholdSpec {
    double y = 0.0;
};

/// Labeled feature matrix; label 1 marks the anomalous mixture component.
struct SampleSet {
    RowMatrix features;
    std::vector<int> labels;
};

enum class RateMethod { exact, clt, monte_carlo, asymptotic_bound };

std::string to_string(RateMethod m);
RateMethod rate_method_from_string(const std::string& s);

/// One (d, y, delta) operating point with its TPR/FPR under some method.
struct RatePoint {
    int d = 1;
    double y = 0.0;
    double delta = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
    double gap = 0.0;  // tpr - fpr
    RateMethod method = RateMethod::exact;
    double fpr_se = 0.0;      // binomial standard errors (monte_carlo only)
    double tpr_se = 0.0;
    std::string warning;      // empty when none
};

using RateCurve = std::vector<RatePoint>;

/// Draw n labeled points from the mixture.
SampleSet sample_population(const ToyModelParams& params, std::size_t n,
                            RandomStream stream);

/// log of the likelihood score: -||x||^2 / 2 - (d/2) log(2 pi).
double log_likelihood_score(std::span<const double> x);

/// log of the threshold t_d(y): -(y sqrt(2d) + d) / 2 - (d/2) log(2 pi).
double log_threshold(int d, const ThresholdSpec& spec);

/// Squared-norm cut implied by t_d(y): a point is flagged anomalous exactly
/// when ||x||^2 exceeds this value.
double norm_sq_threshold(int d, const ThresholdSpec& spec);

/// FPR of the thresholded detector: chi^2_d survival at the cut.
/// A non-positive cut means everything is flagged, so the rate is 1.
double fpr_exact(int d, const ThresholdSpec& spec);

/// Dimension-free CLT limit of the FPR: 1 - Phi(y).
double fpr_clt(const ThresholdSpec& spec);

/// TPR of the thresholded detector: noncentral chi^2_d(delta^2) survival at
/// the cut.
double tpr_exact(int d, const ThresholdSpec& spec, double delta);

/// Normal approximation of the TPR using ||x||^2 ~ N(d + delta^2,
/// 4 delta^2 + 2d). Meaningful for d >= 8; smaller d sets a warning when
/// surfaced through decay_curve.
double tpr_clt(int d, const ThresholdSpec& spec, double delta);

/// Leading-order upper bound on TPR - FPR: delta^2 e^{-y^2/2} / sqrt(4 pi d).
double gap_asymptotic(int d, const ThresholdSpec& spec, double delta);

/// Monte Carlo rates: sample n points, classify by log-score against
/// log-threshold, and report label-conditional rates with binomial standard
/// errors. Work is partitioned across substreams in fixed-size blocks, so the
/// result does not depend on the degree of parallelism.
/// Throws std::runtime_error when a label class is absent from the sample.
RatePoint empirical_rates(const ToyModelParams& params, const ThresholdSpec& spec,
                          std::size_t n, RandomStream stream);

/// One RatePoint per dimension using the requested method.
/// Valid methods: exact, clt, asymptotic_bound.
RateCurve decay_curve(const std::vector<int>& dims, const ThresholdSpec& spec,
                      double delta, RateMethod method);

/// OLS slope of log(gap) against log(d). Points with non-positive gaps are
/// excluded; fewer than 3 survivors throws std::runtime_error.
double fit_decay_exponent(const RateCurve& curve);

} // namespace adlab
