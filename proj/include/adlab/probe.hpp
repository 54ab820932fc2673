#pragma once

#include <vector>

#include "adlab/matrix.hpp"
#include "adlab/random.hpp"

namespace adlab {

enum class BatchMode { full_batch, minibatch };

struct ProbeConfig {
    int epochs = 100;
    double learning_rate = 0.01;
    double momentum = 0.9;
    BatchMode batch_mode = BatchMode::full_batch;
    int batch_size = 128;  // minibatch mode only
};

/// Logistic model trained as a supervised probe; the raw logit is the
/// anomaly score.
struct TrainedProbe {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> loss_trace;  // full-dataset BCE at the start of each epoch
};

/// Mean binary cross-entropy of the probe on (features, labels).
double probe_loss(const TrainedProbe& probe, const RowMatrix& features,
                  const std::vector<int>& labels);

/// Analytic BCE gradient at the probe's parameters; returns d+1 values,
/// weights first, bias last. Exposed so it can be checked against finite
/// differences.
std::vector<double> probe_gradient(const TrainedProbe& probe, const RowMatrix& features,
                                   const std::vector<int>& labels);

/// Train a logistic probe with SGD + momentum (v <- m v - lr g; theta <- theta + v)
/// for exactly config.epochs passes. Parameters start at zero, so training is
/// deterministic; the stream is consumed only for minibatch shuffling.
/// Throws std::invalid_argument when labels contain a single class.
TrainedProbe probe_train(const RowMatrix& features, const std::vector<int>& labels,
                         const ProbeConfig& config, RandomStream stream);

/// Raw logits w . x + b per query row.
std::vector<double> probe_score(const TrainedProbe& probe, const RowMatrix& queries);

} // namespace adlab
