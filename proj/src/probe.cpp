#include "adlab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace adlab {
namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// BCE of a single logit: softplus(z) - y z, in overflow-safe form.
double bce_term(double z, int y) {
    const double softplus = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    return softplus - y * z;
}

void check_inputs(const RowMatrix& features, const std::vector<int>& labels) {
    if (features.rows != labels.size()) {
        throw std::invalid_argument("probe: feature/label row counts differ");
    }
    if (features.rows == 0) throw std::invalid_argument("probe: empty training set");
    for (double v : features.data) {
        if (!std::isfinite(v)) throw std::invalid_argument("probe: non-finite feature");
    }
    bool has0 = false, has1 = false;
    for (int y : labels) {
        if (y == 0) has0 = true;
        else if (y == 1) has1 = true;
        else throw std::invalid_argument("probe: labels must be 0 or 1");
    }
    if (!has0 || !has1) {
        throw std::invalid_argument("probe: both label classes must be present");
    }
}

// Accumulate grad over rows [lo, hi); returns summed (not averaged) values.
void accumulate_gradient(const RowMatrix& X, const std::vector<int>& y,
                         const std::vector<double>& w, double b,
                         const std::vector<std::size_t>& rows,
                         std::vector<double>& gw, double& gb) {
    for (std::size_t r : rows) {
        const auto x = X.row(r);
        double z = b;
        for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
        const double resid = sigmoid(z) - y[r];
        for (std::size_t j = 0; j < x.size(); ++j) gw[j] += resid * x[j];
        gb += resid;
    }
}

} // namespace

double probe_loss(const TrainedProbe& probe, const RowMatrix& features,
                  const std::vector<int>& labels) {
    double total = 0.0;
    for (std::size_t r = 0; r < features.rows; ++r) {
        const auto x = features.row(r);
        double z = probe.bias;
        for (std::size_t j = 0; j < x.size(); ++j) z += probe.weights[j] * x[j];
        total += bce_term(z, labels[r]);
    }
    return total / static_cast<double>(features.rows);
}

std::vector<double> probe_gradient(const TrainedProbe& probe, const RowMatrix& features,
                                   const std::vector<int>& labels) {
    std::vector<std::size_t> rows(features.rows);
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<double> gw(features.cols, 0.0);
    double gb = 0.0;
    accumulate_gradient(features, labels, probe.weights, probe.bias, rows, gw, gb);
    const double inv_n = 1.0 / static_cast<double>(features.rows);
    std::vector<double> grad(features.cols + 1);
    for (std::size_t j = 0; j < features.cols; ++j) grad[j] = gw[j] * inv_n;
    grad[features.cols] = gb * inv_n;
    return grad;
}

TrainedProbe probe_train(const RowMatrix& features, const std::vector<int>& labels,
                         const ProbeConfig& config, RandomStream stream) {
    check_inputs(features, labels);
    if (config.epochs < 1) throw std::invalid_argument("probe: epochs must be >= 1");
    if (!(config.learning_rate > 0.0)) {
        throw std::invalid_argument("probe: learning rate must be positive");
    }
    if (!(config.momentum >= 0.0 && config.momentum < 1.0)) {
        throw std::invalid_argument("probe: momentum must lie in [0, 1)");
    }
    if (config.batch_mode == BatchMode::minibatch && config.batch_size < 1) {
        throw std::invalid_argument("probe: batch size must be >= 1");
    }

    const std::size_t n = features.rows;
    const std::size_t d = features.cols;
    TrainedProbe probe;
    probe.weights.assign(d, 0.0);
    probe.loss_trace.reserve(config.epochs);

    std::vector<double> vw(d, 0.0);
    double vb = 0.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> gw(d);
    std::vector<std::size_t> batch;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        probe.loss_trace.push_back(probe_loss(probe, features, labels));

        if (config.batch_mode == BatchMode::full_batch) {
            std::fill(gw.begin(), gw.end(), 0.0);
            double gb = 0.0;
            accumulate_gradient(features, labels, probe.weights, probe.bias, order, gw, gb);
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t j = 0; j < d; ++j) {
                vw[j] = config.momentum * vw[j] - config.learning_rate * gw[j] * inv_n;
                probe.weights[j] += vw[j];
            }
            vb = config.momentum * vb - config.learning_rate * gb * inv_n;
            probe.bias += vb;
        } else {
            // Fisher-Yates shuffle from the stream
            for (std::size_t i = n - 1; i > 0; --i) {
                const std::size_t j =
                    static_cast<std::size_t>(stream.next_uniform() * (i + 1));
                std::swap(order[i], order[std::min(j, i)]);
            }
            const std::size_t bs = static_cast<std::size_t>(config.batch_size);
            for (std::size_t start = 0; start < n; start += bs) {
                const std::size_t stop = std::min(n, start + bs);
                batch.assign(order.begin() + start, order.begin() + stop);
                std::fill(gw.begin(), gw.end(), 0.0);
                double gb = 0.0;
                accumulate_gradient(features, labels, probe.weights, probe.bias, batch,
                                    gw, gb);
                const double inv_b = 1.0 / static_cast<double>(batch.size());
                for (std::size_t j = 0; j < d; ++j) {
                    vw[j] = config.momentum * vw[j] - config.learning_rate * gw[j] * inv_b;
                    probe.weights[j] += vw[j];
                }
                vb = config.momentum * vb - config.learning_rate * gb * inv_b;
                probe.bias += vb;
            }
        }
    }
    return probe;
}

std::vector<double> probe_score(const TrainedProbe& probe, const RowMatrix& queries) {
    if (queries.cols != probe.weights.size()) {
        throw std::invalid_argument("probe_score: query dimension mismatch");
    }
    std::vector<double> logits(queries.rows);
    for (std::size_t r = 0; r < queries.rows; ++r) {
        const auto x = queries.row(r);
        double z = probe.bias;
        for (std::size_t j = 0; j < x.size(); ++j) z += probe.weights[j] * x[j];
        logits[r] = z;
    }
    return logits;
}

} // namespace adlab
