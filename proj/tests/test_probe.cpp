#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "adlab/metrics.hpp"
#include "adlab/probe.hpp"
#include "support.hpp"

using namespace adlab;

namespace {

// Separable 1-D fixture: 50 negatives at -1, 50 positives at +1.
std::pair<RowMatrix, std::vector<int>> separable_fixture() {
    RowMatrix x(100, 1);
    std::vector<int> y(100);
    for (int i = 0; i < 100; ++i) {
        y[i] = i >= 50;
        x.at(i, 0) = y[i] ? 1.0 : -1.0;
    }
    return {x, y};
}

std::pair<RowMatrix, std::vector<int>> random_instance(RandomStream& rs, std::size_t n,
                                                       std::size_t dim) {
    auto x = testsupport::random_matrix(rs, n, dim);
    std::vector<int> y(n);
    bool has0 = false, has1 = false;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = rs.next_uniform() < 0.5;
        (y[i] ? has1 : has0) = true;
    }
    if (!has0) y[0] = 0;
    if (!has1) y[n - 1] = 1;
    return {x, y};
}

} // namespace

TEST_CASE("analytic gradient matches central finite differences") {
    RandomStream rs(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rs.next_uniform() * 12);
        const std::size_t dim = 1 + static_cast<std::size_t>(rs.next_uniform() * 4);
        auto [x, y] = random_instance(rs, n, dim);
        TrainedProbe probe;
        probe.weights.resize(dim);
        for (auto& w : probe.weights) w = rs.next_normal();
        probe.bias = rs.next_normal();

        const auto grad = probe_gradient(probe, x, y);
        const double h = 1e-5;
        for (std::size_t j = 0; j <= dim; ++j) {
            TrainedProbe plus = probe, minus = probe;
            if (j < dim) {
                plus.weights[j] += h;
                minus.weights[j] -= h;
            } else {
                plus.bias += h;
                minus.bias -= h;
            }
            const double fd = (probe_loss(plus, x, y) - probe_loss(minus, x, y)) / (2 * h);
            const double scale = std::max({std::abs(fd), std::abs(grad[j]), 1e-8});
            CHECK(std::abs(grad[j] - fd) / scale < 1e-5);
        }
    }
}

TEST_CASE("separable 1-D data trains to perfect accuracy at threshold zero") {
    auto [x, y] = separable_fixture();
    const auto probe = probe_train(x, y, {}, RandomStream(1));
    const auto scores = probe_score(probe, x);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        CHECK((scores[i] > 0.0) == (y[i] == 1));
    }
    CHECK(probe.loss_trace.size() == 100);
}

TEST_CASE("label flip negates the score ordering exactly") {
    RandomStream rs(5);
    auto [x, y] = random_instance(rs, 60, 3);
    std::vector<int> flipped(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) flipped[i] = 1 - y[i];

    const auto probe_a = probe_train(x, y, {}, RandomStream(2));
    const auto probe_b = probe_train(x, flipped, {}, RandomStream(2));
    const double auc_a = roc_auc({probe_score(probe_a, x), y});
    const double auc_b = roc_auc({probe_score(probe_b, x), y});
    CHECK(std::abs(auc_a + auc_b - 1.0) < 1e-9);
}

TEST_CASE("full-batch loss trace is nonincreasing at the default rate") {
    RandomStream rs(7);
    // standardized inputs: random normals are already zero-mean unit-variance
    auto [x, y] = random_instance(rs, 80, 4);
    for (std::size_t i = 0; i < y.size(); ++i) {
        x.at(i, 0) += y[i] ? 0.8 : -0.8;  // learnable signal
    }
    ProbeConfig config;
    config.epochs = 200;
    const auto probe = probe_train(x, y, config, RandomStream(3));
    REQUIRE(probe.loss_trace.size() == 200);
    for (std::size_t e = 1; e < probe.loss_trace.size(); ++e) {
        CHECK(probe.loss_trace[e] <= probe.loss_trace[e - 1] + 1e-12);
    }
}

TEST_CASE("zero probe scores everything identically") {
    TrainedProbe probe;
    probe.weights = {0.0, 0.0};
    probe.bias = 0.0;
    RandomStream rs(9);
    const auto queries = testsupport::random_matrix(rs, 10, 2);
    const auto scores = probe_score(probe, queries);
    for (double s : scores) CHECK(s == 0.0);
    std::vector<int> labels(10, 0);
    labels[0] = labels[3] = 1;
    CHECK(roc_auc({scores, labels}) == doctest::Approx(0.5));
}

TEST_CASE("positive weight scaling preserves the AUC") {
    RandomStream rs(11);
    auto [x, y] = random_instance(rs, 50, 3);
    auto probe = probe_train(x, y, {}, RandomStream(4));
    const double base = roc_auc({probe_score(probe, x), y});
    for (auto& w : probe.weights) w *= 7.5;
    probe.bias *= 7.5;
    CHECK(roc_auc({probe_score(probe, x), y}) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("minibatch mode is deterministic given the stream and still learns") {
    auto [x, y] = separable_fixture();
    ProbeConfig config;
    config.batch_mode = BatchMode::minibatch;
    config.batch_size = 16;
    config.epochs = 50;
    const auto a = probe_train(x, y, config, RandomStream(5, 1));
    const auto b = probe_train(x, y, config, RandomStream(5, 1));
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
    CHECK(a.loss_trace.back() < a.loss_trace.front());
}

TEST_CASE("training rejects bad inputs") {
    auto [x, y] = separable_fixture();
    std::vector<int> ones(y.size(), 1);
    CHECK_THROWS_AS(probe_train(x, ones, {}, RandomStream(6)), std::invalid_argument);

    std::vector<int> bad = y;
    bad[0] = 2;
    CHECK_THROWS_AS(probe_train(x, bad, {}, RandomStream(6)), std::invalid_argument);

    auto poisoned = x;
    poisoned.at(0, 0) = INFINITY;
    CHECK_THROWS_AS(probe_train(poisoned, y, {}, RandomStream(6)), std::invalid_argument);

    ProbeConfig config;
    config.learning_rate = 0.0;
    CHECK_THROWS_AS(probe_train(x, y, config, RandomStream(6)), std::invalid_argument);
    config = {};
    config.momentum = 1.0;
    CHECK_THROWS_AS(probe_train(x, y, config, RandomStream(6)), std::invalid_argument);
}

TEST_CASE("probe_score rejects dimension mismatch") {
    TrainedProbe probe;
    probe.weights = {1.0, 2.0};
    RandomStream rs(13);
    const auto queries = testsupport::random_matrix(rs, 4, 3);
    CHECK_THROWS_AS(probe_score(probe, queries), std::invalid_argument);
}
