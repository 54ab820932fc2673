#include "adlab/knn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace adlab {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

} // namespace

KnnIndex knn_fit(const RowMatrix& train, const KnnConfig& config) {
    if (config.k < 1) throw std::invalid_argument("knn_fit: k must be >= 1");
    if (static_cast<std::size_t>(config.k) > train.rows) {
        throw std::invalid_argument("knn_fit: k exceeds training-set size");
    }
    for (double v : train.data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("knn_fit: non-finite training entry");
        }
    }
    KnnIndex index;
    index.train_ = train;
    return index;
}

std::vector<double> knn_score(const KnnIndex& index, const RowMatrix& queries,
                              const KnnConfig& config) {
    if (queries.cols != index.dim()) {
        throw std::invalid_argument("knn_score: query dimension mismatch");
    }
    if (config.k < 1 || static_cast<std::size_t>(config.k) > index.size()) {
        throw std::invalid_argument("knn_score: k exceeds training-set size");
    }

    const std::size_t k = static_cast<std::size_t>(config.k);
    const std::size_t n_train = index.size();
    const RowMatrix& train = index.train();
    std::vector<double> scores(queries.rows);

    const auto score_one = [&](std::size_t q, std::vector<std::pair<double, std::size_t>>& dist) {
        dist.clear();
        const auto query = queries.row(q);
        for (std::size_t r = 0; r < n_train; ++r) {
            dist.emplace_back(squared_distance(query, train.row(r)), r);
        }
        // pair ordering makes the index the tie-break
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        if (config.aggregation == KnnAggregation::kth_distance) {
            scores[q] = std::sqrt(dist[k - 1].first);
        } else {
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) sum += std::sqrt(dist[i].first);
            scores[q] = sum / static_cast<double>(k);
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 1 && queries.rows > 64) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned n_threads = std::min<std::size_t>(hw, queries.rows);
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                std::vector<std::pair<double, std::size_t>> dist;
                dist.reserve(n_train);
                for (std::size_t q = next++; q < queries.rows; q = next++) {
                    score_one(q, dist);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(n_train);
        for (std::size_t q = 0; q < queries.rows; ++q) score_one(q, dist);
    }
    return scores;
}

} // namespace adlab
