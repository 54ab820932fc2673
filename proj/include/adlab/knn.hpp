#pragma once

#include <vector>

#include "adlab/matrix.hpp"

namespace adlab {

enum class KnnAggregation { mean_of_k, kth_distance };

struct KnnConfig {
    int k = 10;
    KnnAggregation aggregation = KnnAggregation::mean_of_k;
};

/// Exact brute-force nearest-neighbor index. Immutable after fit; safe to
/// share across threads.
class KnnIndex {
public:
    const RowMatrix& train() const { return train_; }
    std::size_t size() const { return train_.rows; }
    std::size_t dim() const { return train_.cols; }

private:
    friend KnnIndex knn_fit(const RowMatrix&, const KnnConfig&);
    RowMatrix train_;
};

/// Build an exact index over the training rows.
/// Throws std::invalid_argument when k exceeds the training size or the
/// matrix contains non-finite entries.
KnnIndex knn_fit(const RowMatrix& train, const KnnConfig& config);

/// Anomaly score per query: Euclidean distances to the k nearest training
/// rows, aggregated per config. Higher score = more anomalous. Distance ties
/// break by lowest training-row index. Queries are scored independently.
std::vector<double> knn_score(const KnnIndex& index, const RowMatrix& queries,
                              const KnnConfig& config);

} // namespace adlab
