#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adlab/dataset.hpp"
#include "adlab/knn.hpp"
#include "adlab/matrix.hpp"
#include "adlab/metrics.hpp"
#include "adlab/probe.hpp"
#include "adlab/random.hpp"
#include "adlab/toy_model.hpp"

namespace adlab {

/// single_value: the designated attribute value is normal, the rest anomalous.
/// multi_value: the designated attribute value is anomalous, the rest normal.
enum class ProtocolSetting { single_value, multi_value };

std::string to_string(ProtocolSetting s);
ProtocolSetting protocol_setting_from_string(const std::string& s);

struct ProtocolConfig {
    ProtocolSetting setting = ProtocolSetting::single_value;
    /// Attribute column the designation applies to. Empty means the dataset's
    /// own binary label column is the anomaly ground truth.
    std::string attribute;
    std::string designated_value;
    double split_ratio = 0.85;
    std::uint64_t seed = 0;
    bool standardize = true;
};

/// Features with protocol anomaly labels (0 normal, 1 anomalous).
struct LabeledView {
    RowMatrix features;
    std::vector<int> labels;
};

/// Result of the seeded 85:15 split. `train` keeps only normal rows (the
/// unguided detectors never see anomalies); `probe_train` is the same
/// partition before anomaly filtering; `test` keeps both classes.
struct ProtocolSplit {
    LabeledView train;
    LabeledView probe_train;
    LabeledView test;
};

struct SweepResult {
    std::vector<std::string> ranked_features;
    std::vector<double> knn_auc;    // knn_auc[i] uses the first i+1 ranked features
    std::vector<double> probe_auc;
};

/// One flat result row; the CSV/JSONL schema the CLI emits.
struct ResultRecord {
    std::string experiment_id;
    std::string dataset_digest;
    std::string setting;
    std::string attribute;
    std::string value;
    std::string scorer;
    int d = 0;
    double auc = 0.0;
    long n_normal = 0;
    long n_anomalous = 0;
    std::uint64_t seed = 0;
};

/// Anomaly labels induced by the protocol designation (or the dataset label
/// when config.attribute is empty). Throws std::runtime_error when the
/// designation leaves a class empty.
std::vector<int> derive_protocol_labels(const TabularDataset& dataset,
                                        const ProtocolConfig& config);

/// Seeded shuffle and ratio split; see ProtocolSplit for the three views.
/// Throws std::runtime_error when the train partition has no normal rows.
ProtocolSplit split_train_test(const TabularDataset& dataset,
                               const ProtocolConfig& config);

/// Z-score transform with statistics from a training matrix only.
/// Zero-variance features map to constant zero.
class Standardizer {
public:
    static Standardizer fit(const RowMatrix& train);
    RowMatrix apply(const RowMatrix& m) const;

private:
    std::vector<double> mean_;
    std::vector<double> inv_std_;
};

/// Features ordered by descending single-feature kNN ROC-AUC on the
/// protocol's test split (default KnnConfig); ties keep column order.
std::vector<std::string> rank_features(const TabularDataset& dataset,
                                       const ProtocolConfig& config);

/// For every prefix of the relevancy ranking, fit kNN on normal-only train
/// rows and the probe on the anomaly-augmented train rows, and record test
/// AUC for both.
SweepResult dimensionality_sweep(const TabularDataset& dataset,
                                 const ProtocolConfig& config, const KnnConfig& knn,
                                 const ProbeConfig& probe);

/// Full protocol run at the complete feature set; kNN and probe are scored on
/// the identical test split. Returns (knn, probe) results.
std::pair<EvalResult, EvalResult> run_protocol(const TabularDataset& dataset,
                                               const ProtocolConfig& config,
                                               const KnnConfig& knn,
                                               const ProbeConfig& probe);

/// run_protocol's kNN arm with the representation restricted to
/// guidance_features. Guidance equal to the full feature set reproduces the
/// unguided run exactly.
EvalResult guided_run(const TabularDataset& dataset, const ProtocolConfig& config,
                      const std::vector<std::string>& guidance_features,
                      const KnnConfig& knn);

struct BridgePoint {
    int d = 0;
    double knn_auc = 0.0;
    double probe_auc = 0.0;
};

/// Mixture-model data scored by the practical detectors: per dimension,
/// fit kNN on a normal-only train sample and the probe on a separate labeled
/// sample, then evaluate both on a mixed test sample.
/// All grid entries must share delta and pi.
std::vector<BridgePoint> toy_detector_bridge(const std::vector<ToyModelParams>& grid,
                                             std::size_t n_train, std::size_t n_test,
                                             const KnnConfig& knn,
                                             const ProbeConfig& probe,
                                             RandomStream stream);

/// Synthetic fixture: a categorical attribute with three values {a, b, c}
/// drives the mean of one informative feature ("signal"); `noise_dims`
/// additional features are pure noise. The label column marks rows whose
/// attribute differs from "a". Returned as CSV text so it round-trips
/// through the regular loader.
std::string make_overexpressive_fixture_csv(std::uint64_t seed, std::size_t n,
                                            std::size_t noise_dims);

/// Mixture-model data as CSV: feature "x01" carries the delta shift for
/// anomalous rows, the rest are noise; label marks the mixture component.
std::string make_toy_tabular_csv(int d, double delta, double pi, std::size_t n,
                                 std::uint64_t seed);

} // namespace adlab
