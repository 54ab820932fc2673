#include "adlab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace adlab {
namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    RandomStream rs(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rs.next_uniform() * (i + 1));
        std::swap(idx[i], idx[std::min(j, i)]);
    }
    return idx;
}

LabeledView take_rows(const TabularDataset& ds, const std::vector<int>& labels,
                      const std::vector<std::size_t>& rows) {
    LabeledView view;
    view.features = ds.features.select_rows(rows);
    view.labels.reserve(rows.size());
    for (std::size_t r : rows) view.labels.push_back(labels[r]);
    return view;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string scorer_digest(const TabularDataset& ds, const ProtocolConfig& config,
                          const std::string& scorer, std::size_t d) {
    std::ostringstream key;
    key << "ds=" << ds.source_digest << ";setting=" << to_string(config.setting)
        << ";attr=" << config.attribute << ";value=" << config.designated_value
        << ";ratio=" << fmt_double(config.split_ratio) << ";seed=" << config.seed
        << ";std=" << (config.standardize ? 1 : 0) << ";scorer=" << scorer
        << ";d=" << d;
    return fnv1a_digest(key.str());
}

double knn_arm_auc(const LabeledView& train, const LabeledView& test,
                   const KnnConfig& knn, bool standardize) {
    RowMatrix train_f = train.features;
    RowMatrix test_f = test.features;
    if (standardize) {
        const auto std_ = Standardizer::fit(train_f);
        train_f = std_.apply(train_f);
        test_f = std_.apply(test_f);
    }
    const KnnIndex index = knn_fit(train_f, knn);
    return roc_auc({knn_score(index, test_f, knn), test.labels});
}

double probe_arm_auc(const LabeledView& ptrain, const LabeledView& test,
                     const ProbeConfig& config, bool standardize, RandomStream stream) {
    RowMatrix train_f = ptrain.features;
    RowMatrix test_f = test.features;
    if (standardize) {
        const auto std_ = Standardizer::fit(train_f);
        train_f = std_.apply(train_f);
        test_f = std_.apply(test_f);
    }
    const TrainedProbe trained = probe_train(train_f, ptrain.labels, config, stream);
    return roc_auc({probe_score(trained, test_f), test.labels});
}

} // namespace

std::string to_string(ProtocolSetting s) {
    return s == ProtocolSetting::single_value ? "single_value" : "multi_value";
}

ProtocolSetting protocol_setting_from_string(const std::string& s) {
    if (s == "single_value" || s == "single") return ProtocolSetting::single_value;
    if (s == "multi_value" || s == "multi") return ProtocolSetting::multi_value;
    throw std::invalid_argument("unknown protocol setting: " + s);
}

std::vector<int> derive_protocol_labels(const TabularDataset& dataset,
                                        const ProtocolConfig& config) {
    std::vector<int> labels;
    if (config.attribute.empty()) {
        labels = dataset.label;
    } else {
        const auto& values = dataset.attribute(config.attribute);
        labels.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const bool match = values[i] == config.designated_value;
            const bool anomalous =
                config.setting == ProtocolSetting::single_value ? !match : match;
            labels[i] = anomalous ? 1 : 0;
        }
    }
    long n0 = 0, n1 = 0;
    for (int y : labels) (y == 1 ? n1 : n0)++;
    if (n0 == 0 || n1 == 0) {
        throw std::runtime_error("protocol error: designation '" +
                                 config.designated_value +
                                 "' leaves a class empty");
    }
    return labels;
}

ProtocolSplit split_train_test(const TabularDataset& dataset,
                               const ProtocolConfig& config) {
    if (dataset.rows() == 0) throw std::invalid_argument("split: empty dataset");
    if (!(config.split_ratio > 0.0 && config.split_ratio < 1.0)) {
        throw std::invalid_argument("split: ratio must lie in (0, 1)");
    }
    const auto labels = derive_protocol_labels(dataset, config);
    const auto order = shuffled_indices(dataset.rows(), config.seed);
    const auto n_train =
        static_cast<std::size_t>(config.split_ratio * static_cast<double>(dataset.rows()));

    std::vector<std::size_t> train_rows(order.begin(), order.begin() + n_train);
    std::vector<std::size_t> test_rows(order.begin() + n_train, order.end());
    std::vector<std::size_t> normal_train_rows;
    for (std::size_t r : train_rows) {
        if (labels[r] == 0) normal_train_rows.push_back(r);
    }
    if (normal_train_rows.empty()) {
        throw std::runtime_error("protocol error: no normal rows in the train split");
    }

    ProtocolSplit split;
    split.train = take_rows(dataset, labels, normal_train_rows);
    split.probe_train = take_rows(dataset, labels, train_rows);
    split.test = take_rows(dataset, labels, test_rows);
    return split;
}

Standardizer Standardizer::fit(const RowMatrix& train) {
    if (train.rows == 0) throw std::invalid_argument("standardizer: empty train matrix");
    Standardizer s;
    s.mean_.assign(train.cols, 0.0);
    s.inv_std_.assign(train.cols, 0.0);
    for (std::size_t r = 0; r < train.rows; ++r) {
        const auto row = train.row(r);
        for (std::size_t c = 0; c < train.cols; ++c) s.mean_[c] += row[c];
    }
    for (auto& m : s.mean_) m /= static_cast<double>(train.rows);
    std::vector<double> var(train.cols, 0.0);
    for (std::size_t r = 0; r < train.rows; ++r) {
        const auto row = train.row(r);
        for (std::size_t c = 0; c < train.cols; ++c) {
            const double dev = row[c] - s.mean_[c];
            var[c] += dev * dev;
        }
    }
    for (std::size_t c = 0; c < train.cols; ++c) {
        var[c] /= static_cast<double>(train.rows);
        s.inv_std_[c] = var[c] > 0.0 ? 1.0 / std::sqrt(var[c]) : 0.0;
    }
    return s;
}

RowMatrix Standardizer::apply(const RowMatrix& m) const {
    if (m.cols != mean_.size()) {
        throw std::invalid_argument("standardizer: dimension mismatch");
    }
    RowMatrix out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto src = m.row(r);
        auto dst = out.row(r);
        for (std::size_t c = 0; c < m.cols; ++c) {
            dst[c] = (src[c] - mean_[c]) * inv_std_[c];
        }
    }
    return out;
}

std::vector<std::string> rank_features(const TabularDataset& dataset,
                                       const ProtocolConfig& config) {
    if (dataset.feature_names.empty()) {
        throw std::invalid_argument("rank_features: dataset has no features");
    }
    const auto split = split_train_test(dataset, config);
    const KnnConfig knn;  // ranking always uses the default detector

    std::vector<std::pair<double, std::size_t>> ranked;  // (-auc, column)
    for (std::size_t j = 0; j < dataset.feature_names.size(); ++j) {
        const std::vector<std::size_t> col{j};
        LabeledView train{split.train.features.select_columns(col), split.train.labels};
        LabeledView test{split.test.features.select_columns(col), split.test.labels};
        const double auc = knn_arm_auc(train, test, knn, config.standardize);
        ranked.emplace_back(-auc, j);
    }
    std::stable_sort(ranked.begin(), ranked.end());
    std::vector<std::string> names;
    names.reserve(ranked.size());
    for (const auto& [neg_auc, j] : ranked) names.push_back(dataset.feature_names[j]);
    return names;
}

SweepResult dimensionality_sweep(const TabularDataset& dataset,
                                 const ProtocolConfig& config, const KnnConfig& knn,
                                 const ProbeConfig& probe) {
    SweepResult result;
    result.ranked_features = rank_features(dataset, config);
    const auto split = split_train_test(dataset, config);

    std::vector<std::size_t> prefix;
    for (std::size_t d = 0; d < result.ranked_features.size(); ++d) {
        prefix.push_back(dataset.feature_index(result.ranked_features[d]));
        LabeledView train{split.train.features.select_columns(prefix), split.train.labels};
        LabeledView ptrain{split.probe_train.features.select_columns(prefix),
                           split.probe_train.labels};
        LabeledView test{split.test.features.select_columns(prefix), split.test.labels};
        result.knn_auc.push_back(knn_arm_auc(train, test, knn, config.standardize));
        result.probe_auc.push_back(probe_arm_auc(
            ptrain, test, probe, config.standardize,
            RandomStream(config.seed).substream(d + 1)));
    }
    return result;
}

std::pair<EvalResult, EvalResult> run_protocol(const TabularDataset& dataset,
                                               const ProtocolConfig& config,
                                               const KnnConfig& knn,
                                               const ProbeConfig& probe) {
    if (config.setting == ProtocolSetting::multi_value && !config.attribute.empty()) {
        const auto& values = dataset.attribute(config.attribute);
        const auto count = std::count(values.begin(), values.end(),
                                      config.designated_value);
        if (count < 2L * knn.k) {
            std::ostringstream msg;
            msg << "protocol error: attribute value '" << config.designated_value
                << "' has " << count << " rows, fewer than 2k=" << 2 * knn.k;
            throw std::invalid_argument(msg.str());
        }
    }

    const auto split = split_train_test(dataset, config);
    long n0 = 0, n1 = 0;
    for (int y : split.test.labels) (y == 1 ? n1 : n0)++;
    if (n0 == 0 || n1 == 0) {
        throw std::runtime_error("protocol error: test split lost a class");
    }

    const std::size_t d = dataset.feature_names.size();
    EvalResult knn_result;
    knn_result.auc = knn_arm_auc(split.train, split.test, knn, config.standardize);
    knn_result.n_normal = n0;
    knn_result.n_anomalous = n1;
    knn_result.config_digest = scorer_digest(dataset, config, "knn", d);

    EvalResult probe_result;
    probe_result.auc = probe_arm_auc(split.probe_train, split.test, probe,
                                     config.standardize,
                                     RandomStream(config.seed).substream(0));
    probe_result.n_normal = n0;
    probe_result.n_anomalous = n1;
    probe_result.config_digest = scorer_digest(dataset, config, "probe", d);
    return {knn_result, probe_result};
}

EvalResult guided_run(const TabularDataset& dataset, const ProtocolConfig& config,
                      const std::vector<std::string>& guidance_features,
                      const KnnConfig& knn) {
    if (guidance_features.empty()) {
        throw std::invalid_argument("guided_run: empty guidance set");
    }
    std::vector<std::size_t> cols;
    cols.reserve(guidance_features.size());
    for (const auto& name : guidance_features) {
        cols.push_back(dataset.feature_index(name));
    }

    const auto split = split_train_test(dataset, config);
    LabeledView train{split.train.features.select_columns(cols), split.train.labels};
    LabeledView test{split.test.features.select_columns(cols), split.test.labels};

    long n0 = 0, n1 = 0;
    for (int y : test.labels) (y == 1 ? n1 : n0)++;
    if (n0 == 0 || n1 == 0) {
        throw std::runtime_error("protocol error: test split lost a class");
    }

    EvalResult result;
    result.auc = knn_arm_auc(train, test, knn, config.standardize);
    result.n_normal = n0;
    result.n_anomalous = n1;
    std::string key;
    for (const auto& name : guidance_features) key += name + ",";
    result.config_digest =
        fnv1a_digest(scorer_digest(dataset, config, "knn", cols.size()) + "|" + key);
    return result;
}

std::vector<BridgePoint> toy_detector_bridge(const std::vector<ToyModelParams>& grid,
                                             std::size_t n_train, std::size_t n_test,
                                             const KnnConfig& knn,
                                             const ProbeConfig& probe,
                                             RandomStream stream) {
    if (grid.empty()) throw std::invalid_argument("bridge: empty parameter grid");
    for (const auto& p : grid) {
        if (p.delta != grid.front().delta || p.pi != grid.front().pi) {
            throw std::invalid_argument("bridge: grid entries must share delta and pi");
        }
    }
    if (n_train == 0 || n_test == 0) {
        throw std::invalid_argument("bridge: sample sizes must be positive");
    }

    std::vector<BridgePoint> points;
    points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& params = grid[i];
        const auto d = static_cast<std::size_t>(params.d);

        RowMatrix train(n_train, d);
        RandomStream train_rs = stream.substream(3 * i);
        for (auto& v : train.data) v = train_rs.next_normal();

        const SampleSet test = sample_population(params, n_test, stream.substream(3 * i + 1));
        const SampleSet probe_set =
            sample_population(params, n_train, stream.substream(3 * i + 2));

        BridgePoint pt;
        pt.d = params.d;
        const KnnIndex index = knn_fit(train, knn);
        pt.knn_auc = roc_auc({knn_score(index, test.features, knn), test.labels});
        const TrainedProbe trained =
            probe_train(probe_set.features, probe_set.labels, probe,
                        stream.substream(3 * i + 2).substream(1));
        pt.probe_auc = roc_auc({probe_score(trained, test.features), test.labels});
        points.push_back(pt);
    }
    return points;
}

std::string make_overexpressive_fixture_csv(std::uint64_t seed, std::size_t n,
                                            std::size_t noise_dims) {
    if (n < 6) throw std::invalid_argument("fixture: n too small");
    RandomStream rs(seed);
    std::ostringstream out;
    out << "category,signal";
    for (std::size_t j = 0; j < noise_dims; ++j) {
        char name[32];
        std::snprintf(name, sizeof(name), "noise%02zu", j + 1);
        out << ',' << name;
    }
    out << ",label\n";

    static constexpr const char* kValues[3] = {"a", "b", "c"};
    static constexpr double kMeans[3] = {0.0, 3.0, 5.0};
    for (std::size_t i = 0; i < n; ++i) {
        const int v = static_cast<int>(rs.next_uniform() * 3.0) % 3;
        out << kValues[v] << ',' << fmt_double(kMeans[v] + rs.next_normal());
        for (std::size_t j = 0; j < noise_dims; ++j) out << ',' << fmt_double(rs.next_normal());
        out << ',' << (v == 0 ? 0 : 1) << '\n';
    }
    return out.str();
}

std::string make_toy_tabular_csv(int d, double delta, double pi, std::size_t n,
                                 std::uint64_t seed) {
    ToyModelParams params;
    params.d = d;
    params.delta = delta;
    params.pi = pi;
    params.seed = seed;
    const SampleSet set = sample_population(params, n, RandomStream(seed));

    std::ostringstream out;
    for (int j = 0; j < d; ++j) {
        char name[32];
        std::snprintf(name, sizeof(name), "x%02d", j + 1);
        out << (j ? "," : "") << name;
    }
    out << ",label\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = set.features.row(i);
        for (int j = 0; j < d; ++j) out << (j ? "," : "") << fmt_double(row[j]);
        out << ',' << set.labels[i] << '\n';
    }
    return out.str();
}

} // namespace adlab
