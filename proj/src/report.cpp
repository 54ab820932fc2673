#include "adlab/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace adlab {
namespace {

nlohmann::ordered_json rate_point_to_json(const RatePoint& pt) {
    nlohmann::ordered_json j;
    j["d"] = pt.d;
    j["y"] = pt.y;
    j["delta"] = pt.delta;
    j["fpr"] = pt.fpr;
    j["tpr"] = pt.tpr;
    j["gap"] = pt.gap;
    j["method"] = to_string(pt.method);
    if (pt.method == RateMethod::monte_carlo) {
        j["fpr_se"] = pt.fpr_se;
        j["tpr_se"] = pt.tpr_se;
    }
    if (!pt.warning.empty()) j["warning"] = pt.warning;
    return j;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string rate_curve_to_csv(const RateCurve& curve) {
    std::ostringstream out;
    out << "d,y,delta,method,fpr,tpr,gap,fpr_se,tpr_se,warning\n";
    for (const auto& pt : curve) {
        out << pt.d << ',' << format_double(pt.y) << ',' << format_double(pt.delta)
            << ',' << to_string(pt.method) << ',' << format_double(pt.fpr) << ','
            << format_double(pt.tpr) << ',' << format_double(pt.gap) << ','
            << format_double(pt.fpr_se) << ',' << format_double(pt.tpr_se) << ','
            << pt.warning << '\n';
    }
    return out.str();
}

std::string rate_curve_to_json(const RateCurve& curve) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& pt : curve) j.push_back(rate_point_to_json(pt));
    return j.dump(2) + "\n";
}

std::string result_records_to_csv(const std::vector<ResultRecord>& records) {
    std::ostringstream out;
    out << "experiment_id,dataset_digest,setting,attribute,value,scorer,d,auc,"
           "n_normal,n_anomalous,seed\n";
    for (const auto& r : records) {
        out << r.experiment_id << ',' << r.dataset_digest << ',' << r.setting << ','
            << r.attribute << ',' << r.value << ',' << r.scorer << ',' << r.d << ','
            << format_double(r.auc) << ',' << r.n_normal << ',' << r.n_anomalous << ','
            << r.seed << '\n';
    }
    return out.str();
}

std::string result_records_to_jsonl(const std::vector<ResultRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["experiment_id"] = r.experiment_id;
        j["dataset_digest"] = r.dataset_digest;
        j["setting"] = r.setting;
        j["attribute"] = r.attribute;
        j["value"] = r.value;
        j["scorer"] = r.scorer;
        j["d"] = r.d;
        j["auc"] = r.auc;
        j["n_normal"] = r.n_normal;
        j["n_anomalous"] = r.n_anomalous;
        j["seed"] = r.seed;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::string sweep_result_to_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "d,feature_added,knn_auc,probe_auc\n";
    for (std::size_t i = 0; i < sweep.ranked_features.size(); ++i) {
        out << (i + 1) << ',' << sweep.ranked_features[i] << ','
            << format_double(sweep.knn_auc[i]) << ','
            << format_double(sweep.probe_auc[i]) << '\n';
    }
    return out.str();
}

std::string bridge_points_to_csv(const std::vector<BridgePoint>& points) {
    std::ostringstream out;
    out << "d,knn_auc,probe_auc\n";
    for (const auto& pt : points) {
        out << pt.d << ',' << format_double(pt.knn_auc) << ','
            << format_double(pt.probe_auc) << '\n';
    }
    return out.str();
}

} // namespace adlab
