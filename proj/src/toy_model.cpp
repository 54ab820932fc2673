#include "adlab/toy_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "adlab/special.hpp"

namespace adlab {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

void check_params(const ToyModelParams& p) {
    if (p.d < 1) throw std::invalid_argument("toy model: d must be >= 1");
    if (!(p.delta >= 0.0)) throw std::invalid_argument("toy model: delta must be >= 0");
    if (!(p.pi > 0.0 && p.pi < 1.0)) {
        throw std::invalid_argument("toy model: pi must lie in (0, 1)");
    }
}

} // namespace

std::string to_string(RateMethod m) {
    switch (m) {
        case RateMethod::exact: return "exact";
        case RateMethod::clt: return "clt";
        case RateMethod::monte_carlo: return "monte_carlo";
        case RateMethod::asymptotic_bound: return "asymptotic_bound";
    }
    return "unknown";
}

RateMethod rate_method_from_string(const std::string& s) {
    if (s == "exact") return RateMethod::exact;
    if (s == "clt") return RateMethod::clt;
    if (s == "monte_carlo") return RateMethod::monte_carlo;
    if (s == "asymptotic_bound") return RateMethod::asymptotic_bound;
    throw std::invalid_argument("unknown rate method: " + s);
}

SampleSet sample_population(const ToyModelParams& params, std::size_t n,
                            RandomStream stream) {
    check_params(params);
    if (n < 1) throw std::invalid_argument("sample_population: n must be >= 1");
    SampleSet out;
    out.features = RowMatrix(n, static_cast<std::size_t>(params.d));
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool anomalous = stream.next_uniform() < params.pi;
        out.labels[i] = anomalous ? 1 : 0;
        auto row = out.features.row(i);
        for (auto& v : row) v = stream.next_normal();
        if (anomalous) row[0] += params.delta;
    }
    return out;
}

double log_likelihood_score(std::span<const double> x) {
    double norm_sq = 0.0;
    for (double v : x) norm_sq += v * v;
    return -0.5 * norm_sq - 0.5 * static_cast<double>(x.size()) * kLog2Pi;
}

double log_threshold(int d, const ThresholdSpec& spec) {
    if (d < 1) throw std::invalid_argument("log_threshold: d must be >= 1");
    return -0.5 * norm_sq_threshold(d, spec) - 0.5 * d * kLog2Pi;
}

double norm_sq_threshold(int d, const ThresholdSpec& spec) {
    return spec.y * std::sqrt(2.0 * d) + static_cast<double>(d);
}

double fpr_exact(int d, const ThresholdSpec& spec) {
    const double cut = norm_sq_threshold(d, spec);
    if (cut <= 0.0) return 1.0;
    return chi2_survival(d, cut);
}

double fpr_clt(const ThresholdSpec& spec) {
    return std_normal_sf(spec.y);
}

double tpr_exact(int d, const ThresholdSpec& spec, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("tpr_exact: delta must be >= 0");
    const double cut = norm_sq_threshold(d, spec);
    if (cut <= 0.0) return 1.0;
    return noncentral_chi2_survival(d, delta * delta, cut);
}

double tpr_clt(int d, const ThresholdSpec& spec, double delta) {
    if (d < 1) throw std::invalid_argument("tpr_clt: d must be >= 1");
    const double num = spec.y * std::sqrt(2.0 * d) - delta * delta;
    const double den = std::sqrt(4.0 * delta * delta + 2.0 * d);
    return std_normal_sf(num / den);
}

double gap_asymptotic(int d, const ThresholdSpec& spec, double delta) {
    if (d < 1) throw std::invalid_argument("gap_asymptotic: d must be >= 1");
    return delta * delta * std::exp(-0.5 * spec.y * spec.y) /
           std::sqrt(4.0 * std::numbers::pi * d);
}

RatePoint empirical_rates(const ToyModelParams& params, const ThresholdSpec& spec,
                          std::size_t n, RandomStream stream) {
    check_params(params);
    if (n < 1) throw std::invalid_argument("empirical_rates: n must be >= 1");

    const double log_cut = log_threshold(params.d, spec);
    constexpr std::size_t kBlock = 1 << 16;
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;

    struct BlockCounts {
        std::size_t n0 = 0, n1 = 0, flagged0 = 0, flagged1 = 0;
    };
    std::vector<BlockCounts> blocks(n_blocks);

    const auto run_block = [&](std::size_t b) {
        RandomStream rs = stream.substream(b);
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        BlockCounts counts;
        const int d = params.d;
        for (std::size_t i = lo; i < hi; ++i) {
            const bool anomalous = rs.next_uniform() < params.pi;
            double norm_sq = 0.0;
            for (int j = 0; j < d; ++j) {
                double v = rs.next_normal();
                if (anomalous && j == 0) v += params.delta;
                norm_sq += v * v;
            }
            const double log_score = -0.5 * norm_sq - 0.5 * d * kLog2Pi;
            const bool flagged = log_score < log_cut;
            if (anomalous) {
                ++counts.n1;
                counts.flagged1 += flagged;
            } else {
                ++counts.n0;
                counts.flagged0 += flagged;
            }
        }
        blocks[b] = counts;
    };

    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 1 && n_blocks > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned n_threads = std::min<std::size_t>(hw, n_blocks);
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t b = next++; b < n_blocks; b = next++) run_block(b);
            });
        }
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    }

    BlockCounts total;
    for (const auto& c : blocks) {
        total.n0 += c.n0;
        total.n1 += c.n1;
        total.flagged0 += c.flagged0;
        total.flagged1 += c.flagged1;
    }
    if (total.n0 == 0 || total.n1 == 0) {
        throw std::runtime_error(
            "empirical_rates: a label class is absent from the sample; rates undefined");
    }

    RatePoint pt;
    pt.d = params.d;
    pt.y = spec.y;
    pt.delta = params.delta;
    pt.method = RateMethod::monte_carlo;
    pt.fpr = static_cast<double>(total.flagged0) / total.n0;
    pt.tpr = static_cast<double>(total.flagged1) / total.n1;
    pt.gap = pt.tpr - pt.fpr;
    pt.fpr_se = std::sqrt(pt.fpr * (1.0 - pt.fpr) / total.n0);
    pt.tpr_se = std::sqrt(pt.tpr * (1.0 - pt.tpr) / total.n1);
    if (n < 1000) pt.warning = "low_statistical_power";
    return pt;
}

RateCurve decay_curve(const std::vector<int>& dims, const ThresholdSpec& spec,
                      double delta, RateMethod method) {
    if (dims.empty()) throw std::invalid_argument("decay_curve: dims must be nonempty");
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        if (dims[i] >= dims[i + 1]) {
            throw std::invalid_argument("decay_curve: dims must be strictly increasing");
        }
    }
    if (dims.front() < 1) throw std::invalid_argument("decay_curve: dims must be >= 1");
    if (method == RateMethod::monte_carlo) {
        throw std::invalid_argument("decay_curve: use empirical_rates for monte_carlo");
    }

    RateCurve curve;
    curve.reserve(dims.size());
    for (int d : dims) {
        RatePoint pt;
        pt.d = d;
        pt.y = spec.y;
        pt.delta = delta;
        pt.method = method;
        switch (method) {
            case RateMethod::exact:
                pt.fpr = fpr_exact(d, spec);
                pt.tpr = tpr_exact(d, spec, delta);
                pt.gap = pt.tpr - pt.fpr;
                break;
            case RateMethod::clt:
                pt.fpr = fpr_clt(spec);
                pt.tpr = tpr_clt(d, spec, delta);
                pt.gap = pt.tpr - pt.fpr;
                if (d < 8) pt.warning = "clt_regime_d_below_8";
                break;
            case RateMethod::asymptotic_bound:
                pt.fpr = fpr_clt(spec);
                pt.gap = gap_asymptotic(d, spec, delta);
                pt.tpr = pt.fpr + pt.gap;
                break;
            case RateMethod::monte_carlo:
                break;  // unreachable
        }
        curve.push_back(pt);
    }
    return curve;
}

double fit_decay_exponent(const RateCurve& curve) {
    std::vector<double> lx, ly;
    for (const auto& pt : curve) {
        if (pt.gap > 0.0) {
            lx.push_back(std::log(static_cast<double>(pt.d)));
            ly.push_back(std::log(pt.gap));
        }
    }
    if (lx.size() < 3) {
        throw std::runtime_error(
            "fit_decay_exponent: fewer than 3 points with positive gaps");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::runtime_error("fit_decay_exponent: degenerate dims");
    return sxy / sxx;
}

} // namespace adlab
