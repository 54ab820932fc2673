#include "adlab/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adlab {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 2'000'000;

// Regularized lower incomplete gamma P(a, x) by power series; valid for
// x < a + 1 where the series converges quickly.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
        }
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction; valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h * std::exp(a * std::log(x) - x - std::lgamma(a));
        }
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

// Q(a, x) with the standard regime split at x = a + 1.
double gamma_q(double a, double x) {
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

} // namespace

double std_normal_cdf(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("std_normal_cdf: non-finite input");
    }
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

double std_normal_sf(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("std_normal_sf: non-finite input");
    }
    return 0.5 * std::erfc(z * M_SQRT1_2);
}

double chi2_survival(int dof, double t) {
    if (dof < 1) {
        throw std::domain_error("chi2_survival: dof must be >= 1");
    }
    if (!(t >= 0.0)) {
        throw std::domain_error("chi2_survival: t must be >= 0");
    }
    return gamma_q(0.5 * dof, 0.5 * t);
}

double noncentral_chi2_survival(int dof, double lambda, double t, double tail_tol) {
    if (dof < 1) {
        throw std::domain_error("noncentral_chi2_survival: dof must be >= 1");
    }
    if (!(lambda >= 0.0)) {
        throw std::domain_error("noncentral_chi2_survival: lambda must be >= 0");
    }
    if (!(t >= 0.0)) {
        throw std::domain_error("noncentral_chi2_survival: t must be >= 0");
    }
    if (lambda == 0.0) return chi2_survival(dof, t);
    if (t == 0.0) return 1.0;

    const double half = 0.5 * lambda;
    const auto log_weight = [half](long j) {
        return j * std::log(half) - half - std::lgamma(static_cast<double>(j) + 1.0);
    };

    // Poisson mode; expand outward so no term underflows before the bulk of
    // the mass has been accumulated.
    const long mode = static_cast<long>(half);
    double total = 0.0;
    double mass = 0.0;
    long lo = mode;
    long hi = mode;

    const auto add_term = [&](long j) {
        const double w = std::exp(log_weight(j));
        mass += w;
        total += w * gamma_q(0.5 * dof + static_cast<double>(j), 0.5 * t);
    };

    add_term(mode);
    while (1.0 - mass > tail_tol) {
        bool moved = false;
        if (lo > 0) {
            add_term(--lo);
            moved = true;
        }
        if (1.0 - mass <= tail_tol) break;
        if (hi - mode < kMaxIter) {
            add_term(++hi);
            moved = true;
        }
        if (!moved) {
            throw std::runtime_error("noncentral_chi2_survival: series failed to converge");
        }
    }
    return total < 1.0 ? total : 1.0;
}

} // namespace adlab
