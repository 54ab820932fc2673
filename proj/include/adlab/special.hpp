#pragma once

namespace adlab {

/// Standard normal CDF. Absolute error below 1e-12 everywhere.
/// Throws std::domain_error on non-finite input.
double std_normal_cdf(double z);

/// Standard normal survival function 1 - Phi(z), computed without
/// cancellation in the upper tail.
double std_normal_sf(double z);

/// Pr(chi^2_dof > t), the regularized upper incomplete gamma Q(dof/2, t/2).
/// Absolute error below 1e-10. Throws std::domain_error for dof < 1 or t < 0.
double chi2_survival(int dof, double t);

/// Pr(chi^2_dof(lambda) > t) for the noncentral chi-squared, evaluated as the
/// Poisson(lambda/2)-weighted mixture of central survivals. The series starts
/// at the Poisson mode and expands both directions until the unassigned
/// Poisson mass drops below tail_tol. Absolute error below 1e-9 at the
/// default tolerance.
double noncentral_chi2_survival(int dof, double lambda, double t,
                                double tail_tol = 1e-12);

} // namespace adlab
