#pragma once

#include "credint/pivot.hpp"

// Closed-form pivot distributions. Each factory returns the cdf G, density,
// upper tail and support of a continuous law; quantiles go through
// quantile_solve().
namespace credint::catalog {

PivotDistribution standard_normal();
/// N(0, scale^2).
PivotDistribution normal(double scale);
/// Student t with nu > 0 degrees of freedom (nu = 1 is the Cauchy law).
PivotDistribution student_t(double nu);
/// Standard logistic, G(w) = 1 / (1 + e^{-w}).
PivotDistribution logistic();
/// Standard Laplace, density e^{-|w|} / 2.
PivotDistribution laplace();
/// Exp(1): G(w) = 1 - e^{-w} on w > 0.
PivotDistribution exponential();
/// Exp(1) - 1, the mean-zero unit-variance exponential on (-1, inf).
PivotDistribution shifted_exponential();

/// Law of -log V for V ~ Gamma(shape, 1): G(w) = 1 - F_Gamma(shape; e^{-w}).
PivotDistribution log_gamma(double shape);
/// Law of -log V for V ~ Weibull(shape, 1): G(w) = exp(-e^{-shape * w}).
PivotDistribution log_weibull(double shape);
/// Law of log(V1 / V2) for independent V_i ~ Gamma(shape_i, 1). Since
/// V1 / (V1 + V2) ~ Beta(shape1, shape2), G(w) = I_{1/(1+e^{-w})}(shape1, shape2).
PivotDistribution log_gamma_ratio(double shape1, double shape2);

}  // namespace credint::catalog
