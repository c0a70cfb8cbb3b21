#pragma once

#include <cstdint>
#include <vector>

#include "ginibre/rng.hpp"
#include "ginibre/types.hpp"

namespace ginibre::laws {

// Gumbel family with distribution function exp(-(beta/2) e^{-x}).
struct GumbelLaw {
    double beta = 2.0;
};

double gumbel_cdf(const GumbelLaw& law, double x);
double gumbel_quantile(const GumbelLaw& law, double p);
double gumbel_sample(const GumbelLaw& law, Rng& rng);

// Standard centering/scaling constants.  Throws ScalingError when the
// defining expression is not positive: the radius gamma'_n needs
// n >~ 2e2 and the rightmost gamma_n only turns positive near n ~ 7e8.
ScalingScheme standard_scaling(std::int64_t n, Statistic statistic);

// Optimized constants: the unique roots of
//   64 g^5 pi^4 e^{2g} = n   (rightmost)   and   2 pi g^2 e^g = n (radius),
// found by safeguarded Newton to relative residual <= 1e-12.  Valid for
// all n >= 16.
ScalingScheme optimized_scaling(std::int64_t n, Statistic statistic);

// Root solver behind optimized_scaling, for real-valued n.
double optimized_gamma(double n, Statistic statistic);

// t = sqrt(4 n gamma) (raw - 1 - sqrt(gamma/4n)) and its inverse.
double rescale_statistic(double raw, const ScalingScheme& scheme);
double rescale_inverse(double t, const ScalingScheme& scheme);

// Exact spectral-radius CDF of the complex Ginibre ensemble:
//   P(max |sigma| <= r) = prod_{k=1}^{n} P(k, n r^2),
// computed in log space over the window k >= n r^2 - 12 sqrt(n r^2 + 1)
// (factors below it are 1 within 1e-16).
double radius_cdf_exact(std::int64_t n, double r);

enum class CdfKind { GumbelLimit, ExpNegTrace, KostlanExact, EmpiricalMC };

// CDF models at rescaled coordinate t.  ExpNegTrace uses the exact
// identity for the radius and box quadrature for the rightmost trace,
// with the exponent halved for the real ensemble.  KostlanExact is the
// complex radius only.
double cdf_model(CdfKind kind, const ScalingScheme& scheme, EnsembleKind ensemble, double t);

// Leading gap |F_model - Gumbel| predicted uniformly on the scan window.
double gap_prediction(std::int64_t n, double t, Statistic statistic, EnsembleKind ensemble);

// Scan interval [-l1, l2] with l1 = (log log n)/4, l2 = (log n)^{1/4},
// 400 uniform nodes, plus the fixed guard interval for tail scans.
struct RateGrid {
    double l1 = 0.0;
    double l2 = 0.0;
    std::vector<double> nodes;  // exactly 400, on [-l1, l2]
    double guard_lo = -3.0;
    double guard_hi = 10.0;
};

RateGrid rate_grid(std::int64_t n);

}  // namespace ginibre::laws
