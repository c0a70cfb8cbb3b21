#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ginibre/laws.hpp"
#include "ginibre/types.hpp"

namespace ginibre::rates {

using CdfFn = std::function<double(double)>;

struct SupResult {
    double value = 0.0;
    double argmax_t = 0.0;
};

// Sup of |F - G| over the grid nodes followed by golden-section refinement
// around the best node (to 1e-6 in t).
SupResult sup_distance(const CdfFn& f, const CdfFn& g, const std::vector<double>& grid);

struct W1Result {
    double value = 0.0;
    double tail_bound = 0.0;  // bracketed mass outside the integrated range
};

// Integral of |F - G| starting from [lo, hi], extended in 5-unit steps
// until both endpoint masses drop below 1e-10 (errors out past +-30 if the
// remainder cannot be brought under 1e-3), then adaptively refined.
W1Result w1_distance(const CdfFn& f, const CdfFn& g, double lo = -3.0, double hi = 10.0);
W1Result w1_distance_tol(const CdfFn& f, const CdfFn& g, double lo, double hi, double rel_tol);

struct RateRecord {
    std::int64_t n = 0;
    double sup_distance = 0.0;
    double argmax_t = 0.0;
    double w1_distance = 0.0;
    double prediction_sup = 0.0;
    double prediction_w1 = 0.0;
};

struct RateFit {
    double c = 0.0;
    std::vector<double> residuals;
};

// Least squares of distance against log log n / log n through the origin.
// Needs >= 3 distinct n spanning >= 2 decades.
RateFit fit_rate_constant(const std::vector<std::pair<std::int64_t, double>>& records);

struct KappaConstants {
    double kappa1 = 0.0;
    double t1_star = 0.0;
    double kappa2 = 0.0;
    double t2_star = 0.0;
};

// Theorem constants kappa1 = sup exp(-e^{-t}-t)(4t^2+20t+35) ~ 15.4 and
// kappa2 = sup exp(-e^{-t}-t)(t^2+4t) ~ 1.48, by coarse scan plus
// golden-section to 1e-10 in t.
KappaConstants kappa_constants();

struct GapRow {
    double t = 0.0;
    double measured = 0.0;
    double predicted = 0.0;
};

struct GapScan {
    std::vector<GapRow> rows;       // over the scan nodes
    double max_ratio = 0.0;         // max measured/predicted on [-l1, l2]
};

// Measured |F_model - Gumbel| against the displayed prediction.  Models:
// complex radius -> Kostlan exact; everything else -> the trace-display
// CDF exp(-beta/2 * displayed trace).
GapScan gap_scan(std::int64_t n, Statistic statistic, EnsembleKind ensemble);

// The model CDFs used by the rate pipelines at standard scaling.
CdfFn pipeline_model(std::int64_t n, Statistic statistic, EnsembleKind ensemble);

// Theorem targets for the fitted constant.
double target_sup_constant(Statistic statistic);  // 25/(4e) or 2/e
double target_w1_constant(Statistic statistic);   // 25/4 or 2

// Full rate pipeline over an n-list (parallel across n, deterministic).
std::vector<RateRecord> rate_pipeline(const std::vector<std::int64_t>& n_list,
                                      Statistic statistic, EnsembleKind ensemble,
                                      int workers = 0);

}  // namespace ginibre::rates
