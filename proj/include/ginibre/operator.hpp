#pragma once

#include <vector>

#include "ginibre/types.hpp"

namespace ginibre::ops {

// Truncated rescaled integration box.  The exact diagonal decays like
// e^{-x-y^2} on the box, so the default 40 x 7 box leaves tail mass
// ~1e-15 of the included integral.
struct QuadSpec {
    double x_max_offset = 40.0;
    double y_half_width = 7.0;
    int nodes_x = 64;
    int nodes_y = 64;
    int refinement_factor = 2;
};

enum class TraceMethod { ExactIdentity, Quadrature2D, Quadrature1D, Asymptotic };

struct TraceResult {
    double value = 0.0;
    TraceMethod method = TraceMethod::ExactIdentity;
    double error_estimate = 0.0;
    std::int64_t n = 0;
    double t = 0.0;
    Statistic statistic = Statistic::Radius;
    bool converged = true;
    bool cancellation_flag = false;
};

// Squared threshold radius (1 + sqrt(gamma/4n) + t/sqrt(4 n gamma))^2.
// The paper's asymptotics have a_t > 1; the identity below only needs the
// centering radius positive, so that is the domain enforced here.
double annulus_a_t(const ScalingScheme& scheme, double t);

// Expected eigenvalue count right of the rescaled vertical line at t:
// Gauss-Legendre product quadrature of the exact diagonal over the box.
TraceResult trace_rightmost_quadrature(const ScalingScheme& scheme, double t,
                                       const QuadSpec& quad);

// Displayed edge asymptotic e^{-t} (1 + (c_n - t^2 - 5t)/log n).
TraceResult trace_rightmost_asymptotic(std::int64_t n, double t);

// Exact annulus trace via
//   Gamma(n)^{-1} ( -n (a_t - 1) Gamma(n, n a_t) + (n a_t)^n e^{-n a_t} ),
// with a spectral-sum fallback when the two terms cancel too deeply.
TraceResult trace_radius_exact(const ScalingScheme& scheme, double t);

// Displayed edge asymptotic e^{-t} (1 + (d_n - t^2 - 4t)/gamma'_n).
TraceResult trace_radius_asymptotic(std::int64_t n, double t);

// Spectral sum  sum_{k=1..n} Q(k, n a): equals the annulus trace; used as
// the cancellation fallback and by tail bounds.
double radius_trace_sum(std::int64_t n, double a);

// Real-ensemble traces: 2 x integral of Phi_n K~_n over the upper half of
// the region.  `unit_phi` replaces Phi by 1 (consistency switch for
// tests).  Panels are split at the Phi boundary layer (width ~ n^{-1/4}).
TraceResult trace_real_rightmost_quadrature(const ScalingScheme& scheme, double t,
                                            const QuadSpec& quad, bool unit_phi = false);
TraceResult trace_real_radius_quadrature(const ScalingScheme& scheme, double t,
                                         const QuadSpec& quad, bool unit_phi = false);

struct QuadValue {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// ||W||_2^2 over the squared annulus region by (r1, r2, theta) quadrature
// of |K~|^2, using rotational symmetry.  Validation range n <= 2000.
QuadValue hs_norm_sq_radius(const ScalingScheme& scheme, double t, const QuadSpec& quad);

struct FredholmResult {
    double det = 1.0;
    double trace = 0.0;        // sum of discretized eigenvalues
    double hs_norm_sq = 0.0;   // sum of their squares
    double max_eigenvalue = 0.0;
    int clipped = 0;           // eigenvalues clipped into [0, 1 - 1e-15]
    double refinement_gap = 0.0;
    bool converged = true;
    bool eigenvalue_overflow = false;  // some eigenvalue exceeded 1 + 1e-8
};

// det(1 - W) for the rightmost half-plane operator by symmetric Nystrom
// discretization; n <= 5000.  Eigenvalues of the discretized operator are
// obtained through its Gram factor (squared singular values).
FredholmResult fredholm_det_rightmost(const ScalingScheme& scheme, double t,
                                      const QuadSpec& quad);

// Gohberg-type bound |det(1-W) - e^{-Tr W}| <= ||W||_2 exp((||W||_2+1)^2/2 - Tr).
double det_error_bound(double trace, double hs_norm);

// Trace curves over many thresholds, evaluated in parallel (deterministic).
std::vector<double> trace_curve(const ScalingScheme& scheme, const std::vector<double>& ts,
                                const QuadSpec& quad, EnsembleKind ensemble, int workers = 0);

}  // namespace ginibre::ops
