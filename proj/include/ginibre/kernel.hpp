#pragma once

#include "ginibre/types.hpp"

namespace ginibre::kernel {

// Rescaled edge coordinates: the scheme's (x, y) chart around the
// spectral edge.  Requires a Rightmost scheme with gamma > 0.
struct EdgeCoordinates {
    ScalingScheme scheme;
    double x = 0.0;
    double y = 0.0;
};

// z = 1 + sqrt(gamma/4n) + x/sqrt(4 gamma n) + i y/(gamma n)^{1/4}.
complex rescale_point(const EdgeCoordinates& coords);

// Diagonal of the complex-Ginibre kernel: (n/pi) Q(n, n|z|^2).
double ktilde_diag(std::int64_t n, complex z);

// Edge asymptotic of the diagonal, in the same units as ktilde_diag:
//   2 (gamma n)^{3/4} * prefactor(n, gamma) * e^{-x-y^2}/sqrt(pi)
//     * (1 - (1 + x + y^2 + (x+y^2)^2/2)/gamma),
// where prefactor = n^{1/4} e^{-gamma/2} / (2^{3/2} pi gamma^{5/4}); for the
// standard gamma_n this equals (log n / 2 gamma_n)^{5/4}, for the optimized
// root it equals 1.  Accurate in the regime |x| + y^2 << gamma.
// `in_regime`, when given, reports the soft cap |x|+y^2 <= 4 (log n)^{1/4}.
double ktilde_diag_asymptotic(const EdgeCoordinates& coords, bool* in_regime = nullptr);

// |K~_n(z,w)|^2 via log-magnitude/phase partial sums of the exponential
// kernel.  Supported for n <= 20000 (small-n validation range).
double ktilde_offdiag_sq(std::int64_t n, complex z, complex w);

// Real-Ginibre damping factor on the diagonal:
//   Phi_n(z,z) = sqrt(2 n pi) |Im z| e^{2n (Im z)^2} erfc(sqrt(2n)|Im z|),
// evaluated through log_erfc so nothing overflows.  In [0, 1].
double phi_diag(std::int64_t n, complex z);

// Diagonal density of complex eigenvalues of the real ensemble:
// S_n(z,z) = Phi_n(z,z) K~_n(z,z).
double s_diag_real(std::int64_t n, complex z);

}  // namespace ginibre::kernel
