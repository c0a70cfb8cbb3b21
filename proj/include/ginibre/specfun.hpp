#pragma once

#include <cstdint>

namespace ginibre::specfun {

// Evaluation strategy for the regularized upper incomplete gamma Q(s, x).
enum class GammaRatioMode { SeriesLogSpace, ContinuedFraction, UniformErfcAsymptotic };

// Pure dispatch rule; see reg_gamma_upper for the branch semantics.
GammaRatioMode gamma_ratio_mode(double s, double x);

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Complementary error function and its logarithm (x >= 0 for log_erfc).
double erfc(double x);
double log_erfc(double x);

// mu(a) = sqrt(a - log a - 1), a > 0, with a cancellation-free Taylor
// branch near a = 1.
double mu(double a);

// Regularized incomplete gamma functions Q(s,x) = Gamma(s,x)/Gamma(s) and
// P = 1 - Q.  Valid for s in (0, ~1e12]; absolute accuracy ~1e-12 for
// s <= 1e6 and ~1e-9 up to s = 1e9.  P is computed directly by series in
// the regime where it is small, so it carries relative accuracy near 0.
double reg_gamma_upper(double s, double x);
double reg_gamma_lower(double s, double x);

// Leading uniform asymptotic for Q(n, n a), a > 1:
//   a mu(a) erfc(sqrt(n) mu(a)) / (sqrt(2) (a - 1)),
// relative error O(1/(n(a-1))).
double gamma_ratio_asymptotic(double n, double a);

// exp(s ln x - x - ln Gamma(s)) evaluated without the catastrophic
// cancellation of s ln x - x when x is near s.  This is the prefactor of
// every incomplete-gamma series/fraction here and of terms like
// (na)^n e^{-na} / Gamma(n).
double log_gamma_prefix(double s, double x);
double gamma_prefix(double s, double x);

}  // namespace ginibre::specfun
