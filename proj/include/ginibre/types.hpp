#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ginibre {

using complex = std::complex<double>;

enum class Statistic { Rightmost, Radius };

enum class EnsembleKind { RealGinibre, ComplexGinibre, IidComplex };

enum class SchemeVariant { Standard, OptimizedTheorem5 };

// Dyson index of the limit law: 1 for the real ensemble, 2 otherwise.
inline double beta_of(EnsembleKind e) {
    return e == EnsembleKind::RealGinibre ? 1.0 : 2.0;
}

// Centering/scaling constants for one (n, statistic) pair. `gamma` is
// gamma_n (rightmost), gamma'_n (radius), or the optimized root of the
// transcendental equations 64 g^5 pi^4 e^{2g} = n / 2 pi g^2 e^g = n.
// Always gamma > 0 by construction; factories reject anything else.
struct ScalingScheme {
    std::int64_t n = 0;
    Statistic statistic = Statistic::Radius;
    SchemeVariant variant = SchemeVariant::Standard;
    double gamma = 0.0;
    double c_n = 0.0;  // (25 log log n + 5 log(2 pi^4) - 35)/4
    double d_n = 0.0;  // 2 log log n + log(2 pi)

    // Edge centering point 1 + sqrt(gamma/4n).
    double center() const;
    // Fluctuation scale sqrt(4 n gamma).
    double scale() const;
};

struct ScalingError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace ginibre
