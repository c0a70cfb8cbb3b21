#include "ginibre/laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginibre/operator.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre {

double ScalingScheme::center() const { return 1.0 + std::sqrt(gamma / (4.0 * double(n))); }
double ScalingScheme::scale() const { return std::sqrt(4.0 * double(n) * gamma); }

namespace laws {

namespace {

constexpr double kLn2Pi4 = 5.2719949798900135;  // log(2 pi^4)
constexpr double kLn2Pi = 1.8378770664093454836;

void fill_constants(ScalingScheme& s) {
    const double L = std::log(double(s.n));
    const double ll = std::log(L);
    s.c_n = (25.0 * ll + 5.0 * kLn2Pi4 - 35.0) / 4.0;
    s.d_n = 2.0 * ll + kLn2Pi;
}

// Monotone root of  a*g + b*log g + c = 0  on (0, inf).
double solve_log_equation(double a, double b, double c) {
    double lo = 1e-8, hi = 1.0;
    auto f = [&](double g) { return a * g + b * std::log(g) + c; };
    while (f(hi) < 0.0) hi *= 2.0;
    double g = std::max(0.5 * (lo + hi), 1e-6);
    if (f(lo) > 0.0) throw std::runtime_error("solve_log_equation: bracketing failure");
    for (int it = 0; it < 200; ++it) {
        const double fg = f(g);
        if (fg > 0.0) hi = g; else lo = g;
        const double step = fg / (a + b / g);
        double next = g - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - g) < 1e-16 * g && std::abs(fg) < 1e-13) return next;
        g = next;
    }
    return g;
}

}  // namespace

double gumbel_cdf(const GumbelLaw& law, double x) {
    return std::exp(-0.5 * law.beta * std::exp(-x));
}

double gumbel_quantile(const GumbelLaw& law, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gumbel_quantile: p must be in (0,1)");
    return -std::log(-(2.0 / law.beta) * std::log(p));
}

double gumbel_sample(const GumbelLaw& law, Rng& rng) {
    return gumbel_quantile(law, rng.uniform());
}

ScalingScheme standard_scaling(std::int64_t n, Statistic statistic) {
    if (n < 16) throw ScalingError("standard_scaling: n must be >= 16");
    const double L = std::log(double(n));
    const double ll = std::log(L);
    ScalingScheme s;
    s.n = n;
    s.statistic = statistic;
    s.variant = SchemeVariant::Standard;
    s.gamma = statistic == Statistic::Rightmost ? 0.5 * (L - 5.0 * ll - kLn2Pi4)
                                                : L - 2.0 * ll - kLn2Pi;
    if (!(s.gamma > 0.0))
        throw ScalingError(
            statistic == Statistic::Rightmost
                ? "standard_scaling: gamma_n = (log n - 5 log log n - log 2pi^4)/2 <= 0 at "
                  "this n (needs n >~ 6.6e8); use the optimized scaling"
                : "standard_scaling: gamma'_n = log n - 2 log log n - log 2pi <= 0 at this n "
                  "(needs n >~ 200); use the optimized scaling");
    fill_constants(s);
    return s;
}

double optimized_gamma(double n, Statistic statistic) {
    if (!(n >= 16.0)) throw ScalingError("optimized_gamma: n must be >= 16");
    const double ln_n = std::log(n);
    // 2g + 5 log g = log(n / 64 pi^4);  g + 2 log g = log(n / 2 pi).
    return statistic == Statistic::Rightmost
               ? solve_log_equation(2.0, 5.0, std::log(64.0) + 4.0 * std::log(M_PI) - ln_n)
               : solve_log_equation(1.0, 2.0, kLn2Pi - ln_n);
}

ScalingScheme optimized_scaling(std::int64_t n, Statistic statistic) {
    if (n < 16) throw ScalingError("optimized_scaling: n must be >= 16");
    ScalingScheme s;
    s.n = n;
    s.statistic = statistic;
    s.variant = SchemeVariant::OptimizedTheorem5;
    s.gamma = optimized_gamma(double(n), statistic);
    fill_constants(s);
    return s;
}

double rescale_statistic(double raw, const ScalingScheme& scheme) {
    return scheme.scale() * (raw - scheme.center());
}

double rescale_inverse(double t, const ScalingScheme& scheme) {
    return scheme.center() + t / scheme.scale();
}

double radius_cdf_exact(std::int64_t n, double r) {
    if (n < 1) throw std::domain_error("radius_cdf_exact: n >= 1");
    if (!(r >= 0.0)) throw std::domain_error("radius_cdf_exact: r >= 0");
    if (r == 0.0) return 0.0;
    const double x = double(n) * r * r;
    const std::int64_t k_lo =
        std::max<std::int64_t>(1, std::int64_t(std::floor(x - 12.0 * std::sqrt(x + 1.0))));
    if (k_lo > n) return 1.0;  // every factor is 1 within 1e-16

    // Upward Poisson sweep: Q(k+1,x) = Q(k,x) + pmf(k), pmf(k) = e^{-x} x^k / k!.
    double q = specfun::reg_gamma_upper(double(k_lo), x);
    double comp = 0.0;
    double pmf = std::exp(specfun::log_gamma_prefix(double(k_lo), x) - std::log(double(k_lo)));
    double logf = 0.0;
    for (std::int64_t k = k_lo; k <= n; ++k) {
        if (q >= 1.0) return 0.0;
        logf += std::log1p(-q);
        if (logf < -745.0) return 0.0;
        const double y = pmf - comp;
        const double t = q + y;
        comp = (t - q) - y;
        q = t;
        pmf *= x / double(k + 1);
    }
    return std::exp(logf);
}

double gap_prediction(std::int64_t n, double t, Statistic statistic, EnsembleKind ensemble) {
    if (n < 16) throw std::domain_error("gap_prediction: n >= 16");
    const double L = std::log(double(n));
    const double ll = std::log(L);
    const double e_t = std::exp(-t);
    if (ensemble == EnsembleKind::RealGinibre) {
        const double envelope = std::exp(-0.5 * e_t - t);
        return statistic == Statistic::Rightmost ? envelope * 25.0 * ll / (8.0 * L)
                                                 : envelope * ll / L;
    }
    const double envelope = std::exp(-e_t - t);
    return statistic == Statistic::Rightmost ? envelope * 25.0 * ll / (4.0 * L)
                                             : envelope * 2.0 * ll / L;
}

RateGrid rate_grid(std::int64_t n) {
    if (n < 16) throw std::domain_error("rate_grid: n >= 16");
    RateGrid g;
    const double L = std::log(double(n));
    g.l1 = 0.25 * std::log(L);
    g.l2 = std::pow(L, 0.25);
    g.nodes.resize(400);
    for (int i = 0; i < 400; ++i)
        g.nodes[i] = -g.l1 + (g.l2 + g.l1) * double(i) / 399.0;
    return g;
}

double cdf_model(CdfKind kind, const ScalingScheme& scheme, EnsembleKind ensemble, double t) {
    switch (kind) {
        case CdfKind::GumbelLimit:
            return gumbel_cdf({beta_of(ensemble)}, t);
        case CdfKind::KostlanExact: {
            if (scheme.statistic != Statistic::Radius || ensemble != EnsembleKind::ComplexGinibre)
                throw std::invalid_argument(
                    "cdf_model: KostlanExact is available for the complex radius only");
            const double r = rescale_inverse(t, scheme);
            if (r <= 0.0) return 0.0;
            return radius_cdf_exact(scheme.n, r);
        }
        case CdfKind::ExpNegTrace: {
            double tr;
            if (scheme.statistic == Statistic::Radius) {
                if (rescale_inverse(t, scheme) <= 0.0) return 0.0;
                tr = ensemble == EnsembleKind::RealGinibre
                         ? ops::trace_real_radius_quadrature(scheme, t, {}).value
                         : ops::trace_radius_exact(scheme, t).value;
            } else {
                tr = ensemble == EnsembleKind::RealGinibre
                         ? ops::trace_real_rightmost_quadrature(scheme, t, {}).value
                         : ops::trace_rightmost_quadrature(scheme, t, {}).value;
            }
            const double f = ensemble == EnsembleKind::RealGinibre ? std::exp(-0.5 * tr)
                                                                   : std::exp(-tr);
            return std::clamp(f, 0.0, 1.0);
        }
        case CdfKind::EmpiricalMC:
            throw std::invalid_argument("cdf_model: EmpiricalMC needs a sample set");
    }
    throw std::invalid_argument("cdf_model: unknown kind");
}

}  // namespace laws
}  // namespace ginibre
