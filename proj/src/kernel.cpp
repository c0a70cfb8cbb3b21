#include "ginibre/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ginibre/specfun.hpp"

namespace ginibre::kernel {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_rightmost_scheme(const ScalingScheme& s) {
    if (s.statistic != Statistic::Rightmost)
        throw std::invalid_argument("edge coordinates require a Rightmost scheme");
    if (!(s.gamma > 0.0) || s.n < 2)
        throw ScalingError("edge coordinates require gamma > 0 and n >= 2");
}

// ln(l!) for l = 0..n, cached per n-ceiling.
const std::vector<double>& log_factorials(std::int64_t n) {
    static std::mutex mtx;
    static std::map<std::int64_t, std::vector<double>> cache;
    std::lock_guard lock(mtx);
    auto it = cache.lower_bound(n);
    if (it == cache.end()) {
        std::vector<double> t(static_cast<std::size_t>(n) + 1);
        for (std::int64_t l = 0; l <= n; ++l) t[l] = specfun::log_gamma(double(l) + 1.0);
        it = cache.emplace(n, std::move(t)).first;
    }
    return it->second;
}

}  // namespace

complex rescale_point(const EdgeCoordinates& coords) {
    const auto& s = coords.scheme;
    check_rightmost_scheme(s);
    const double n = double(s.n);
    const double re = 1.0 + std::sqrt(s.gamma / (4.0 * n)) +
                      coords.x / std::sqrt(4.0 * s.gamma * n);
    const double im = coords.y / std::pow(s.gamma * n, 0.25);
    return {re, im};
}

double ktilde_diag(std::int64_t n, complex z) {
    if (n < 1) throw std::invalid_argument("ktilde_diag: n >= 1");
    const double nn = double(n);
    return nn / M_PI * specfun::reg_gamma_upper(nn, nn * std::norm(z));
}

double ktilde_diag_asymptotic(const EdgeCoordinates& coords, bool* in_regime) {
    const auto& s = coords.scheme;
    check_rightmost_scheme(s);
    const double n = double(s.n);
    const double g = s.gamma;
    const double x = coords.x, y = coords.y;
    const double q = x + y * y;
    if (in_regime) *in_regime = std::abs(x) + y * y <= 4.0 * std::pow(std::log(n), 0.25);
    const double log_pref = 0.25 * std::log(n) - 0.5 * g - 1.5 * kLn2 - std::log(M_PI) -
                            1.25 * std::log(g);
    const double corr = 1.0 - (1.0 + q + 0.5 * q * q) / g;
    return 2.0 * std::pow(g * n, 0.75) * std::exp(log_pref - q) / std::sqrt(M_PI) * corr;
}

double ktilde_offdiag_sq(std::int64_t n, complex z, complex w) {
    if (n < 1) throw std::invalid_argument("ktilde_offdiag_sq: n >= 1");
    if (n > 20000)
        throw std::invalid_argument(
            "ktilde_offdiag_sq: n exceeds the supported off-diagonal range (20000)");
    const double nn = double(n);
    const complex u = nn * z * std::conj(w);
    const double c = 0.5 * nn * (std::norm(z) + std::norm(w));
    const double absu = std::abs(u);
    const auto& lf = log_factorials(n);

    // e^{-C} sum_l u^l / l!  -- log-magnitude window around the peak l ~ |u|,
    // phases by recurrence.  Dropped terms are < 1e-20 of the peak.
    double lo_d = 0.0, hi_d = double(n - 1);
    if (absu > 0.0) {
        const double half = 10.0 + 9.7 * std::sqrt(absu + 1.0);
        lo_d = std::max(0.0, std::floor(absu - half));
        hi_d = std::min(double(n - 1), std::ceil(absu + half));
        if (lo_d > hi_d) {  // peak sits beyond the l < n cap; keep the top slice
            hi_d = double(n - 1);
            lo_d = std::max(0.0, hi_d - 2.0 * half);
        }
    }
    const std::int64_t lo = static_cast<std::int64_t>(lo_d);
    const std::int64_t hi = static_cast<std::int64_t>(hi_d);

    double sre = 0.0, sim = 0.0, cre = 0.0, cim = 0.0;  // Kahan pair
    if (absu == 0.0) {
        sre = std::exp(-c);
    } else {
        const double theta = std::arg(u);
        const double lnu = std::log(absu);
        double lnmag = lo * lnu - lf[lo] - c;
        complex phase = std::polar(1.0, theta * double(lo));
        const complex rot = std::polar(1.0, theta);
        for (std::int64_t l = lo; l <= hi; ++l) {
            const double mag = std::exp(lnmag);
            const double tre = mag * phase.real();
            const double tim = mag * phase.imag();
            double yk = tre - cre, tk = sre + yk;
            cre = (tk - sre) - yk;
            sre = tk;
            yk = tim - cim, tk = sim + yk;
            cim = (tk - sim) - yk;
            sim = tk;
            lnmag += lnu - std::log(double(l + 1));
            phase *= rot;
        }
    }
    const double norm_s = sre * sre + sim * sim;
    const double scale = nn / M_PI;
    return scale * scale * norm_s;
}

double phi_diag(std::int64_t n, complex z) {
    if (n < 1) throw std::invalid_argument("phi_diag: n >= 1");
    const double nn = double(n);
    const double y = std::abs(z.imag());
    if (y == 0.0) return 0.0;
    const double arg = std::sqrt(2.0 * nn) * y;
    const double lnphi = 0.5 * std::log(2.0 * nn * M_PI) + std::log(y) + arg * arg +
                         specfun::log_erfc(arg);
    return std::exp(lnphi);
}

double s_diag_real(std::int64_t n, complex z) {
    if (n < 2) throw std::invalid_argument("s_diag_real: n >= 2");
    return phi_diag(n, z) * ktilde_diag(n, z);
}

}  // namespace ginibre::kernel
