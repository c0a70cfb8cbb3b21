#include "ginibre/operator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "ginibre/gauss_legendre.hpp"
#include "ginibre/kernel.hpp"
#include "ginibre/linalg.hpp"
#include "ginibre/parallel.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::ops {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;

void require_scheme(const ScalingScheme& s, Statistic stat) {
    if (s.statistic != stat) throw std::invalid_argument("scheme/statistic mismatch");
    if (!(s.gamma > 0.0)) throw ScalingError("scaling scheme has gamma <= 0");
    if (s.n < 2) throw std::invalid_argument("n >= 2 required");
}

// Diagonal integrand in rescaled units: K~(z,z) / (2 (gamma n)^{3/4}).
struct RescaledDiag {
    double n, gamma, cx, sx, sy, norm;
    explicit RescaledDiag(const ScalingScheme& s)
        : n(double(s.n)),
          gamma(s.gamma),
          cx(1.0 + std::sqrt(s.gamma / (4.0 * double(s.n)))),
          sx(std::sqrt(4.0 * s.gamma * double(s.n))),
          sy(std::pow(s.gamma * double(s.n), 0.25)),
          norm(2.0 * std::pow(s.gamma * double(s.n), 0.75)) {}

    complex point(double x, double y) const { return {cx + x / sx, y / sy}; }

    double operator()(double x, double y) const {
        const complex z = point(x, y);
        return n / M_PI * specfun::reg_gamma_upper(n, n * std::norm(z)) / norm;
    }
};

double box_quadrature(const RescaledDiag& f, double t, const QuadSpec& q, int nx, int ny) {
    const auto gx = quad::mapped_rule(nx, t, t + q.x_max_offset);
    const auto gy = quad::mapped_rule(ny, -q.y_half_width, q.y_half_width);
    double sum = 0.0;
    for (int i = 0; i < nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < ny; ++j) row += gy.weights[j] * f(gx.nodes[i], gy.nodes[j]);
        sum += gx.weights[i] * row;
    }
    return sum;
}

TraceResult refined(const std::function<double(int, int)>& eval, int nx, int ny, int rf,
                    TraceResult base) {
    const double coarse = eval(nx / 2, ny / 2);
    double value = eval(nx, ny);
    double err = std::abs(value - coarse);
    bool converged = true;
    if (err > 1e-4 * std::abs(value)) {
        const double fine = eval(nx * rf, ny * rf);
        err = std::abs(fine - value);
        value = fine;
        converged = err <= 1e-4 * std::abs(value);
    }
    base.value = value;
    base.error_estimate = err;
    base.converged = converged;
    return base;
}

}  // namespace

double annulus_a_t(const ScalingScheme& scheme, double t) {
    require_scheme(scheme, Statistic::Radius);
    const double rho = 1.0 + (scheme.gamma + t) / scheme.scale();
    if (!(rho > 0.0))
        throw std::domain_error("annulus threshold: centering radius is not positive at this t");
    return rho * rho;
}

TraceResult trace_rightmost_quadrature(const ScalingScheme& scheme, double t,
                                       const QuadSpec& quad) {
    require_scheme(scheme, Statistic::Rightmost);
    if (std::abs(t) > quad.x_max_offset)
        throw std::domain_error("trace_rightmost_quadrature: |t| beyond the box cap");
    const RescaledDiag f(scheme);
    TraceResult r;
    r.method = TraceMethod::Quadrature2D;
    r.n = scheme.n;
    r.t = t;
    r.statistic = Statistic::Rightmost;
    return refined([&](int nx, int ny) { return box_quadrature(f, t, quad, nx, ny); },
                   quad.nodes_x, quad.nodes_y, quad.refinement_factor, r);
}

TraceResult trace_rightmost_asymptotic(std::int64_t n, double t) {
    if (n < 3) throw std::invalid_argument("trace_rightmost_asymptotic: n >= 3");
    const double L = std::log(double(n));
    // c_n = (25 log log n + 5 log(2 pi^4) - 35)/4
    const double cn = (25.0 * std::log(L) + 5.0 * std::log(2.0 * std::pow(M_PI, 4.0)) - 35.0) / 4.0;
    TraceResult r;
    r.value = std::exp(-t) * (1.0 + (cn - t * t - 5.0 * t) / L);
    r.method = TraceMethod::Asymptotic;
    r.error_estimate = std::exp(-t) / L;
    r.n = n;
    r.t = t;
    r.statistic = Statistic::Rightmost;
    return r;
}

double radius_trace_sum(std::int64_t n, double a) {
    if (!(a > 0.0)) throw std::domain_error("radius_trace_sum: a > 0");
    const double x = double(n) * a;
    const std::int64_t k_start = std::max<std::int64_t>(
        1, std::min<double>(double(n), std::floor(x - 16.0 * std::sqrt(x + 1.0))));
    double q = specfun::reg_gamma_upper(double(k_start), x);
    double pmf =
        std::exp(specfun::log_gamma_prefix(double(k_start), x) - std::log(double(k_start)));
    double total = 0.0, comp_t = 0.0, comp_q = 0.0;
    for (std::int64_t k = k_start; k <= n; ++k) {
        if (q >= 1.0 - 1e-16) {  // every remaining factor contributes ~1
            total += double(n - k + 1);
            return total;
        }
        double y = q - comp_t;
        double s = total + y;
        comp_t = (s - total) - y;
        total = s;
        y = pmf - comp_q;
        s = q + y;
        comp_q = (s - q) - y;
        q = s;
        pmf *= x / double(k + 1);
    }
    return total;
}

TraceResult trace_radius_exact(const ScalingScheme& scheme, double t) {
    const double a = annulus_a_t(scheme, t);
    const double n = double(scheme.n);
    const double t1 = n * (a - 1.0) * specfun::reg_gamma_upper(n, n * a);
    const double t2 = specfun::gamma_prefix(n, n * a);
    TraceResult r;
    r.method = TraceMethod::ExactIdentity;
    r.n = scheme.n;
    r.t = t;
    r.statistic = Statistic::Radius;
    r.value = t2 - t1;
    r.error_estimate = std::max(1e-15, 1e-12 * std::abs(r.value));
    if (t1 > 0.0 && std::abs(r.value) < 1e-12 * t2) {
        r.cancellation_flag = true;
        r.value = radius_trace_sum(scheme.n, a);
        r.error_estimate = std::max(1e-15, 1e-10 * r.value);
    }
    if (r.value < 0.0) r.value = 0.0;
    return r;
}

TraceResult trace_radius_asymptotic(std::int64_t n, double t) {
    if (n < 16) throw std::invalid_argument("trace_radius_asymptotic: n >= 16");
    const double L = std::log(double(n));
    const double ll = std::log(L);
    const double gp = L - 2.0 * ll - kLn2Pi;
    if (!(gp > 0.0)) throw ScalingError("trace_radius_asymptotic: gamma'_n <= 0 at this n");
    const double d_n = 2.0 * ll + kLn2Pi;
    TraceResult r;
    r.value = std::exp(-t) * (1.0 + (d_n - t * t - 4.0 * t) / gp);
    r.method = TraceMethod::Asymptotic;
    r.error_estimate = std::exp(-t) / L;
    r.n = n;
    r.t = t;
    r.statistic = Statistic::Radius;
    return r;
}

TraceResult trace_real_rightmost_quadrature(const ScalingScheme& scheme, double t,
                                            const QuadSpec& quad, bool unit_phi) {
    require_scheme(scheme, Statistic::Rightmost);
    const RescaledDiag f(scheme);
    const std::int64_t n = scheme.n;
    // Phi transition layer in rescaled y units.
    const double layer = std::min(
        0.5 * quad.y_half_width,
        8.0 * std::pow(scheme.gamma, 0.25) / (std::sqrt(2.0) * std::pow(double(n), 0.25)));

    auto eval = [&](int nx, int ny) {
        const auto gx = quad::mapped_rule(nx, t, t + quad.x_max_offset);
        double sum = 0.0;
        const std::pair<double, double> panels[] = {{0.0, layer}, {layer, quad.y_half_width}};
        for (const auto& panel : panels) {
            const auto gy = quad::mapped_rule(ny, panel.first, panel.second);
            for (int i = 0; i < nx; ++i) {
                double row = 0.0;
                for (int j = 0; j < ny; ++j) {
                    const double d = f(gx.nodes[i], gy.nodes[j]);
                    const double phi =
                        unit_phi ? 1.0 : kernel::phi_diag(n, f.point(gx.nodes[i], gy.nodes[j]));
                    row += gy.weights[j] * phi * d;
                }
                sum += gx.weights[i] * row;
            }
        }
        return 2.0 * sum;
    };
    TraceResult r;
    r.method = TraceMethod::Quadrature2D;
    r.n = n;
    r.t = t;
    r.statistic = Statistic::Rightmost;
    return refined(eval, quad.nodes_x, quad.nodes_y, quad.refinement_factor, r);
}

TraceResult trace_real_radius_quadrature(const ScalingScheme& scheme, double t,
                                         const QuadSpec& quad, bool unit_phi) {
    const double a = annulus_a_t(scheme, t);
    const double n = double(scheme.n);
    const double r_lo = std::sqrt(a);
    const double r_hi = 1.0 + (scheme.gamma + t + quad.x_max_offset) / scheme.scale();

    auto eval = [&](int nr, int nth) {
        const auto gr = quad::mapped_rule(nr, r_lo, r_hi);
        double sum = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double r = gr.nodes[i];
            const double diag = n / M_PI * specfun::reg_gamma_upper(n, n * r * r);
            // inner angular integral over (0, pi), symmetric about pi/2
            double theta_int;
            if (unit_phi) {
                theta_int = M_PI;
            } else {
                const double layer = std::min(M_PI / 4.0, 8.0 / (std::sqrt(2.0 * n) * r));
                theta_int = 0.0;
                const std::pair<double, double> panels[] = {{0.0, layer}, {layer, M_PI / 2.0}};
                for (const auto& panel : panels) {
                    const auto gt = quad::mapped_rule(nth, panel.first, panel.second);
                    for (int j = 0; j < nth; ++j) {
                        const double th = gt.nodes[j];
                        theta_int += gt.weights[j] *
                                     kernel::phi_diag(std::int64_t(n),
                                                      complex(r * std::cos(th), r * std::sin(th)));
                    }
                }
                theta_int *= 2.0;
            }
            sum += gr.weights[i] * r * diag * theta_int;
        }
        return 2.0 * sum;
    };
    TraceResult res;
    res.method = TraceMethod::Quadrature2D;
    res.n = scheme.n;
    res.t = t;
    res.statistic = Statistic::Radius;
    return refined(eval, quad.nodes_x, quad.nodes_y, quad.refinement_factor, res);
}

QuadValue hs_norm_sq_radius(const ScalingScheme& scheme, double t, const QuadSpec& quad) {
    if (scheme.n > 2000)
        throw std::invalid_argument("hs_norm_sq_radius: validation range is n <= 2000");
    const double a = annulus_a_t(scheme, t);
    const double n = double(scheme.n);
    const double r_lo = std::sqrt(a);
    const double r_hi = 1.0 + (scheme.gamma + t + quad.x_max_offset) / scheme.scale();
    const double phi_w = std::min(M_PI / 2.0, 24.0 / std::sqrt(n * std::max(a, 0.25)));

    auto eval = [&](int nr, int nphi) {
        const auto gr = quad::mapped_rule(nr, r_lo, r_hi);
        double sum = 0.0;
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < nr; ++j) {
                const double r1 = gr.nodes[i], r2 = gr.nodes[j];
                double inner = 0.0;
                const std::pair<double, double> panels[] = {{0.0, phi_w}, {phi_w, M_PI}};
                for (const auto& panel : panels) {
                    const auto gp = quad::mapped_rule(nphi, panel.first, panel.second);
                    for (int k = 0; k < nphi; ++k) {
                        inner += gp.weights[k] *
                                 kernel::ktilde_offdiag_sq(
                                     scheme.n, complex(r1, 0.0),
                                     std::polar(r2, gp.nodes[k]));
                    }
                }
                sum += gr.weights[i] * gr.weights[j] * r1 * r2 * inner;
            }
        }
        return 4.0 * M_PI * sum;  // 2 pi from the free angle, 2 from phi symmetry
    };
    const double coarse = eval(quad.nodes_x / 2, quad.nodes_y / 2);
    double value = eval(quad.nodes_x, quad.nodes_y);
    double err = std::abs(value - coarse);
    bool converged = err <= 1e-3 * std::max(value, 1e-300);
    if (!converged) {
        const double fine =
            eval(quad.nodes_x * quad.refinement_factor, quad.nodes_y * quad.refinement_factor);
        err = std::abs(fine - value);
        value = fine;
        converged = err <= 1e-3 * std::max(value, 1e-300);
    }
    return {value, err, converged};
}

namespace {

// Gram factor of the Nystrom matrix: G = B B^H with
// B_{il} = sqrt(w_i) sqrt(n/pi) e^{-n|z_i|^2/2} (sqrt(n) z_i)^l / sqrt(l!).
std::vector<double> nystrom_eigenvalues(const ScalingScheme& scheme, double t,
                                        const QuadSpec& quad, int nx, int ny) {
    const RescaledDiag geom(scheme);
    const double n = geom.n;
    const auto gx = quad::mapped_rule(nx, t, t + quad.x_max_offset);
    const auto gy = quad::mapped_rule(ny, -quad.y_half_width, quad.y_half_width);
    const int rows = nx * ny;
    const int cols = int(scheme.n);

    std::vector<double> lnfact(cols);
    for (int l = 0; l < cols; ++l) lnfact[l] = specfun::log_gamma(double(l) + 1.0);

    std::vector<complex> b(std::size_t(rows) * cols);
    const double jac = 1.0 / geom.norm;  // d^2 z = dx dy / (2 (gamma n)^{3/4})
    int i = 0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy, ++i) {
            const complex z = geom.point(gx.nodes[ix], gy.nodes[iy]);
            const double w = gx.weights[ix] * gy.weights[iy] * jac;
            const double base = 0.5 * std::log(w * n / M_PI) - 0.5 * n * std::norm(z);
            const double labs = std::log(std::sqrt(n) * std::abs(z));
            const double ang = std::arg(z);
            for (int l = 0; l < cols; ++l) {
                const double m = base + l * labs - 0.5 * lnfact[l];
                b[std::size_t(i) + std::size_t(l) * rows] =
                    m < -745.0 ? complex(0.0, 0.0) : std::polar(std::exp(m), ang * l);
            }
        }
    }
    auto sv = linalg::singular_values(std::move(b), rows, cols);
    for (auto& s : sv) s = s * s;
    return sv;
}

double det_from_eigs(const std::vector<double>& eigs, FredholmResult& out) {
    double logdet = 0.0;
    for (double lam : eigs) {
        out.max_eigenvalue = std::max(out.max_eigenvalue, lam);
        if (lam > 1.0 + 1e-8) out.eigenvalue_overflow = true;
        double clipped = lam;
        if (clipped > 1.0 - 1e-15) {
            clipped = 1.0 - 1e-15;
            ++out.clipped;
        }
        if (clipped < 0.0) clipped = 0.0;
        logdet += std::log1p(-clipped);
    }
    return std::exp(logdet);
}

}  // namespace

FredholmResult fredholm_det_rightmost(const ScalingScheme& scheme, double t,
                                      const QuadSpec& quad) {
    require_scheme(scheme, Statistic::Rightmost);
    if (scheme.n > 5000)
        throw std::invalid_argument("fredholm_det_rightmost: n <= 5000 (off-diagonal range)");
    FredholmResult res;
    const auto eig = nystrom_eigenvalues(scheme, t, quad, quad.nodes_x, quad.nodes_y);
    res.det = det_from_eigs(eig, res);
    for (double lam : eig) {
        res.trace += lam;
        res.hs_norm_sq += lam * lam;
    }
    FredholmResult coarse;
    const int cx = std::max(8, 3 * quad.nodes_x / 4), cy = std::max(8, 3 * quad.nodes_y / 4);
    const double det2 = det_from_eigs(nystrom_eigenvalues(scheme, t, quad, cx, cy), coarse);
    res.refinement_gap = std::abs(res.det - det2);
    res.converged = res.refinement_gap <= 1e-4;
    return res;
}

double det_error_bound(double trace, double hs_norm) {
    if (!(trace >= 0.0) || !(hs_norm >= 0.0))
        throw std::domain_error("det_error_bound: nonnegative inputs required");
    if (hs_norm == 0.0) return 0.0;
    return std::exp(std::log(hs_norm) + 0.5 * (hs_norm + 1.0) * (hs_norm + 1.0) - trace);
}

std::vector<double> trace_curve(const ScalingScheme& scheme, const std::vector<double>& ts,
                                const QuadSpec& quad, EnsembleKind ensemble, int workers) {
    std::vector<double> out(ts.size());
    parallel_for_chunks(ts.size(), workers, [&](std::size_t i) {
        const double t = ts[i];
        if (ensemble == EnsembleKind::RealGinibre) {
            out[i] = scheme.statistic == Statistic::Rightmost
                         ? trace_real_rightmost_quadrature(scheme, t, quad).value
                         : trace_real_radius_quadrature(scheme, t, quad).value;
        } else {
            out[i] = scheme.statistic == Statistic::Rightmost
                         ? trace_rightmost_quadrature(scheme, t, quad).value
                         : trace_radius_exact(scheme, t).value;
        }
    });
    return out;
}

}  // namespace ginibre::ops
