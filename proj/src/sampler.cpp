#include "ginibre/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ginibre/parallel.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::sampler {

namespace {

constexpr std::size_t kChunk = 1024;       // fixed task size, independent of workers
constexpr std::size_t kEigChunk = 16;

double certified_discard_threshold(std::int64_t n, std::int64_t k_lo) {
    // The discarded factors are k < k_lo.  Pick tau with
    // sum_{k < k_lo} P(Gamma(k) >= tau) <= 1e-10; terms decay fast in
    // decreasing k, so the sum is evaluated until it stops moving.
    double tau = double(n) - 6.0 * std::sqrt(double(n));
    for (int attempt = 0; attempt < 4; ++attempt) {
        double total = 0.0;
        for (std::int64_t k = k_lo - 1; k >= 1; --k) {
            const double q = specfun::reg_gamma_upper(double(k), tau);
            total += q;
            if (q < 1e-16 * std::max(total, 1e-300)) break;
        }
        if (total <= 1e-10) return tau;
        tau += std::sqrt(double(n));
    }
    return 0.0;  // always fall back to the full draw
}

double kostlan_one_sample(std::int64_t n, std::int64_t k_lo, double tau, Rng& rng) {
    double best = 0.0;
    for (std::int64_t k = k_lo; k <= n; ++k) best = std::max(best, rng.gamma(double(k)));
    if (k_lo > 1 && best < tau) {
        for (std::int64_t k = 1; k < k_lo; ++k) best = std::max(best, rng.gamma(double(k)));
    }
    return std::sqrt(best / double(n));
}

}  // namespace

complex draw_entry(EntryLawKind law, Rng& rng) {
    switch (law) {
        case EntryLawKind::ComplexGaussian:
            return {rng.normal() * M_SQRT1_2, rng.normal() * M_SQRT1_2};
        case EntryLawKind::RealGaussian:
            return {rng.normal(), 0.0};
        case EntryLawKind::ComplexRademacherPhase: {
            switch (rng.next_u64() & 3ULL) {
                case 0: return {1.0, 0.0};
                case 1: return {0.0, 1.0};
                case 2: return {-1.0, 0.0};
                default: return {0.0, -1.0};
            }
        }
        case EntryLawKind::ComplexUniformPhase:
            return std::polar(1.0, 2.0 * M_PI * rng.uniform());
    }
    throw std::invalid_argument("draw_entry: unknown law");
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : values_(std::move(samples)) {
    std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const {
    if (values_.empty()) throw std::logic_error("EmpiricalCdf: empty sample");
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return double(it - values_.begin()) / double(values_.size());
}

double ks_statistic(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf) {
    const auto& v = ecdf.values();
    const double n = double(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max(d, std::max((double(i) + 1.0) / n - f, f - double(i) / n));
    }
    return d;
}

double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    const auto& x = a.values();
    const auto& y = b.values();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j]) ++i; else ++j;
        d = std::max(d, std::abs(double(i) / x.size() - double(j) / y.size()));
    }
    return d;
}

double dkw_bound(std::size_t count, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * double(count)));
}

double empirical_sup_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                              const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empirical_sup_distance: empty grid");
    double d = 0.0;
    for (double x : grid) d = std::max(d, std::abs(ecdf(x) - cdf(x)));
    return d;
}

EigenvalueBackend lapack_backend() {
    EigenvalueBackend b;
    b.complex_eigs = [](const std::vector<complex>& a, int n) {
        return linalg::eigenvalues(a, n);
    };
    b.real_eigs = [](const std::vector<double>& a, int n) { return linalg::eigenvalues(a, n); };
    return b;
}

EmpiricalCdf sample_radius_kostlan(std::int64_t n, std::size_t count, const SeedSpec& seed,
                                   int workers) {
    if (n < 1) throw std::invalid_argument("sample_radius_kostlan: n >= 1");
    const std::int64_t k_lo =
        std::max<std::int64_t>(1, std::int64_t(std::ceil(double(n) - 14.0 * std::sqrt(double(n)))));
    const double tau = k_lo > 1 ? certified_discard_threshold(n, k_lo) : 0.0;

    std::vector<double> values(count);
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    parallel_for_chunks(chunks, workers, [&](std::size_t c) {
        Rng rng(seed, c);
        const std::size_t lo = c * kChunk, hi = std::min(count, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) values[i] = kostlan_one_sample(n, k_lo, tau, rng);
    });
    return EmpiricalCdf(std::move(values));
}

EmpiricalCdf sample_extreme_eig(std::int64_t n, std::size_t count, EnsembleKind ensemble,
                                Statistic statistic, EntryLawKind entry_law, const SeedSpec& seed,
                                const EigenvalueBackend& backend, int workers) {
    if (n < 1 || n > 4096)
        throw std::invalid_argument("sample_extreme_eig: dense eigensolver capacity is n <= 4096");
    if (ensemble == EnsembleKind::RealGinibre) entry_law = EntryLawKind::RealGaussian;
    if (ensemble == EnsembleKind::ComplexGinibre) entry_law = EntryLawKind::ComplexGaussian;
    const bool real_matrix = entry_law == EntryLawKind::RealGaussian;
    const double scale = 1.0 / std::sqrt(double(n));
    const int dim = int(n);

    linalg::set_blas_threads(1);
    std::vector<double> values(count);
    const std::size_t chunks = (count + kEigChunk - 1) / kEigChunk;
    parallel_for_chunks(chunks, workers, [&](std::size_t c) {
        Rng rng(seed, c);
        const std::size_t lo = c * kEigChunk, hi = std::min(count, lo + kEigChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            std::vector<complex> eigs;
            try {
                if (real_matrix) {
                    std::vector<double> m(std::size_t(n) * n);
                    for (auto& e : m) e = scale * draw_entry(entry_law, rng).real();
                    eigs = backend.real_eigs(m, dim);
                } else {
                    std::vector<complex> m(std::size_t(n) * n);
                    for (auto& e : m) e = scale * draw_entry(entry_law, rng);
                    eigs = backend.complex_eigs(m, dim);
                }
            } catch (const std::exception& err) {
                throw std::runtime_error(
                    "eigenvalue backend failed (reproduce with matrix stream seed=" +
                    std::to_string(seed.stream_id(c)) + "): " + err.what());
            }
            double best = -1e300;
            for (const complex& ev : eigs)
                best = std::max(best,
                                statistic == Statistic::Rightmost ? ev.real() : std::abs(ev));
            values[i] = best;
        }
    });
    return EmpiricalCdf(std::move(values));
}

void write_samples(const std::string& path, const std::string& method, std::int64_t n,
                   std::uint64_t seed, const EmpiricalCdf& ecdf) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_samples: cannot open " + path);
    char buf[64];
    out << "# " << method << " n=" << n << " seed=" << seed << " count=" << ecdf.count() << "\n";
    for (double v : ecdf.values()) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

}  // namespace ginibre::sampler
