#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ginibre/linalg.hpp"
#include "ginibre/rng.hpp"
#include "ginibre/types.hpp"

namespace ginibre::sampler {

enum class EntryLawKind { ComplexGaussian, RealGaussian, ComplexRademacherPhase, ComplexUniformPhase };

// One draw of the unnormalized entry xi (mean 0, E|xi|^2 = 1, E xi^2 = 0
// for the complex kinds).
complex draw_entry(EntryLawKind law, Rng& rng);

// Sorted sample store; F(x) = #{samples <= x}/count (right-continuous).
class EmpiricalCdf {
  public:
    EmpiricalCdf() = default;
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;
    std::size_t count() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> values_;
};

// Exact KS statistic sup_x |F_hat - F| against a continuous CDF.
double ks_statistic(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf);
// Two-sample KS statistic.
double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);
// DKW envelope sqrt(log(2/alpha) / (2 count)).
double dkw_bound(std::size_t count, double alpha);
// Grid-based sup distance |F_hat - F| over the given nodes.
double empirical_sup_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                              const std::vector<double>& grid);

// Injected eigenvalue capability: given a dense column-major matrix,
// return all eigenvalues.  Opaque and deterministic from the toolkit's
// point of view.
struct EigenvalueBackend {
    std::function<std::vector<complex>(const std::vector<complex>&, int)> complex_eigs;
    std::function<std::vector<complex>(const std::vector<double>&, int)> real_eigs;
};

EigenvalueBackend lapack_backend();

// O(sqrt(n))-per-sample spectral-radius sampler: max_k Gamma(k)/n over the
// window k in [n - 14 sqrt(n), n], with a certified fallback to the full
// draw when the window max falls below the discard threshold.
EmpiricalCdf sample_radius_kostlan(std::int64_t n, std::size_t count, const SeedSpec& seed,
                                   int workers = 0);

// Dense-eigensolver route: raw max Re sigma or max |sigma| of matrices
// with i.i.d. n^{-1/2} xi entries.  n <= 4096.
EmpiricalCdf sample_extreme_eig(std::int64_t n, std::size_t count, EnsembleKind ensemble,
                                Statistic statistic, EntryLawKind entry_law,
                                const SeedSpec& seed,
                                const EigenvalueBackend& backend = lapack_backend(),
                                int workers = 0);

// Sample dump: header "# <method> n=<n> seed=<seed> count=<count>" then one
// value per line at 17 significant digits.
void write_samples(const std::string& path, const std::string& method, std::int64_t n,
                   std::uint64_t seed, const EmpiricalCdf& ecdf);

}  // namespace ginibre::sampler
