#pragma once

#include <complex>
#include <vector>

namespace ginibre::linalg {

// All eigenvalues of a dense column-major matrix (LAPACK zgeev/dgeev).
std::vector<std::complex<double>> eigenvalues(const std::vector<std::complex<double>>& a, int n);
std::vector<std::complex<double>> eigenvalues(const std::vector<double>& a, int n);

// Singular values of a dense column-major rows x cols matrix (zgesdd),
// descending.
std::vector<double> singular_values(std::vector<std::complex<double>> a, int rows, int cols);

// Cap the BLAS thread pool (1 when driving many small solves from worker
// threads; hardware default otherwise).
void set_blas_threads(int n);

}  // namespace ginibre::linalg
