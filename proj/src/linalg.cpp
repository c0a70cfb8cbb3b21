#include "ginibre/linalg.hpp"

#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace ginibre::linalg {

using cplx = std::complex<double>;

void set_blas_threads(int n) { openblas_set_num_threads(n); }

std::vector<cplx> eigenvalues(const std::vector<cplx>& a, int n) {
    if (a.size() != std::size_t(n) * n) throw std::invalid_argument("eigenvalues: bad size");
    std::vector<cplx> work(a);
    std::vector<cplx> w(n);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(),
                                   nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("zgeev failed, info=" + std::to_string(info));
    return w;
}

std::vector<cplx> eigenvalues(const std::vector<double>& a, int n) {
    if (a.size() != std::size_t(n) * n) throw std::invalid_argument("eigenvalues: bad size");
    std::vector<double> work(a);
    std::vector<double> wr(n), wi(n);
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                                   wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("dgeev failed, info=" + std::to_string(info));
    std::vector<cplx> w(n);
    for (int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
    return w;
}

std::vector<double> singular_values(std::vector<cplx> a, int rows, int cols) {
    if (a.size() != std::size_t(rows) * cols)
        throw std::invalid_argument("singular_values: bad size");
    const int k = std::min(rows, cols);
    std::vector<double> s(k);
    const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows, s.data(),
                                    nullptr, rows, nullptr, cols);
    if (info != 0) throw std::runtime_error("zgesdd failed, info=" + std::to_string(info));
    return s;
}

}  // namespace ginibre::linalg
