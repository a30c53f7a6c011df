#pragma once

#include <complex>
#include <cstddef>

namespace insar::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void add_scalar(const double* x, double* y, std::size_t n);
void cmul_scalar(const std::complex<double>* a, const std::complex<double>* b,
                 std::complex<double>* out, std::size_t n);
void conj_mul_scalar(const std::complex<double>* a, const std::complex<double>* b,
                     std::complex<double>* out, std::size_t n);
void norm_sq_scalar(const std::complex<double>* a, double* out, std::size_t n);

#if defined(INSAR_HAVE_AVX2)
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void add_avx2(const double* x, double* y, std::size_t n);
void cmul_avx2(const std::complex<double>* a, const std::complex<double>* b,
               std::complex<double>* out, std::size_t n);
void conj_mul_avx2(const std::complex<double>* a, const std::complex<double>* b,
                   std::complex<double>* out, std::size_t n);
void norm_sq_avx2(const std::complex<double>* a, double* out, std::size_t n);
#endif

}  // namespace insar::kernels::detail
