#include "kernels_impl.hpp"

namespace insar::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

// Written out on the components so the result does not depend on the
// library's operator* (which adds NaN/Inf recovery branches).
void cmul_scalar(const std::complex<double>* a, const std::complex<double>* b,
                 std::complex<double>* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

void conj_mul_scalar(const std::complex<double>* a, const std::complex<double>* b,
                     std::complex<double>* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br + ai * bi, ai * br - ar * bi};
  }
}

void norm_sq_scalar(const std::complex<double>* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = re * re + im * im;
  }
}

}  // namespace insar::kernels::detail
