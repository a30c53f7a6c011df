// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a CPUID check, so nothing here may be inlined into generic code.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace insar::kernels::detail {

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void add_avx2(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] += x[i];
}

// Two interleaved (re, im) pairs per register. Products are rounded
// separately, as in the scalar loop, so x * conj(x) stays exactly real.
void cmul_avx2(const std::complex<double>* a, const std::complex<double>* b,
               std::complex<double>* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    const __m256d cross = _mm256_mul_pd(a_sw, b_im);  // [ai*bi, ar*bi]
    _mm256_storeu_pd(po + 2 * i, _mm256_addsub_pd(_mm256_mul_pd(va, b_re), cross));
  }
  if (i < n) cmul_scalar(a + i, b + i, out + i, n - i);
}

void conj_mul_avx2(const std::complex<double>* a, const std::complex<double>* b,
                   std::complex<double>* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    const __m256d neg_cross = _mm256_xor_pd(_mm256_mul_pd(a_sw, b_im), _mm256_set1_pd(-0.0));
    _mm256_storeu_pd(po + 2 * i, _mm256_addsub_pd(_mm256_mul_pd(va, b_re), neg_cross));
  }
  if (i < n) conj_mul_scalar(a + i, b + i, out + i, n - i);
}

void norm_sq_avx2(const std::complex<double>* a, double* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(pa + 2 * i);
    const __m256d hi = _mm256_loadu_pd(pa + 2 * i + 4);
    // hadd yields [n0, n2, n1, n3]
    const __m256d sums = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(sums, 0xD8));
  }
  if (i < n) norm_sq_scalar(a + i, out + i, n - i);
}

}  // namespace insar::kernels::detail
