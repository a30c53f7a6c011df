#pragma once

// Data-parallel inner loops shared by the convolution, FFT modulation and
// coherence code. Every kernel has a scalar reference implementation; an
// AVX2/FMA variant is selected at runtime when the CPU supports it.
//
// The selection can be pinned with the environment variable
// INSAR_KERNELS=scalar|avx2 (read once, on first use).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace insar::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y[i] += x[i]
  void (*add)(const double* x, double* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*cmul)(const std::complex<double>* a, const std::complex<double>* b,
               std::complex<double>* out, std::size_t n);
  // out[i] = a[i] * conj(b[i])
  void (*conj_mul)(const std::complex<double>* a, const std::complex<double>* b,
                   std::complex<double>* out, std::size_t n);
  // out[i] = |a[i]|^2
  void (*norm_sq)(const std::complex<double>* a, double* out, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);
/// Table chosen at first use: the best supported ISA unless INSAR_KERNELS overrides it.
const KernelTable& active();
std::string_view isa_name(Isa isa);

// Span front-ends on the active table. Sizes must agree; this is checked.
void axpy(double a, std::span<const double> x, std::span<double> y);
void add(std::span<const double> x, std::span<double> y);
void cmul(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
          std::span<std::complex<double>> out);
void conj_mul(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
              std::span<std::complex<double>> out);
void norm_sq(std::span<const std::complex<double>> a, std::span<double> out);

}  // namespace insar::kernels
