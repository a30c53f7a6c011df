#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace insar {

enum class FftDirection { Forward, Inverse };

/// Precomputed 1-D complex FFT of a fixed length. Powers of two run an
/// iterative radix-2 transform; any other length goes through Bluestein's
/// chirp-z algorithm on a power-of-two grid.
///
/// Both directions are unnormalized: Forward uses e^{-2 pi j k n / N},
/// Inverse e^{+2 pi j k n / N}. A plan is immutable after construction and may
/// be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void execute(std::span<std::complex<double>> data, FftDirection dir) const;

 private:
  void radix2(std::span<std::complex<double>> data, FftDirection dir) const;
  void bluestein(std::span<std::complex<double>> data, FftDirection dir) const;

  std::size_t n_;
  bool pow2_;
  // radix-2 state (length n_, or the Bluestein grid length when !pow2_)
  std::size_t grid_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;  // e^{-2 pi j k / grid}, k < grid/2
  // Bluestein state
  std::vector<std::complex<double>> chirp_;       // e^{-pi j k^2 / n}, k < n
  std::vector<std::complex<double>> chirp_fft_;   // FFT of the conjugate chirp filter
};

/// One-shot 1-D transform (builds a plan internally).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x,
                                      FftDirection dir = FftDirection::Forward);

bool is_power_of_two(std::size_t n);

}  // namespace insar
