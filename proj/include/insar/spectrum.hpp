#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

/// Floor added to |X| before taking the log, and the resulting dB floor.
inline constexpr double kLogMagnitudeEpsilon = 1e-12;
inline constexpr double kLogMagnitudeFloorDb = -240.0;

/// 20*log10(|v| + eps), clamped to the -240 dB floor.
double log_magnitude_db(double magnitude);

/// Unnormalized 2-D DFT of an image. Bins are stored DC-at-origin: bin k of
/// an axis of length M sits at normalized frequency 2*pi*k/M, and bins with
/// k >= M/2 stand for the negative frequency 2*pi*k/M - 2*pi.
class Spectrum {
 public:
  Spectrum(std::size_t rows, std::size_t cols, std::vector<cdouble> bins);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble& operator()(std::size_t k, std::size_t l) { return bins_[k * cols_ + l]; }
  const cdouble& operator()(std::size_t k, std::size_t l) const { return bins_[k * cols_ + l]; }
  std::span<const cdouble> bins() const { return bins_; }
  std::span<cdouble> bins() { return bins_; }

  /// Bin at signed frequency indices (k, l), wrapped modulo the grid.
  const cdouble& at_signed(std::ptrdiff_t k, std::ptrdiff_t l) const;

  /// Log-magnitude view (dB). With `centered` the DC bin is moved to
  /// (rows/2, cols/2) for display.
  RealTensor log_magnitude(bool centered = false) const;

  double energy() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cdouble> bins_;
};

/// Normalized frequency of bin k on an axis of length n, in [-pi, pi).
double bin_frequency(std::size_t k, std::size_t n);
/// Nearest bin (in [0, n)) to normalized frequency w.
std::size_t frequency_bin(double w, std::size_t n);

/// Forward DFT, unnormalized.
Spectrum dft2(const ComplexImage& x);
/// Inverse DFT with 1/(MN) normalization.
ComplexImage idft2(const Spectrum& s);

/// Raw in-place 2-D transform on a row-major buffer; no normalization.
void fft2_inplace(std::span<cdouble> data, std::size_t rows, std::size_t cols, bool inverse);

}  // namespace insar
