#include "insar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/fft.hpp"

namespace insar {

double log_magnitude_db(double magnitude) {
  return std::max(kLogMagnitudeFloorDb, 20.0 * std::log10(magnitude + kLogMagnitudeEpsilon));
}

Spectrum::Spectrum(std::size_t rows, std::size_t cols, std::vector<cdouble> bins)
    : rows_(rows), cols_(cols), bins_(std::move(bins)) {
  if (rows == 0 || cols == 0) throw InvalidInputError("spectrum dimensions must be non-zero");
  if (bins_.size() != rows * cols) throw InvalidInputError("spectrum bin count mismatch");
}

const cdouble& Spectrum::at_signed(std::ptrdiff_t k, std::ptrdiff_t l) const {
  const auto r = static_cast<std::ptrdiff_t>(rows_);
  const auto c = static_cast<std::ptrdiff_t>(cols_);
  const auto kk = static_cast<std::size_t>(((k % r) + r) % r);
  const auto ll = static_cast<std::size_t>(((l % c) + c) % c);
  return (*this)(kk, ll);
}

RealTensor Spectrum::log_magnitude(bool centered) const {
  RealTensor out(rows_, cols_, 1);
  const std::size_t dk = centered ? rows_ / 2 : 0;
  const std::size_t dl = centered ? cols_ / 2 : 0;
  for (std::size_t k = 0; k < rows_; ++k) {
    for (std::size_t l = 0; l < cols_; ++l) {
      out((k + dk) % rows_, (l + dl) % cols_) = log_magnitude_db(std::abs((*this)(k, l)));
    }
  }
  return out;
}

double Spectrum::energy() const {
  double e = 0.0;
  for (const auto& v : bins_) e += std::norm(v);
  return e;
}

double bin_frequency(std::size_t k, std::size_t n) {
  const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return 2 * k >= n ? w - 2.0 * std::numbers::pi : w;
}

std::size_t frequency_bin(double w, std::size_t n) {
  const double pos = w * static_cast<double>(n) / (2.0 * std::numbers::pi);
  const auto nn = static_cast<long long>(n);
  const long long k = std::llround(pos);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

void fft2_inplace(std::span<cdouble> data, std::size_t rows, std::size_t cols, bool inverse) {
  if (data.size() != rows * cols) throw InvalidInputError("fft2 buffer size mismatch");
  const auto dir = inverse ? FftDirection::Inverse : FftDirection::Forward;
  const FftPlan row_plan(cols);
  for (std::size_t m = 0; m < rows; ++m) row_plan.execute(data.subspan(m * cols, cols), dir);
  if (rows == 1) return;
  const FftPlan col_plan(rows);
  std::vector<cdouble> column(rows);
  for (std::size_t n = 0; n < cols; ++n) {
    for (std::size_t m = 0; m < rows; ++m) column[m] = data[m * cols + n];
    col_plan.execute(column, dir);
    for (std::size_t m = 0; m < rows; ++m) data[m * cols + n] = column[m];
  }
}

Spectrum dft2(const ComplexImage& x) {
  std::vector<cdouble> bins(x.data().begin(), x.data().end());
  fft2_inplace(bins, x.rows(), x.cols(), false);
  return Spectrum(x.rows(), x.cols(), std::move(bins));
}

ComplexImage idft2(const Spectrum& s) {
  std::vector<cdouble> samples(s.bins().begin(), s.bins().end());
  fft2_inplace(samples, s.rows(), s.cols(), true);
  const double scale = 1.0 / static_cast<double>(s.rows() * s.cols());
  for (auto& v : samples) v *= scale;
  return ComplexImage(s.rows(), s.cols(), std::move(samples));
}

}  // namespace insar
