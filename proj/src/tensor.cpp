#include "insar/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "insar/errors.hpp"

namespace insar {

namespace {

void check_dims(std::size_t rows, std::size_t cols, std::size_t channels) {
  if (rows == 0 || cols == 0 || channels == 0) {
    throw InvalidInputError("tensor dimensions must be non-zero, got " + std::to_string(rows) +
                            "x" + std::to_string(cols) + "x" + std::to_string(channels));
  }
}

}  // namespace

ComplexImage::ComplexImage(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols, 1);
  data_.assign(rows * cols, cdouble{});
}

ComplexImage::ComplexImage(std::size_t rows, std::size_t cols, std::vector<cdouble> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols, 1);
  if (data_.size() != rows * cols) {
    throw InvalidInputError("complex image data length does not match dimensions");
  }
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidInputError("complex image contains a non-finite sample");
    }
  }
}

RealTensor::RealTensor(std::size_t rows, std::size_t cols, std::size_t channels)
    : rows_(rows), cols_(cols), channels_(channels) {
  check_dims(rows, cols, channels);
  data_.assign(rows * cols * channels, 0.0);
}

RealTensor::RealTensor(std::size_t rows, std::size_t cols, std::size_t channels,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), channels_(channels), data_(std::move(data)) {
  check_dims(rows, cols, channels);
  if (data_.size() != rows * cols * channels) {
    throw InvalidInputError("real tensor data length does not match dimensions");
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidInputError("real tensor contains a non-finite sample");
  }
}

std::vector<double> RealTensor::plane(std::size_t c) const {
  std::vector<double> out(rows_ * cols_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * channels_ + c];
  return out;
}

void RealTensor::set_plane(std::size_t c, std::span<const double> plane) {
  if (plane.size() != rows_ * cols_ || c >= channels_) {
    throw InvalidInputError("plane does not fit tensor");
  }
  for (std::size_t i = 0; i < plane.size(); ++i) data_[i * channels_ + c] = plane[i];
}

ComplexImage to_complex(const RealTensor& t, std::size_t channel) {
  if (channel >= t.channels()) throw InvalidInputError("channel index out of range");
  ComplexImage out(t.rows(), t.cols());
  for (std::size_t m = 0; m < t.rows(); ++m)
    for (std::size_t n = 0; n < t.cols(); ++n) out(m, n) = t(m, n, channel);
  return out;
}

namespace {

template <typename F>
RealTensor map_pixels(const ComplexImage& x, F f) {
  RealTensor out(x.rows(), x.cols(), 1);
  auto src = x.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f(src[i]);
  return out;
}

}  // namespace

RealTensor real_part(const ComplexImage& x) {
  return map_pixels(x, [](cdouble v) { return v.real(); });
}

RealTensor imag_part(const ComplexImage& x) {
  return map_pixels(x, [](cdouble v) { return v.imag(); });
}

RealTensor magnitude(const ComplexImage& x) {
  return map_pixels(x, [](cdouble v) { return std::abs(v); });
}

RealTensor phase(const ComplexImage& x) { return map_pixels(x, wrapped_arg); }

double wrapped_arg(cdouble z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
  double a = std::arg(z);
  if (a >= std::numbers::pi) a -= 2.0 * std::numbers::pi;
  return a;
}

RealTensor stack_channels(std::span<const RealTensor> planes) {
  if (planes.empty()) throw InvalidInputError("no channels to stack");
  const auto rows = planes[0].rows();
  const auto cols = planes[0].cols();
  std::size_t total = 0;
  for (const auto& p : planes) {
    if (p.rows() != rows || p.cols() != cols) {
      throw InvalidInputError("channel planes differ in shape");
    }
    total += p.channels();
  }
  RealTensor out(rows, cols, total);
  std::size_t c0 = 0;
  for (const auto& p : planes) {
    for (std::size_t c = 0; c < p.channels(); ++c) out.set_plane(c0 + c, p.plane(c));
    c0 += p.channels();
  }
  return out;
}

double max_abs_diff(const ComplexImage& a, const ComplexImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInputError("shape mismatch in max_abs_diff");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

double max_abs_diff(const RealTensor& a, const RealTensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.channels() != b.channels()) {
    throw InvalidInputError("shape mismatch in max_abs_diff");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace insar
