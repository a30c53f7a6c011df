#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace insar {

using cdouble = std::complex<double>;

/// 2D grid of complex samples, row-major. Dimensions are at least 1x1 and
/// every sample is finite.
class ComplexImage {
 public:
  /// Zero image. Throws InvalidInputError on a zero dimension.
  ComplexImage(std::size_t rows, std::size_t cols);
  /// Takes ownership of `data`; validates size and finiteness.
  ComplexImage(std::size_t rows, std::size_t cols, std::vector<cdouble> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  cdouble& operator()(std::size_t m, std::size_t n) { return data_[m * cols_ + n]; }
  const cdouble& operator()(std::size_t m, std::size_t n) const { return data_[m * cols_ + n]; }

  std::span<cdouble> data() { return data_; }
  std::span<const cdouble> data() const { return data_; }
  std::span<cdouble> row(std::size_t m) { return {data_.data() + m * cols_, cols_}; }
  std::span<const cdouble> row(std::size_t m) const { return {data_.data() + m * cols_, cols_}; }

  bool operator==(const ComplexImage&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cdouble> data_;
};

/// rows x cols x channels real tensor, row-major with channels last.
class RealTensor {
 public:
  RealTensor(std::size_t rows, std::size_t cols, std::size_t channels = 1);
  RealTensor(std::size_t rows, std::size_t cols, std::size_t channels, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t m, std::size_t n, std::size_t c = 0) {
    return data_[(m * cols_ + n) * channels_ + c];
  }
  double operator()(std::size_t m, std::size_t n, std::size_t c = 0) const {
    return data_[(m * cols_ + n) * channels_ + c];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Copies one channel out as a contiguous rows x cols plane.
  std::vector<double> plane(std::size_t c) const;
  void set_plane(std::size_t c, std::span<const double> plane);

  bool operator==(const RealTensor&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t channels_;
  std::vector<double> data_;
};

/// Single-channel view of one tensor channel as a complex image (imag = 0).
ComplexImage to_complex(const RealTensor& t, std::size_t channel = 0);

RealTensor real_part(const ComplexImage& x);
RealTensor imag_part(const ComplexImage& x);
RealTensor magnitude(const ComplexImage& x);
/// arg(x) wrapped to the half-open interval [-pi, pi).
RealTensor phase(const ComplexImage& x);

/// arg(z) in [-pi, pi); arg(0) = 0.
double wrapped_arg(cdouble z);

/// Stacks single-channel tensors of equal shape into one multi-channel tensor.
RealTensor stack_channels(std::span<const RealTensor> planes);

double max_abs_diff(const ComplexImage& a, const ComplexImage& b);
double max_abs_diff(const RealTensor& a, const RealTensor& b);

}  // namespace insar
