#include "insar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "insar/errors.hpp"
#include "insar/kernels.hpp"

namespace insar {

namespace {

void require_same_shape(const ComplexImage& a, const ComplexImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInputError("image shapes differ: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

std::span<const double> as_doubles(std::span<const cdouble> v) {
  return {reinterpret_cast<const double*>(v.data()), 2 * v.size()};
}

}  // namespace

ComplexImage interferogram(const ComplexImage& x1, const ComplexImage& x2) {
  require_same_shape(x1, x2);
  ComplexImage out(x1.rows(), x1.cols());
  kernels::conj_mul(x1.data(), x2.data(), out.data());
  return out;
}

double CoherenceMap::mean_magnitude() const {
  double sum = 0.0;
  for (const auto& g : gamma.data()) sum += std::abs(g);
  return sum / static_cast<double>(gamma.size());
}

std::vector<double> box_sum(std::span<const double> values, std::size_t rows, std::size_t cols,
                            std::size_t lanes, std::size_t window) {
  const std::size_t half = window / 2;
  const std::size_t width = cols * lanes;
  if (values.size() != rows * width) throw InvalidInputError("box_sum input size mismatch");

  // Horizontal pass, direct sums over the clipped span.
  std::vector<double> horiz(values.size(), 0.0);
  for (std::size_t m = 0; m < rows; ++m) {
    const double* in = values.data() + m * width;
    double* out = horiz.data() + m * width;
    for (std::size_t n = 0; n < cols; ++n) {
      const std::size_t lo = n >= half ? n - half : 0;
      const std::size_t hi = std::min(cols - 1, n + half);
      for (std::size_t lane = 0; lane < lanes; ++lane) {
        double s = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) s += in[k * lanes + lane];
        out[n * lanes + lane] = s;
      }
    }
  }

  // Vertical pass: whole-row accumulation.
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t m = 0; m < rows; ++m) {
    const std::size_t lo = m >= half ? m - half : 0;
    const std::size_t hi = std::min(rows - 1, m + half);
    std::span<double> dst(out.data() + m * width, width);
    for (std::size_t r = lo; r <= hi; ++r) {
      kernels::add(std::span<const double>(horiz.data() + r * width, width), dst);
    }
  }
  return out;
}

CoherenceMap coherence(const ComplexImage& x1, const ComplexImage& x2, std::size_t window) {
  require_same_shape(x1, x2);
  if (window < 3 || window % 2 == 0) {
    throw InvalidInputError("coherence window must be odd and >= 3, got " + std::to_string(window));
  }
  if (window > x1.rows() || window > x1.cols()) {
    throw InvalidInputError("coherence window " + std::to_string(window) +
                            " is larger than the image");
  }
  const std::size_t rows = x1.rows();
  const std::size_t cols = x1.cols();

  const ComplexImage cross = interferogram(x1, x2);
  std::vector<double> p1(x1.size()), p2(x2.size());
  kernels::norm_sq(x1.data(), p1);
  kernels::norm_sq(x2.data(), p2);

  const auto s12 = box_sum(as_doubles(cross.data()), rows, cols, 2, window);
  const auto s1 = box_sum(p1, rows, cols, 1, window);
  const auto s2 = box_sum(p2, rows, cols, 1, window);

  CoherenceMap map{ComplexImage(rows, cols), window};
  auto g = map.gamma.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (s1[i] > 0.0 && s2[i] > 0.0) {
      const double denom = std::sqrt(s1[i]) * std::sqrt(s2[i]);
      g[i] = {s12[2 * i] / denom, s12[2 * i + 1] / denom};
    }
  }
  return map;
}

double coherence_loss(const ComplexImage& x1, const ComplexImage& x2, std::size_t window) {
  const double mean = coherence(x1, x2, window).mean_magnitude();
  return std::clamp(1.0 - mean, 0.0, 1.0);
}

}  // namespace insar
