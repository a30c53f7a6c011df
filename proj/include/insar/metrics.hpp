#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

inline constexpr std::size_t kDefaultCoherenceWindow = 5;

/// out(m, n) = x1(m, n) * conj(x2(m, n)). Throws on a shape mismatch.
ComplexImage interferogram(const ComplexImage& x1, const ComplexImage& x2);

/// Per-pixel complex coherence estimates and the window they came from.
struct CoherenceMap {
  ComplexImage gamma;
  std::size_t window = kDefaultCoherenceWindow;

  RealTensor magnitude() const { return insar::magnitude(gamma); }
  double mean_magnitude() const;
};

/// Windowed coherence estimate
///
///   gamma(m,n) = sum_W x1 conj(x2) / sqrt(sum_W |x1|^2 * sum_W |x2|^2)
///
/// over the W x W boxcar centred on (m, n). Windows are clipped at the image
/// border. A window in which either power sum is zero gives gamma = 0.
///
/// Throws InvalidInputError on a shape mismatch, an even or < 3 window, or a
/// window larger than the image.
CoherenceMap coherence(const ComplexImage& x1, const ComplexImage& x2,
                       std::size_t window = kDefaultCoherenceWindow);

/// 1 - mean |gamma|, clamped to [0, 1].
double coherence_loss(const ComplexImage& x1, const ComplexImage& x2,
                      std::size_t window = kDefaultCoherenceWindow);

/// Clipped boxcar sum of a rows x cols grid with `lanes` interleaved doubles
/// per pixel (1 for real, 2 for complex). Exposed for tests.
std::vector<double> box_sum(std::span<const double> values, std::size_t rows, std::size_t cols,
                            std::size_t lanes, std::size_t window);

}  // namespace insar
