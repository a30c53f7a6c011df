#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

/// How real samples are mapped onto 0..255.
struct Normalization {
  enum class Kind { MinMax, Fixed };
  Kind kind = Kind::MinMax;
  double lo = 0.0;
  double hi = 1.0;

  static Normalization minmax() { return {}; }
  static Normalization fixed(double lo, double hi) { return {Kind::Fixed, lo, hi}; }
};

/// Quantizes a 1- or 3-channel tensor to 8 bits. Values are clamped to the
/// range, scaled to [0, 255] and rounded half-up. A degenerate range
/// (hi == lo) yields 128 everywhere. MinMax uses the global extrema over all
/// channels.
std::vector<std::uint8_t> quantize(const RealTensor& t, Normalization norm);

/// Writes a binary PGM (P5) for one channel or PPM (P6) for three.
void export_image(const RealTensor& t, const std::filesystem::path& path,
                  Normalization norm = Normalization::minmax());

}  // namespace insar
