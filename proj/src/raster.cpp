#include "insar/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "insar/errors.hpp"

namespace insar {

std::vector<std::uint8_t> quantize(const RealTensor& t, Normalization norm) {
  if (t.channels() != 1 && t.channels() != 3) {
    throw InvalidInputError("raster export supports 1 or 3 channels, got " +
                            std::to_string(t.channels()));
  }
  double lo = norm.lo;
  double hi = norm.hi;
  if (norm.kind == Normalization::Kind::MinMax) {
    const auto [mn, mx] = std::minmax_element(t.data().begin(), t.data().end());
    lo = *mn;
    hi = *mx;
  }
  std::vector<std::uint8_t> out(t.size());
  if (!(hi > lo)) {
    std::fill(out.begin(), out.end(), std::uint8_t{128});
    return out;
  }
  const double scale = 255.0 / (hi - lo);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double v = std::clamp((t.data()[i] - lo) * scale, 0.0, 255.0);
    out[i] = static_cast<std::uint8_t>(std::floor(v + 0.5));
  }
  return out;
}

void export_image(const RealTensor& t, const std::filesystem::path& path, Normalization norm) {
  const auto pixels = quantize(t, norm);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << (t.channels() == 1 ? "P5" : "P6") << '\n' << t.cols() << ' ' << t.rows() << "\n255\n";
  f.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace insar
