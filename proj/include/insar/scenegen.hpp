#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

/// Flat-earth scene with unity reflectivity. Slant range grows linearly
/// across columns, r(n) = range_origin + range_step * n, so the phase
/// 4*pi*r/lambda is a ramp with fringe frequency 4*pi*range_step/lambda.
struct FlatEarthScene {
  double wavelength = 0.031;  // [m]
  double range_origin = 0.0;  // [m]
  double range_step = 0.0;    // [m per column]

  /// Radians per column.
  double fringe_frequency() const;
};

/// x(m, n) = e^{j 4 pi r(n) / lambda}; every row identical, |x| = 1.
/// Throws InvalidInputError for a non-positive wavelength.
ComplexImage scene_response(const FlatEarthScene& scene, std::size_t rows, std::size_t cols);

struct Stripe {
  double omega = 0.0;      // normalized frequency along columns, [-pi, pi)
  double amplitude = 1.0;  // > 0
};

inline constexpr std::size_t kOnetoneStripes = 8;

struct OnetoneSpec {
  std::size_t rows = 128;
  std::size_t cols = 128;
  std::uint64_t seed = 0;
  std::vector<Stripe> stripes;
};

/// Draws kOnetoneStripes stripes from `seed`: omega i.i.d. uniform on
/// [-pi, pi) (or uniform over the DFT bin frequencies 2*pi*k/cols when
/// `bin_aligned`), amplitude i.i.d. uniform on [0.25, 1).
OnetoneSpec draw_onetone_spec(std::size_t rows, std::size_t cols, std::uint64_t seed,
                              bool bin_aligned = false);

/// Row range [begin, end) of stripe s when `rows` are split into `count`
/// horizontal bands whose heights differ by at most one.
std::pair<std::size_t, std::size_t> stripe_rows(std::size_t rows, std::size_t count, std::size_t s);

struct OnetonePatch {
  ComplexImage patch;        // stripe s: A_s * e^{j omega_s n}
  RealTensor conditioning;   // ch0 (omega+pi)/(2 pi), ch1 A/A_max, ch2 background 0
};

/// Throws InvalidInputError when there are fewer rows than stripes or a
/// stripe is invalid.
OnetonePatch gen_onetone(const OnetoneSpec& spec);

struct DatasetOptions {
  std::size_t count = 0;
  std::size_t rows = 128;
  std::size_t cols = 128;
  std::uint64_t seed = 0;
  bool bin_aligned = false;
  std::filesystem::path out_dir;
};

struct ManifestEntry {
  std::size_t index = 0;
  std::uint64_t sub_seed = 0;
  std::string patch_file;
  std::string conditioning_file;
  std::vector<Stripe> stripes;
};

/// Writes `count` (patch, conditioning) CTEN pairs plus manifest.csv into
/// out_dir. Item i is generated from derive_seed(seed, i), so the output is a
/// pure function of the options.
std::vector<ManifestEntry> gen_onetone_dataset(const DatasetOptions& options);

std::string manifest_csv(const std::vector<ManifestEntry>& entries);

}  // namespace insar
