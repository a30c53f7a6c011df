#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "insar/metrics.hpp"
#include "insar/tensor.hpp"

namespace insar {

/// x(m, n) * e^{j phi(m, n)} with phi i.i.d. N(0, sigma^2), drawn from `seed`.
/// sigma = 0 returns x unchanged.
ComplexImage add_phase_noise(const ComplexImage& x, double sigma, std::uint64_t seed);

struct FigOnetoneOptions {
  std::uint64_t seed = 0;
  std::size_t rows = 128;
  std::size_t cols = 128;
  bool bin_aligned = false;
  // Stand-in for a generated "fake": the real patch with phase noise of this
  // standard deviation [rad], unless `second` names a complex CTEN file.
  double phase_noise = 0.5;
  std::optional<std::filesystem::path> second;
  std::size_t window = kDefaultCoherenceWindow;
  std::filesystem::path out_dir;
};

struct FigOnetoneResult {
  ComplexImage real;
  ComplexImage fake;
  CoherenceMap coherence;
  double mean_coherence = 0.0;
  double coherence_loss = 0.0;
  double nyquist_imag_residual = 0.0;
  double nyquist_roundtrip_error = 0.0;  // vs the band-limited real patch
  std::vector<std::string> files;        // written, relative to out_dir
};

/// Writes the Onetone panel set for one seed: conditioning raster, real and
/// imaginary parts of both patches, their Nyquist encodings and log-magnitude
/// spectra, the interferogram phase, the coherence magnitude and summary.csv.
FigOnetoneResult fig_onetone(const FigOnetoneOptions& options);

}  // namespace insar
