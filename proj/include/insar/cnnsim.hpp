#pragma once

// Forward-only model of a CNN layer as a multirate FIR filter bank:
//
//   z_j = sum_i x_i * h_ij + b_j,   h_ij = rot180(w_ij)
//   y_j = a(z_j)
//
// followed by optional unfiltered resampling. Spectral probes capture what
// each stage does to the signal spectrum.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "insar/activation.hpp"
#include "insar/spectrum.hpp"
#include "insar/tensor.hpp"

namespace insar {

enum class Resample { None, Down2, Up2 };

Resample parse_resample(std::string_view name);
std::string_view resample_name(Resample r);

struct LayerSpec {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel_size = 1;  // odd
  // Trainable-layer weights w_ij laid out [i][j][row][col].
  std::vector<double> weights{1.0};
  std::vector<double> biases{0.0};
  Activation activation;
  Resample resample = Resample::None;

  double weight(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const {
    return weights[((i * out_channels + j) * kernel_size + p) * kernel_size + q];
  }
  /// Throws InvalidInputError on inconsistent counts, even kernels or
  /// non-finite values.
  void validate() const;
};

struct LayerChain {
  std::vector<LayerSpec> layers;

  /// Per-layer validation plus channel compatibility between neighbours.
  void validate() const;
};

enum class CannedKernel { Impulse, Average, DiffRows, DiffCols };

CannedKernel parse_canned_kernel(std::string_view name);
/// K x K kernel: centred unit impulse, 1/K^2 box, or a first difference
/// (-1 at the centre, +1 at the next row/column; needs K >= 3).
std::vector<double> canned_kernel(CannedKernel kind, std::size_t k);

/// 'same'-size correlation with w (= convolution with rot180(w)), zero
/// padding, bias not applied.
RealTensor convolve(const RealTensor& x, const LayerSpec& spec);
RealTensor add_bias(RealTensor z, std::span<const double> biases);
/// convolve + add_bias.
RealTensor conv_layer(const RealTensor& x, const LayerSpec& spec);

RealTensor activate(const RealTensor& z, const Activation& a);

/// Down2 keeps samples with even row and column index (no anti-alias
/// filter, needs even dimensions); Up2 inserts zeros (no interpolation).
RealTensor resample(const RealTensor& x, Resample mode);

/// Folds omega into the first Nyquist zone:
///   omega_f = omega - omega_s * round(omega / omega_s),
/// ties rounded up so the result lies in [-omega_s/2, omega_s/2).
/// Throws InvalidInputError unless omega_s > 0.
double predict_alias(double omega, double omega_s);

struct Peak {
  std::size_t bin = 0;
  double magnitude = 0.0;
  double level_db = 0.0;
};

struct PeakOptions {
  double threshold_db = 6.0;
};

/// Local maxima (strictly above both circular neighbours) at least
/// threshold_db above the median level. Sorted by descending magnitude.
std::vector<Peak> detect_peaks(std::span<const double> magnitudes, PeakOptions options = {});

/// |DFT| of row `row` of one channel (the 1-D m = const slice).
std::vector<double> row_spectrum(const RealTensor& y, std::size_t channel, std::size_t row);

enum class ProbeStage { PostConv, PostBias, PostActivation, PostResample };
std::string_view stage_name(ProbeStage stage);

struct SpectralProbe {
  std::size_t layer = 0;
  ProbeStage stage = ProbeStage::PostConv;
  std::size_t channel = 0;
  Spectrum spectrum;
  std::size_t slice_row = 0;              // rows / 2
  std::vector<double> slice_magnitude;    // row_spectrum at slice_row
  std::vector<Peak> peaks;                // detected on the slice
};

struct ChainResult {
  RealTensor output;
  std::vector<SpectralProbe> probes;
};

/// Applies the layers in order: convolution, bias, activation, resampling.
/// With `probe` set, every channel is probed after each of those stages
/// (after resampling only when the layer resamples).
ChainResult run_chain(const RealTensor& x, const LayerChain& chain, bool probe,
                      PeakOptions options = {});

struct HarmonicLine {
  std::size_t k = 0;
  double predicted_omega = 0.0;  // fold of k * omega0
  std::size_t predicted_bin = 0;
  std::optional<std::size_t> measured_bin;  // nearest detected peak
  double level_db = 0.0;                    // absolute, at the predicted bin
  double relative_db = 0.0;                 // level_db minus the k = 1 level
  bool match = false;                       // peak within one bin
};

struct HarmonicReport {
  bool bin_aligned = true;
  std::string status;  // "ok" or a warning
  std::size_t slice_row = 0;
  std::vector<HarmonicLine> lines;  // k = 0 .. k_max
};

/// Compares the folded harmonics k * omega0 of a single-channel tensor's
/// row slice against the detected spectral peaks. omega0 should sit on a DFT
/// bin; otherwise the report carries a warning status.
HarmonicReport harmonic_report(const RealTensor& y, double omega0, std::size_t k_max,
                               PeakOptions options = {});

std::string harmonic_csv(const HarmonicReport& report);
std::string peaks_csv(std::span<const Peak> peaks, std::size_t n);

}  // namespace insar
