#include "insar/cnnsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/fft.hpp"
#include "insar/kernels.hpp"

namespace insar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t d = a > b ? a - b : b - a;
  return std::min(d, n - d);
}

}  // namespace

Resample parse_resample(std::string_view name) {
  if (name == "none") return Resample::None;
  if (name == "down2") return Resample::Down2;
  if (name == "up2") return Resample::Up2;
  throw InvalidInputError("unknown resample mode '" + std::string(name) + "'");
}

std::string_view resample_name(Resample r) {
  switch (r) {
    case Resample::None:
      return "none";
    case Resample::Down2:
      return "down2";
    case Resample::Up2:
      return "up2";
  }
  return "unknown";
}

void LayerSpec::validate() const {
  if (in_channels == 0 || out_channels == 0) throw InvalidInputError("layer has zero channels");
  if (kernel_size == 0 || kernel_size % 2 == 0) {
    throw InvalidInputError("kernel size must be odd, got " + std::to_string(kernel_size));
  }
  const std::size_t expected = in_channels * out_channels * kernel_size * kernel_size;
  if (weights.size() != expected) {
    throw InvalidInputError("layer needs " + std::to_string(expected) + " weights, got " +
                            std::to_string(weights.size()));
  }
  if (biases.size() != out_channels) {
    throw InvalidInputError("layer needs " + std::to_string(out_channels) + " biases, got " +
                            std::to_string(biases.size()));
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) ||
      !std::all_of(biases.begin(), biases.end(), finite)) {
    throw InvalidInputError("layer weights and biases must be finite");
  }
  if (activation.kind == Activation::Kind::SoftplusWarped && !(activation.alpha > 0.0)) {
    throw InvalidInputError("softplus warping factor must be positive");
  }
}

void LayerChain::validate() const {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].validate();
    if (l > 0 && layers[l - 1].out_channels != layers[l].in_channels) {
      throw InvalidInputError("layer " + std::to_string(l) + " expects " +
                              std::to_string(layers[l].in_channels) + " channels but layer " +
                              std::to_string(l - 1) + " produces " +
                              std::to_string(layers[l - 1].out_channels));
    }
  }
}

CannedKernel parse_canned_kernel(std::string_view name) {
  if (name == "impulse") return CannedKernel::Impulse;
  if (name == "average") return CannedKernel::Average;
  if (name == "diff_rows") return CannedKernel::DiffRows;
  if (name == "diff_cols") return CannedKernel::DiffCols;
  throw InvalidInputError("unknown canned kernel '" + std::string(name) + "'");
}

std::vector<double> canned_kernel(CannedKernel kind, std::size_t k) {
  if (k == 0 || k % 2 == 0) throw InvalidInputError("kernel size must be odd");
  std::vector<double> w(k * k, 0.0);
  const std::size_t c = k / 2;
  switch (kind) {
    case CannedKernel::Impulse:
      w[c * k + c] = 1.0;
      break;
    case CannedKernel::Average:
      std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k * k));
      break;
    case CannedKernel::DiffRows:
    case CannedKernel::DiffCols:
      if (k < 3) throw InvalidInputError("difference kernels need a size of at least 3");
      w[c * k + c] = -1.0;
      if (kind == CannedKernel::DiffRows) {
        w[(c + 1) * k + c] = 1.0;
      } else {
        w[c * k + c + 1] = 1.0;
      }
      break;
  }
  return w;
}

RealTensor convolve(const RealTensor& x, const LayerSpec& spec) {
  spec.validate();
  if (x.channels() != spec.in_channels) {
    throw InvalidInputError("input has " + std::to_string(x.channels()) +
                            " channels, layer expects " + std::to_string(spec.in_channels));
  }
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  const std::size_t k = spec.kernel_size;
  const auto c = static_cast<std::ptrdiff_t>(k / 2);
  const auto srows = static_cast<std::ptrdiff_t>(rows);
  const auto scols = static_cast<std::ptrdiff_t>(cols);

  std::vector<std::vector<double>> in_planes(spec.in_channels);
  for (std::size_t i = 0; i < spec.in_channels; ++i) in_planes[i] = x.plane(i);

  RealTensor z(rows, cols, spec.out_channels);
  std::vector<double> acc(rows * cols);
  for (std::size_t j = 0; j < spec.out_channels; ++j) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t i = 0; i < spec.in_channels; ++i) {
      const auto& in = in_planes[i];
      for (std::size_t p = 0; p < k; ++p) {
        const std::ptrdiff_t dr = static_cast<std::ptrdiff_t>(p) - c;
        for (std::size_t q = 0; q < k; ++q) {
          const double w = spec.weight(i, j, p, q);
          if (w == 0.0) continue;
          const std::ptrdiff_t dc = static_cast<std::ptrdiff_t>(q) - c;
          // z(m, n) += w * x(m + dr, n + dc) over the in-bounds part.
          const std::ptrdiff_t n0 = std::max<std::ptrdiff_t>(0, -dc);
          const std::ptrdiff_t n1 = std::min(scols, scols - dc);
          if (n1 <= n0) continue;
          const auto len = static_cast<std::size_t>(n1 - n0);
          const std::ptrdiff_t m0 = std::max<std::ptrdiff_t>(0, -dr);
          const std::ptrdiff_t m1 = std::min(srows, srows - dr);
          for (std::ptrdiff_t m = m0; m < m1; ++m) {
            const double* src = in.data() + (m + dr) * scols + n0 + dc;
            double* dst = acc.data() + m * scols + n0;
            kernels::axpy(w, std::span<const double>(src, len), std::span<double>(dst, len));
          }
        }
      }
    }
    z.set_plane(j, acc);
  }
  return z;
}

RealTensor add_bias(RealTensor z, std::span<const double> biases) {
  if (biases.size() != z.channels()) throw InvalidInputError("bias count does not match channels");
  auto d = z.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += biases[i % z.channels()];
  return z;
}

RealTensor conv_layer(const RealTensor& x, const LayerSpec& spec) {
  return add_bias(convolve(x, spec), spec.biases);
}

RealTensor activate(const RealTensor& z, const Activation& a) {
  RealTensor y = z;
  for (double& v : y.data()) v = a(v);
  return y;
}

RealTensor resample(const RealTensor& x, Resample mode) {
  const std::size_t ch = x.channels();
  switch (mode) {
    case Resample::None:
      return x;
    case Resample::Down2: {
      if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
        throw InvalidInputError("Down2 needs even dimensions, got " + dims(x.rows(), x.cols()));
      }
      RealTensor out(x.rows() / 2, x.cols() / 2, ch);
      for (std::size_t m = 0; m < out.rows(); ++m)
        for (std::size_t n = 0; n < out.cols(); ++n)
          for (std::size_t c = 0; c < ch; ++c) out(m, n, c) = x(2 * m, 2 * n, c);
      return out;
    }
    case Resample::Up2: {
      RealTensor out(2 * x.rows(), 2 * x.cols(), ch);
      for (std::size_t m = 0; m < x.rows(); ++m)
        for (std::size_t n = 0; n < x.cols(); ++n)
          for (std::size_t c = 0; c < ch; ++c) out(2 * m, 2 * n, c) = x(m, n, c);
      return out;
    }
  }
  return x;
}

double predict_alias(double omega, double omega_s) {
  if (!(omega_s > 0.0)) throw InvalidInputError("sampling frequency must be positive");
  double f = omega - omega_s * std::floor(omega / omega_s + 0.5);
  // Keep the half-open interval under rounding.
  if (f >= 0.5 * omega_s) f -= omega_s;
  if (f < -0.5 * omega_s) f += omega_s;
  return f;
}

std::vector<Peak> detect_peaks(std::span<const double> magnitudes, PeakOptions options) {
  const std::size_t n = magnitudes.size();
  std::vector<Peak> peaks;
  if (n < 3) return peaks;
  std::vector<double> levels(n);
  for (std::size_t i = 0; i < n; ++i) levels[i] = log_magnitude_db(magnitudes[i]);
  std::vector<double> sorted = levels;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double floor_db = sorted[n / 2];
  for (std::size_t i = 0; i < n; ++i) {
    const double left = levels[(i + n - 1) % n];
    const double right = levels[(i + 1) % n];
    if (levels[i] > left && levels[i] > right && levels[i] >= floor_db + options.threshold_db) {
      peaks.push_back({i, magnitudes[i], levels[i]});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  return peaks;
}

std::vector<double> row_spectrum(const RealTensor& y, std::size_t channel, std::size_t row) {
  if (channel >= y.channels() || row >= y.rows()) throw InvalidInputError("slice out of range");
  std::vector<cdouble> line(y.cols());
  for (std::size_t n = 0; n < y.cols(); ++n) line[n] = y(row, n, channel);
  FftPlan(line.size()).execute(line, FftDirection::Forward);
  std::vector<double> mag(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) mag[i] = std::abs(line[i]);
  return mag;
}

std::string_view stage_name(ProbeStage stage) {
  switch (stage) {
    case ProbeStage::PostConv:
      return "post-conv";
    case ProbeStage::PostBias:
      return "post-bias";
    case ProbeStage::PostActivation:
      return "post-activation";
    case ProbeStage::PostResample:
      return "post-resample";
  }
  return "unknown";
}

namespace {

void capture(std::vector<SpectralProbe>& probes, const RealTensor& t, std::size_t layer,
             ProbeStage stage, PeakOptions options) {
  for (std::size_t c = 0; c < t.channels(); ++c) {
    const std::size_t row = t.rows() / 2;
    auto slice = row_spectrum(t, c, row);
    auto peaks = detect_peaks(slice, options);
    probes.push_back(SpectralProbe{layer, stage, c, dft2(to_complex(t, c)), row, std::move(slice),
                                   std::move(peaks)});
  }
}

}  // namespace

ChainResult run_chain(const RealTensor& x, const LayerChain& chain, bool probe,
                      PeakOptions options) {
  chain.validate();
  if (!chain.layers.empty() && x.channels() != chain.layers.front().in_channels) {
    throw InvalidInputError("input has " + std::to_string(x.channels()) +
                            " channels, chain expects " +
                            std::to_string(chain.layers.front().in_channels));
  }
  ChainResult result{x, {}};
  for (std::size_t l = 0; l < chain.layers.size(); ++l) {
    const LayerSpec& spec = chain.layers[l];
    RealTensor z = convolve(result.output, spec);
    if (probe) capture(result.probes, z, l, ProbeStage::PostConv, options);
    z = add_bias(std::move(z), spec.biases);
    if (probe) capture(result.probes, z, l, ProbeStage::PostBias, options);
    RealTensor y = activate(z, spec.activation);
    if (probe) capture(result.probes, y, l, ProbeStage::PostActivation, options);
    if (spec.resample != Resample::None) {
      y = resample(y, spec.resample);
      if (probe) capture(result.probes, y, l, ProbeStage::PostResample, options);
    }
    result.output = std::move(y);
  }
  return result;
}

HarmonicReport harmonic_report(const RealTensor& y, double omega0, std::size_t k_max,
                               PeakOptions options) {
  if (y.channels() != 1) throw InvalidInputError("harmonic report needs a single-channel tensor");
  const std::size_t n = y.cols();
  HarmonicReport report;
  report.slice_row = y.rows() / 2;
  const double pos = omega0 * static_cast<double>(n) / kTwoPi;
  report.bin_aligned = std::abs(pos - std::round(pos)) <= 1e-9 * std::max(1.0, std::abs(pos));
  report.status = report.bin_aligned
                      ? "ok"
                      : "warning: omega0 is not on a DFT bin, leakage makes peak matching unreliable";

  const auto mags = row_spectrum(y, 0, report.slice_row);
  const auto peaks = detect_peaks(mags, options);
  const double fundamental_db = log_magnitude_db(mags[frequency_bin(predict_alias(omega0, kTwoPi), n)]);

  for (std::size_t k = 0; k <= k_max; ++k) {
    HarmonicLine line;
    line.k = k;
    line.predicted_omega = predict_alias(static_cast<double>(k) * omega0, kTwoPi);
    line.predicted_bin = frequency_bin(line.predicted_omega, n);
    line.level_db = log_magnitude_db(mags[line.predicted_bin]);
    line.relative_db = line.level_db - fundamental_db;
    std::size_t best = n;
    for (const auto& p : peaks) {
      if (best == n || circular_distance(p.bin, line.predicted_bin, n) <
                           circular_distance(best, line.predicted_bin, n)) {
        best = p.bin;
      }
    }
    if (best != n) {
      line.measured_bin = best;
      line.match = circular_distance(best, line.predicted_bin, n) <= 1;
    }
    report.lines.push_back(line);
  }
  return report;
}

std::string harmonic_csv(const HarmonicReport& report) {
  std::string out = "k,predicted_omega,predicted_bin,measured_bin,level_db,relative_db,match\n";
  char buf[200];
  for (const auto& l : report.lines) {
    const std::string measured = l.measured_bin ? std::to_string(*l.measured_bin) : "";
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%zu,%s,%.6f,%.6f,%d\n", l.k, l.predicted_omega,
                  l.predicted_bin, measured.c_str(), l.level_db, l.relative_db, l.match ? 1 : 0);
    out += buf;
  }
  return out;
}

std::string peaks_csv(std::span<const Peak> peaks, std::size_t n) {
  std::string out = "bin,omega,magnitude,level_db\n";
  char buf[160];
  for (const auto& p : peaks) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.6f\n", p.bin, bin_frequency(p.bin, n),
                  p.magnitude, p.level_db);
    out += buf;
  }
  return out;
}

}  // namespace insar
