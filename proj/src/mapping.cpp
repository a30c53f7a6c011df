#include "insar/mapping.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/kernels.hpp"
#include "insar/spectrum.hpp"

namespace insar {

namespace {

constexpr double kPi = std::numbers::pi;
// Step 6 may only drop rounding noise.
constexpr double kMaxImagResidual = 1e-12;

void require_even(std::size_t rows, std::size_t cols, const char* what) {
  if (rows % 2 != 0 || cols % 2 != 0) {
    throw InvalidInputError(std::string(what) + " requires even dimensions, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_channels(const RealTensor& t, std::size_t c, const char* what) {
  if (t.channels() != c) {
    throw InvalidInputError(std::string(what) + " expects " + std::to_string(c) +
                            " channel(s), got " + std::to_string(t.channels()));
  }
}

// Signed frequency index of bin k on an axis of length n.
std::ptrdiff_t signed_bin(std::size_t k, std::size_t n) {
  return 2 * k >= n ? static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n)
                    : static_cast<std::ptrdiff_t>(k);
}

std::size_t wrap(std::ptrdiff_t k, std::size_t n) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

void zero_extreme_bins(Spectrum& s) {
  const std::size_t kr = s.rows() / 2;
  const std::size_t kc = s.cols() / 2;
  for (std::size_t l = 0; l < s.cols(); ++l) s(kr, l) = 0.0;
  for (std::size_t k = 0; k < s.rows(); ++k) s(k, kc) = 0.0;
}

// e^{j pi (m + n) / 2} = j^{(m + n) mod 4}, exact.
std::vector<cdouble> quarter_band_carrier(std::size_t rows, std::size_t cols) {
  static constexpr cdouble kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<cdouble> c(rows * cols);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n) c[m * cols + n] = kPowers[(m + n) % 4];
  return c;
}

}  // namespace

MappingScheme parse_scheme(std::string_view name) {
  if (name == "reim") return MappingScheme::DirectRealImag;
  if (name == "magphase") return MappingScheme::DirectMagPhase;
  if (name == "nyquist") return MappingScheme::Nyquist;
  throw InvalidInputError("unknown mapping scheme '" + std::string(name) + "'");
}

std::string_view scheme_name(MappingScheme scheme) {
  switch (scheme) {
    case MappingScheme::DirectRealImag:
      return "reim";
    case MappingScheme::DirectMagPhase:
      return "magphase";
    case MappingScheme::Nyquist:
      return "nyquist";
  }
  return "unknown";
}

RealTensor encode_real_imag(const ComplexImage& x) {
  RealTensor out(x.rows(), x.cols(), 2);
  auto dst = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    dst[2 * i] = x.data()[i].real();
    dst[2 * i + 1] = x.data()[i].imag();
  }
  return out;
}

ComplexImage decode_real_imag(const RealTensor& t) {
  require_channels(t, 2, "Real-Imag decoding");
  ComplexImage out(t.rows(), t.cols());
  auto src = t.data();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = {src[2 * i], src[2 * i + 1]};
  return out;
}

RealTensor encode_mag_phase(const ComplexImage& x) {
  RealTensor out(x.rows(), x.cols(), 2);
  auto dst = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cdouble v = x.data()[i];
    dst[2 * i] = std::abs(v);
    double p = wrapped_arg(v) / kPi;
    if (p >= 1.0) p = -1.0;  // division rounding at the +pi end
    dst[2 * i + 1] = p;
  }
  return out;
}

ComplexImage decode_mag_phase(const RealTensor& t) {
  require_channels(t, 2, "Mag-Phase decoding");
  ComplexImage out(t.rows(), t.cols());
  auto src = t.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mag = src[2 * i];
    const double p = src[2 * i + 1];
    if (!(p >= -1.0 && p < 1.0)) {
      throw RangeError("phase channel sample " + std::to_string(p) + " outside [-1, 1)");
    }
    out.data()[i] = std::polar(1.0, kPi * p) * mag;
  }
  return out;
}

ComplexImage nyquist_band_limit(const ComplexImage& x) {
  require_even(x.rows(), x.cols(), "Nyquist band limiting");
  Spectrum s = dft2(x);
  zero_extreme_bins(s);
  return idft2(s);
}

NyquistEncoding encode_nyquist_traced(const ComplexImage& x) {
  require_even(x.rows(), x.cols(), "Nyquist mapping");
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  const std::size_t up_rows = 2 * rows;
  const std::size_t up_cols = 2 * cols;

  // 1. ideal upsampling: spectrum zero-padded around the signed band, gain 4
  // keeps xu(2m, 2n) = x(m, n).
  Spectrum s = dft2(x);
  zero_extreme_bins(s);
  std::vector<cdouble> up_bins(up_rows * up_cols);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t ku = wrap(signed_bin(k, rows), up_rows);
    for (std::size_t l = 0; l < cols; ++l) {
      const std::size_t lu = wrap(signed_bin(l, cols), up_cols);
      up_bins[ku * up_cols + lu] = 4.0 * s(k, l);
    }
  }
  ComplexImage upsampled = idft2(Spectrum(up_rows, up_cols, std::move(up_bins)));

  // 2. modulate to the centre of the first quadrant
  const auto carrier = quarter_band_carrier(up_rows, up_cols);
  kernels::cmul(upsampled.data(), carrier, upsampled.data());

  // 3. forward DFT
  Spectrum y = dft2(upsampled);

  // 4. force conjugate symmetry
  std::vector<cdouble> sym(up_rows * up_cols);
  for (std::size_t k = 0; k < up_rows; ++k) {
    const std::size_t km = (up_rows - k) % up_rows;
    for (std::size_t l = 0; l < up_cols; ++l) {
      const std::size_t lm = (up_cols - l) % up_cols;
      sym[k * up_cols + l] = (y(k, l) + std::conj(y(km, lm))) * 0.5;
    }
  }

  // 5. back to the spatial domain, 6. keep the real part
  const ComplexImage spatial = idft2(Spectrum(up_rows, up_cols, std::move(sym)));
  NyquistEncoding out{RealTensor(up_rows, up_cols, 1), 0.0};
  double peak = 0.0;
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    out.tensor.data()[i] = spatial.data()[i].real();
    out.imag_residual = std::max(out.imag_residual, std::abs(spatial.data()[i].imag()));
    peak = std::max(peak, std::abs(spatial.data()[i].real()));
  }
  if (out.imag_residual > kMaxImagResidual * std::max(1.0, peak)) {
    throw Error("Nyquist mapping left an imaginary residual of " +
                std::to_string(out.imag_residual));
  }
  return out;
}

RealTensor encode_nyquist(const ComplexImage& x) { return encode_nyquist_traced(x).tensor; }

ComplexImage decode_nyquist(const RealTensor& t) {
  require_channels(t, 1, "Nyquist decoding");
  require_even(t.rows(), t.cols(), "Nyquist decoding");
  // Encodings of even M x N images are multiples of 4 per axis.
  require_even(t.rows() / 2, t.cols() / 2, "Nyquist decoding (half size)");
  const std::size_t rows = t.rows() / 2;
  const std::size_t cols = t.cols() / 2;
  const Spectrum s = dft2(to_complex(t));

  // Embedded quadrant bin (k, l) carries baseband frequency (k - M/2, l - N/2).
  // x2 undoes the symmetrization average, /4 the upsampling gain.
  std::vector<cdouble> bins(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t kb = wrap(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(rows / 2), rows);
    for (std::size_t l = 0; l < cols; ++l) {
      const std::size_t lb = wrap(static_cast<std::ptrdiff_t>(l) - static_cast<std::ptrdiff_t>(cols / 2), cols);
      bins[kb * cols + lb] = s(k, l) * 0.5;
    }
  }
  return idft2(Spectrum(rows, cols, std::move(bins)));
}

RealTensor encode(const ComplexImage& x, MappingScheme scheme) {
  switch (scheme) {
    case MappingScheme::DirectRealImag:
      return encode_real_imag(x);
    case MappingScheme::DirectMagPhase:
      return encode_mag_phase(x);
    case MappingScheme::Nyquist:
      return encode_nyquist(x);
  }
  throw InvalidInputError("unknown mapping scheme");
}

ComplexImage decode(const RealTensor& t, MappingScheme scheme) {
  switch (scheme) {
    case MappingScheme::DirectRealImag:
      return decode_real_imag(t);
    case MappingScheme::DirectMagPhase:
      return decode_mag_phase(t);
    case MappingScheme::Nyquist:
      return decode_nyquist(t);
  }
  throw InvalidInputError("unknown mapping scheme");
}

SupportReport spectrum_support(const RealTensor& t, MappingScheme scheme) {
  SupportReport report{scheme, {}};
  const std::size_t rows = t.rows();
  const std::size_t cols = t.cols();
  for (std::size_t c = 0; c < t.channels(); ++c) {
    const Spectrum s = dft2(to_complex(t, c));
    ChannelSupport cs;
    cs.channel = c;
    double mismatch = 0.0;
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t l = 0; l < cols; ++l) {
        const double e = std::norm(s(k, l));
        const std::size_t q = (2 * k >= rows ? 2 : 0) + (2 * l >= cols ? 1 : 0);
        cs.quadrant_energy[q] += e;
        cs.total_energy += e;
        mismatch += std::norm(s(k, l) - std::conj(s((rows - k) % rows, (cols - l) % cols)));
      }
    }
    if (cs.total_energy > 0.0) {
      cs.symmetry_residual = std::sqrt(mismatch / cs.total_energy);
      cs.cross_quadrant_leakage =
          (cs.quadrant_energy[1] + cs.quadrant_energy[2]) / cs.total_energy;
    }
    report.channels.push_back(cs);
  }
  return report;
}

std::string support_csv(const SupportReport& report) {
  static constexpr const char* kNames[4] = {"q00", "q01", "q10", "q11"};
  std::string out = "channel,quadrant,energy,residual\n";
  char line[160];
  for (const auto& cs : report.channels) {
    for (int q = 0; q < 4; ++q) {
      std::snprintf(line, sizeof line, "%zu,%s,%.17g,%.17g\n", cs.channel, kNames[q],
                    cs.quadrant_energy[q], cs.symmetry_residual);
      out += line;
    }
    std::snprintf(line, sizeof line, "%zu,total,%.17g,%.17g\n", cs.channel, cs.total_energy,
                  cs.symmetry_residual);
    out += line;
  }
  return out;
}

}  // namespace insar
