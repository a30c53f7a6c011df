#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

/// Complex-to-real codecs for feeding complex patches to real-valued networks.
enum class MappingScheme {
  DirectRealImag,  // channels (Re, Im)
  DirectMagPhase,  // channels (|x|, arg(x)/pi)
  Nyquist,         // one real channel at twice the sampling rate
};

/// Accepts "reim", "magphase" and "nyquist".
MappingScheme parse_scheme(std::string_view name);
std::string_view scheme_name(MappingScheme scheme);

RealTensor encode_real_imag(const ComplexImage& x);
ComplexImage decode_real_imag(const RealTensor& t);

/// ch0 = |x|, ch1 = arg(x)/pi in [-1, 1); arg(-1) maps to -1, zero samples to 0.
RealTensor encode_mag_phase(const ComplexImage& x);
/// Throws RangeError when a phase sample lies outside [-1, 1).
ComplexImage decode_mag_phase(const RealTensor& t);

struct NyquistEncoding {
  RealTensor tensor;
  // Largest |imag| discarded in the final step.
  double imag_residual = 0.0;
};

/// Nyquist mapping of an even-sized M x N image to a real 2M x 2N tensor:
///   1. ideal x2 upsampling (zero-padding the spectrum, gain 4)
///   2. modulation by e^{j pi (m + n) / 2}
///   3. forward DFT
///   4. Y(k,l) <- (Y(k,l) + conj(Y(-k,-l))) / 2
///   5. inverse DFT
///   6. real part kept
/// The input bins at exactly -fs/2 on either axis (row M/2, column N/2 of its
/// spectrum) would land on the DC row/column of the output and are zeroed
/// first, so the mapping is lossless on the remaining (M-1) x (N-1) band.
NyquistEncoding encode_nyquist_traced(const ComplexImage& x);
RealTensor encode_nyquist(const ComplexImage& x);

/// Inverse of encode_nyquist on its image set: picks the embedded quadrant of
/// the spectrum (x2 for the symmetrization gain), shifts it back to baseband
/// and decimates x2 in the frequency domain.
ComplexImage decode_nyquist(const RealTensor& t);

/// x with the extreme-negative-frequency row and column of its spectrum
/// zeroed; the set on which Nyquist mapping round-trips exactly.
ComplexImage nyquist_band_limit(const ComplexImage& x);

RealTensor encode(const ComplexImage& x, MappingScheme scheme);
ComplexImage decode(const RealTensor& t, MappingScheme scheme);

/// Spectral bookkeeping of one encoded channel. Quadrants split each axis at
/// half its length: q[0] = (low k, low l), q[1] = (low k, high l),
/// q[2] = (high k, low l), q[3] = (high k, high l).
struct ChannelSupport {
  std::size_t channel = 0;
  std::array<double, 4> quadrant_energy{};
  double total_energy = 0.0;
  // ||X(k,l) - conj(X(-k,-l))|| / ||X||, 0 for a zero spectrum.
  double symmetry_residual = 0.0;
  // (q[1] + q[2]) / total: energy outside the embedded quadrant and its mirror.
  double cross_quadrant_leakage = 0.0;
};

struct SupportReport {
  MappingScheme scheme;
  std::vector<ChannelSupport> channels;
};

SupportReport spectrum_support(const RealTensor& t, MappingScheme scheme);
/// CSV with header channel,quadrant,energy,residual: rows q00, q01, q10, q11
/// and total per channel. The residual column repeats the channel's
/// conjugate-symmetry residual.
std::string support_csv(const SupportReport& report);

}  // namespace insar
