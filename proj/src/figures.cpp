#include "insar/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/mapping.hpp"
#include "insar/random.hpp"
#include "insar/raster.hpp"
#include "insar/scenegen.hpp"
#include "insar/spectrum.hpp"
#include "insar/tensor_file.hpp"

namespace insar {

namespace {

constexpr std::uint64_t kPhaseNoiseStream = 0x70686173656e6f69ull;
// Dynamic range shown in spectrum rasters, below the strongest bin.
constexpr double kSpectrumRangeDb = 120.0;

Normalization spectrum_range(const RealTensor& db) {
  const double top = *std::max_element(db.data().begin(), db.data().end());
  return Normalization::fixed(top - kSpectrumRangeDb, top);
}

}  // namespace

ComplexImage add_phase_noise(const ComplexImage& x, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidInputError("phase noise must be >= 0");
  if (sigma == 0.0) return x;
  Rng rng(seed);
  ComplexImage out = x;
  for (auto& v : out.data()) {
    const double phi = sigma * rng.normal();
    v *= cdouble{std::cos(phi), std::sin(phi)};
  }
  return out;
}

FigOnetoneResult fig_onetone(const FigOnetoneOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create '" + options.out_dir.string() + "': " + ec.message());

  const OnetoneSpec spec =
      draw_onetone_spec(options.rows, options.cols, options.seed, options.bin_aligned);
  OnetonePatch onetone = gen_onetone(spec);

  ComplexImage fake = options.second
                          ? load_complex(*options.second)
                          : add_phase_noise(onetone.patch, options.phase_noise,
                                            derive_seed(options.seed, kPhaseNoiseStream));
  if (fake.rows() != onetone.patch.rows() || fake.cols() != onetone.patch.cols()) {
    throw InvalidInputError("second patch does not match the Onetone patch shape");
  }

  FigOnetoneResult result{onetone.patch, fake, coherence(onetone.patch, fake, options.window)};
  result.mean_coherence = result.coherence.mean_magnitude();
  result.coherence_loss = std::clamp(1.0 - result.mean_coherence, 0.0, 1.0);

  const NyquistEncoding real_ny = encode_nyquist_traced(result.real);
  const NyquistEncoding fake_ny = encode_nyquist_traced(result.fake);
  result.nyquist_imag_residual = std::max(real_ny.imag_residual, fake_ny.imag_residual);
  result.nyquist_roundtrip_error =
      max_abs_diff(decode_nyquist(real_ny.tensor), nyquist_band_limit(result.real));

  const auto& dir = options.out_dir;
  auto emit = [&](const std::string& name) -> std::filesystem::path {
    result.files.push_back(name);
    return dir / name;
  };
  const auto unit = Normalization::fixed(-1.0, 1.0);

  export_image(onetone.conditioning, emit("conditioning.ppm"), Normalization::fixed(0.0, 1.0));
  save_tensor(onetone.conditioning, emit("conditioning.cten"));
  save_tensor(result.real, emit("real_patch.cten"));
  save_tensor(result.fake, emit("fake_patch.cten"));
  export_image(real_part(result.real), emit("real_re.pgm"), unit);
  export_image(imag_part(result.real), emit("real_im.pgm"), unit);
  export_image(real_part(result.fake), emit("fake_re.pgm"), unit);
  export_image(imag_part(result.fake), emit("fake_im.pgm"), unit);

  save_tensor(real_ny.tensor, emit("real_nyquist.cten"));
  save_tensor(fake_ny.tensor, emit("fake_nyquist.cten"));
  export_image(real_ny.tensor, emit("real_nyquist.pgm"), unit);
  export_image(fake_ny.tensor, emit("fake_nyquist.pgm"), unit);
  const ComplexImage real_decoded = decode_nyquist(real_ny.tensor);
  const ComplexImage fake_decoded = decode_nyquist(fake_ny.tensor);
  export_image(real_part(real_decoded), emit("decoded_real_re.pgm"), unit);
  export_image(imag_part(real_decoded), emit("decoded_real_im.pgm"), unit);
  export_image(real_part(fake_decoded), emit("decoded_fake_re.pgm"), unit);
  export_image(imag_part(fake_decoded), emit("decoded_fake_im.pgm"), unit);

  const RealTensor real_db = dft2(to_complex(real_ny.tensor)).log_magnitude(true);
  const RealTensor fake_db = dft2(to_complex(fake_ny.tensor)).log_magnitude(true);
  export_image(real_db, emit("real_spectrum.pgm"), spectrum_range(real_db));
  export_image(fake_db, emit("fake_spectrum.pgm"), spectrum_range(fake_db));

  const ComplexImage ifg = interferogram(result.real, result.fake);
  save_tensor(ifg, emit("interferogram.cten"));
  export_image(phase(ifg), emit("interferogram_phase.pgm"),
               Normalization::fixed(-std::numbers::pi, std::numbers::pi));
  const RealTensor coh = result.coherence.magnitude();
  save_tensor(coh, emit("coherence.cten"));
  export_image(coh, emit("coherence.pgm"), Normalization::fixed(0.0, 1.0));

  const auto summary_path = emit("summary.csv");
  std::ofstream f(summary_path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + summary_path.string() + "'");
  char buf[128];
  f << "key,value\n";
  f << "seed," << options.seed << '\n';
  f << "rows," << options.rows << '\n';
  f << "cols," << options.cols << '\n';
  f << "window," << options.window << '\n';
  const auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s,%.17g\n", key, v);
    f << buf;
  };
  put("phase_noise", options.second ? 0.0 : options.phase_noise);
  put("mean_coherence", result.mean_coherence);
  put("coherence_loss", result.coherence_loss);
  put("nyquist_imag_residual", result.nyquist_imag_residual);
  put("nyquist_roundtrip_error", result.nyquist_roundtrip_error);
  for (std::size_t s = 0; s < spec.stripes.size(); ++s) {
    std::snprintf(buf, sizeof buf, "stripe_%zu_omega,%.17g\nstripe_%zu_amplitude,%.17g\n", s,
                  spec.stripes[s].omega, s, spec.stripes[s].amplitude);
    f << buf;
  }
  if (!f) throw IoError("summary write failed");
  return result;
}

}  // namespace insar
