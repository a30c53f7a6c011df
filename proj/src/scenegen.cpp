#include "insar/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/random.hpp"
#include "insar/tensor_file.hpp"

namespace insar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinAmplitude = 0.25;
constexpr double kMaxAmplitude = 1.0;

}  // namespace

double FlatEarthScene::fringe_frequency() const {
  return 4.0 * kPi * range_step / wavelength;
}

ComplexImage scene_response(const FlatEarthScene& scene, std::size_t rows, std::size_t cols) {
  if (!(scene.wavelength > 0.0) || !std::isfinite(scene.wavelength)) {
    throw InvalidInputError("wavelength must be positive");
  }
  if (!(scene.range_origin >= 0.0) || !std::isfinite(scene.range_step)) {
    throw InvalidInputError("slant range origin must be >= 0 and the step finite");
  }
  const double omega0 = scene.fringe_frequency();
  if (!std::isfinite(omega0)) throw InvalidInputError("fringe frequency is not finite");
  // Reduce the (possibly huge) origin phase first so the ramp keeps full precision.
  const double phi0 = std::remainder(4.0 * kPi * scene.range_origin / scene.wavelength, 2.0 * kPi);
  ComplexImage out(rows, cols);
  for (std::size_t n = 0; n < cols; ++n) {
    const double phi = phi0 + omega0 * static_cast<double>(n);
    const cdouble v{std::cos(phi), std::sin(phi)};
    for (std::size_t m = 0; m < rows; ++m) out(m, n) = v;
  }
  return out;
}

OnetoneSpec draw_onetone_spec(std::size_t rows, std::size_t cols, std::uint64_t seed,
                              bool bin_aligned) {
  if (rows < kOnetoneStripes || cols == 0) {
    throw InvalidInputError("Onetone patch needs at least one row per stripe and one column");
  }
  OnetoneSpec spec{rows, cols, seed, {}};
  Rng rng(seed);
  for (std::size_t s = 0; s < kOnetoneStripes; ++s) {
    Stripe st;
    if (bin_aligned) {
      const auto n = static_cast<double>(cols);
      const double k = std::floor(rng.uniform() * n) - std::floor(n / 2.0);
      st.omega = 2.0 * kPi * k / n;
    } else {
      st.omega = rng.uniform(-kPi, kPi);
    }
    st.amplitude = rng.uniform(kMinAmplitude, kMaxAmplitude);
    spec.stripes.push_back(st);
  }
  return spec;
}

std::pair<std::size_t, std::size_t> stripe_rows(std::size_t rows, std::size_t count, std::size_t s) {
  return {s * rows / count, (s + 1) * rows / count};
}

OnetonePatch gen_onetone(const OnetoneSpec& spec) {
  const std::size_t count = spec.stripes.size();
  if (count == 0) throw InvalidInputError("Onetone spec has no stripes");
  if (spec.rows < count) {
    throw InvalidInputError("Onetone patch needs at least one row per stripe");
  }
  double a_max = 0.0;
  for (const auto& st : spec.stripes) {
    if (!(st.amplitude > 0.0) || !std::isfinite(st.amplitude) || !std::isfinite(st.omega)) {
      throw InvalidInputError("stripe amplitude must be positive and finite");
    }
    a_max = std::max(a_max, st.amplitude);
  }

  OnetonePatch out{ComplexImage(spec.rows, spec.cols), RealTensor(spec.rows, spec.cols, 3)};
  std::vector<cdouble> row(spec.cols);
  for (std::size_t s = 0; s < count; ++s) {
    const Stripe& st = spec.stripes[s];
    for (std::size_t n = 0; n < spec.cols; ++n) {
      row[n] = std::polar(st.amplitude, st.omega * static_cast<double>(n));
    }
    const double ch0 = (st.omega + kPi) / (2.0 * kPi);
    const double ch1 = st.amplitude / a_max;
    const auto [begin, end] = stripe_rows(spec.rows, count, s);
    for (std::size_t m = begin; m < end; ++m) {
      std::copy(row.begin(), row.end(), out.patch.row(m).begin());
      for (std::size_t n = 0; n < spec.cols; ++n) {
        out.conditioning(m, n, 0) = ch0;
        out.conditioning(m, n, 1) = ch1;
      }
    }
  }
  return out;
}

std::vector<ManifestEntry> gen_onetone_dataset(const DatasetOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create '" + options.out_dir.string() + "': " + ec.message());

  std::vector<ManifestEntry> entries;
  entries.reserve(options.count);
  char name[64];
  for (std::size_t i = 0; i < options.count; ++i) {
    ManifestEntry e;
    e.index = i;
    e.sub_seed = derive_seed(options.seed, i);
    const OnetoneSpec spec = draw_onetone_spec(options.rows, options.cols, e.sub_seed,
                                               options.bin_aligned);
    const OnetonePatch p = gen_onetone(spec);
    std::snprintf(name, sizeof name, "onetone_%05zu_patch.cten", i);
    e.patch_file = name;
    std::snprintf(name, sizeof name, "onetone_%05zu_cond.cten", i);
    e.conditioning_file = name;
    save_tensor(p.patch, options.out_dir / e.patch_file);
    save_tensor(p.conditioning, options.out_dir / e.conditioning_file);
    e.stripes = spec.stripes;
    entries.push_back(std::move(e));
  }

  const std::string csv = manifest_csv(entries);
  std::ofstream f(options.out_dir / "manifest.csv", std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write manifest in '" + options.out_dir.string() + "'");
  f << csv;
  if (!f) throw IoError("manifest write failed");
  return entries;
}

std::string manifest_csv(const std::vector<ManifestEntry>& entries) {
  std::string out = "index,sub_seed,patch,conditioning";
  for (std::size_t s = 0; s < kOnetoneStripes; ++s) {
    out += ",omega_" + std::to_string(s) + ",amplitude_" + std::to_string(s);
  }
  out += '\n';
  char buf[64];
  for (const auto& e : entries) {
    out += std::to_string(e.index) + ',' + std::to_string(e.sub_seed) + ',' + e.patch_file + ',' +
           e.conditioning_file;
    for (const auto& st : e.stripes) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", st.omega, st.amplitude);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace insar
