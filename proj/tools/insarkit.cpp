// insarkit: command-line front end for the insar library.
//
// Exit codes: 0 success, 1 usage error, 2 data/format/I-O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "insar/chain_config.hpp"
#include "insar/cnnsim.hpp"
#include "insar/errors.hpp"
#include "insar/figures.hpp"
#include "insar/kernels.hpp"
#include "insar/mapping.hpp"
#include "insar/metrics.hpp"
#include "insar/raster.hpp"
#include "insar/scenegen.hpp"
#include "insar/spectrum.hpp"
#include "insar/taylor.hpp"
#include "insar/tensor_file.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

bool g_verbose = false;

void note(const std::string& msg) {
  if (g_verbose) std::cerr << msg << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw insar::IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw insar::IoError("write to '" + path.string() + "' failed");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw insar::IoError("cannot create '" + dir.string() + "': " + ec.message());
}

const std::vector<std::string> kSchemes{"nyquist", "reim", "magphase"};

struct GenOnetoneArgs {
  std::size_t count = 250;
  std::size_t rows = 128;
  std::size_t cols = 128;
  std::uint64_t seed = 0;
  bool bin_aligned = false;
  std::string out;
};

struct CodecArgs {
  std::string scheme;
  std::string input;
  std::string out;
};

struct SpectrumArgs {
  std::string scheme = "nyquist";
  std::string input;
  std::string csv;
  std::string raster;
  std::string spectrum_out;
};

struct PairArgs {
  std::string a;
  std::string b;
  std::string out;
  std::string raster;
  std::size_t window = insar::kDefaultCoherenceWindow;
};

struct SimulateArgs {
  std::string chain;
  std::string input;
  std::string probe_dir;
  std::string output;
  double peak_threshold = 6.0;
};

struct TaylorArgs {
  double alpha = 100.0;
  double z0 = 0.0;
  std::size_t order = 4;
  std::vector<double> alphas;
};

int run_gen_onetone(const GenOnetoneArgs& a) {
  insar::DatasetOptions opt{a.count, a.rows, a.cols, a.seed, a.bin_aligned, a.out};
  const auto entries = insar::gen_onetone_dataset(opt);
  note("wrote " + std::to_string(entries.size()) + " Onetone pairs to " + a.out);
  return 0;
}

int run_encode(const CodecArgs& a) {
  const auto scheme = insar::parse_scheme(a.scheme);
  const insar::ComplexImage x = insar::load_complex(a.input);
  insar::save_tensor(insar::encode(x, scheme), a.out);
  return 0;
}

int run_decode(const CodecArgs& a) {
  const auto scheme = insar::parse_scheme(a.scheme);
  const insar::RealTensor t = insar::load_real(a.input);
  insar::save_tensor(insar::decode(t, scheme), a.out);
  return 0;
}

int run_spectrum(const SpectrumArgs& a) {
  const auto scheme = insar::parse_scheme(a.scheme);
  const insar::RealTensor t = insar::load_real(a.input);
  const std::string csv = insar::support_csv(insar::spectrum_support(t, scheme));
  if (a.csv.empty()) {
    std::cout << csv;
  } else {
    write_text(a.csv, csv);
  }
  if (!a.raster.empty() || !a.spectrum_out.empty()) {
    const insar::Spectrum s = insar::dft2(insar::to_complex(t, 0));
    if (!a.spectrum_out.empty()) {
      insar::save_tensor(insar::ComplexImage(s.rows(), s.cols(),
                                             std::vector<insar::cdouble>(s.bins().begin(), s.bins().end())),
                         a.spectrum_out);
    }
    if (!a.raster.empty()) insar::export_image(s.log_magnitude(true), a.raster);
  }
  return 0;
}

int run_interferogram(const PairArgs& a) {
  const auto ifg = insar::interferogram(insar::load_complex(a.a), insar::load_complex(a.b));
  insar::save_tensor(ifg, a.out);
  if (!a.raster.empty()) {
    insar::export_image(insar::phase(ifg), a.raster,
                        insar::Normalization::fixed(-3.141592653589793, 3.141592653589793));
  }
  return 0;
}

int run_coherence(const PairArgs& a) {
  const auto map = insar::coherence(insar::load_complex(a.a), insar::load_complex(a.b), a.window);
  insar::save_tensor(map.gamma, a.out);
  if (!a.raster.empty()) {
    insar::export_image(map.magnitude(), a.raster, insar::Normalization::fixed(0.0, 1.0));
  }
  note("mean |gamma| = " + std::to_string(map.mean_magnitude()));
  return 0;
}

int run_cohloss(const PairArgs& a) {
  const double loss =
      insar::coherence_loss(insar::load_complex(a.a), insar::load_complex(a.b), a.window);
  std::printf("%.12f\n", loss);
  return 0;
}

int run_simulate(const SimulateArgs& a) {
  const insar::LayerChain chain = insar::load_chain_config(a.chain);
  const insar::RealTensor x = insar::load_real(a.input);
  const insar::PeakOptions peaks{a.peak_threshold};
  const insar::ChainResult result = insar::run_chain(x, chain, true, peaks);

  const fs::path dir = a.probe_dir;
  ensure_dir(dir);
  std::string index = "layer,stage,channel,spectrum,peaks,raster,peak_count\n";
  char stem[96];
  for (const auto& p : result.probes) {
    std::snprintf(stem, sizeof stem, "L%02zu_%s_c%02zu", p.layer,
                  std::string(insar::stage_name(p.stage)).c_str(), p.channel);
    const std::string base(stem);
    const auto& bins = p.spectrum.bins();
    insar::save_tensor(insar::ComplexImage(p.spectrum.rows(), p.spectrum.cols(),
                                           std::vector<insar::cdouble>(bins.begin(), bins.end())),
                       dir / (base + "_spectrum.cten"));
    write_text(dir / (base + "_peaks.csv"), insar::peaks_csv(p.peaks, p.slice_magnitude.size()));
    insar::export_image(p.spectrum.log_magnitude(true), dir / (base + "_logmag.pgm"));
    index += std::to_string(p.layer) + ',' + std::string(insar::stage_name(p.stage)) + ',' +
             std::to_string(p.channel) + ',' + base + "_spectrum.cten," + base + "_peaks.csv," +
             base + "_logmag.pgm," + std::to_string(p.peaks.size()) + '\n';
  }
  write_text(dir / "probes.csv", index);
  if (!a.output.empty()) insar::save_tensor(result.output, a.output);
  note("captured " + std::to_string(result.probes.size()) + " probes");
  return 0;
}

int run_relu_taylor(const TaylorArgs& a) {
  const auto series = insar::taylor_coeffs(insar::Activation::softplus(a.alpha), a.z0, a.order);
  std::cout << insar::taylor_csv(series) << '\n';
  std::vector<double> alphas = a.alphas;
  if (alphas.empty()) alphas = {a.alpha, 2.0 * a.alpha, 4.0 * a.alpha};
  std::vector<double> grid;
  for (int i = -2000; i <= 2000; ++i) grid.push_back(static_cast<double>(i) / 1000.0);
  std::cout << insar::relu_gap_csv(insar::relu_limit_check(alphas, grid));
  return 0;
}

int run_fig_onetone(const insar::FigOnetoneOptions& opt) {
  const auto result = insar::fig_onetone(opt);
  note("mean |gamma| = " + std::to_string(result.mean_coherence) + ", " +
       std::to_string(result.files.size()) + " files in " + opt.out_dir.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis, complex-to-real mapping and spectral analysis of InSAR patches"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-v,--verbose", g_verbose, "Report progress and the selected kernel ISA on stderr");

  GenOnetoneArgs gen;
  auto* c_gen = app.add_subcommand("gen-onetone", "Write an Onetone dataset of CTEN pairs plus manifest.csv");
  c_gen->add_option("--count", gen.count, "Number of (patch, conditioning) pairs")->capture_default_str();
  c_gen->add_option("--rows", gen.rows, "Patch rows")->capture_default_str();
  c_gen->add_option("--cols", gen.cols, "Patch columns")->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Dataset seed")->capture_default_str();
  c_gen->add_flag("--bin-aligned", gen.bin_aligned, "Draw stripe frequencies from the DFT bin grid");
  c_gen->add_option("--out", gen.out, "Output directory")->required();

  CodecArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Map a complex CTEN image to a real tensor");
  c_enc->add_option("--scheme", enc.scheme, "Mapping scheme")->required()->check(CLI::IsMember(kSchemes));
  c_enc->add_option("input", enc.input, "Complex input CTEN")->required();
  c_enc->add_option("--out", enc.out, "Real output CTEN")->required();

  CodecArgs dec;
  auto* c_dec = app.add_subcommand("decode", "Map an encoded real tensor back to a complex image");
  c_dec->add_option("--scheme", dec.scheme, "Mapping scheme")->required()->check(CLI::IsMember(kSchemes));
  c_dec->add_option("input", dec.input, "Real input CTEN")->required();
  c_dec->add_option("--out", dec.out, "Complex output CTEN")->required();

  SpectrumArgs spec;
  auto* c_spec = app.add_subcommand("spectrum", "Quadrant energy and conjugate-symmetry report of an encoded tensor");
  c_spec->add_option("--scheme", spec.scheme, "Scheme the tensor was encoded with")
      ->capture_default_str()
      ->check(CLI::IsMember(kSchemes));
  c_spec->add_option("input", spec.input, "Real input CTEN")->required();
  c_spec->add_option("--csv", spec.csv, "Write the CSV report here instead of stdout");
  c_spec->add_option("--raster", spec.raster, "Log-magnitude raster (PGM) of channel 0");
  c_spec->add_option("--spectrum-out", spec.spectrum_out, "Complex DFT bins of channel 0 as CTEN");

  PairArgs ifg;
  auto* c_ifg = app.add_subcommand("interferogram", "x1 * conj(x2) of two complex images");
  c_ifg->add_option("a", ifg.a, "First complex CTEN")->required();
  c_ifg->add_option("b", ifg.b, "Second complex CTEN")->required();
  c_ifg->add_option("--out", ifg.out, "Complex output CTEN")->required();
  c_ifg->add_option("--phase-raster", ifg.raster, "Phase raster (PGM)");

  PairArgs coh;
  auto* c_coh = app.add_subcommand("coherence", "Windowed complex coherence map");
  c_coh->add_option("--window", coh.window, "Odd boxcar side length")->capture_default_str();
  c_coh->add_option("a", coh.a, "First complex CTEN")->required();
  c_coh->add_option("b", coh.b, "Second complex CTEN")->required();
  c_coh->add_option("--out", coh.out, "Complex coherence CTEN")->required();
  c_coh->add_option("--raster", coh.raster, "|gamma| raster (PGM)");

  PairArgs loss;
  auto* c_loss = app.add_subcommand("cohloss", "Print the coherence loss 1 - mean |gamma|");
  c_loss->add_option("--window", loss.window, "Odd boxcar side length")->capture_default_str();
  c_loss->add_option("a", loss.a, "First complex CTEN")->required();
  c_loss->add_option("b", loss.b, "Second complex CTEN")->required();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate-layer", "Run a layer chain and dump per-stage spectra");
  c_sim->add_option("--chain", sim.chain, "Chain configuration file")->required();
  c_sim->add_option("--input", sim.input, "Real input CTEN")->required();
  c_sim->add_option("--probe-dir", sim.probe_dir, "Directory for probe outputs")->required();
  c_sim->add_option("--output", sim.output, "Chain output CTEN");
  c_sim->add_option("--peak-threshold", sim.peak_threshold, "Peak threshold above the median [dB]")
      ->capture_default_str();

  TaylorArgs tay;
  auto* c_tay = app.add_subcommand("relu-taylor", "Taylor coefficients of the warped softplus and ReLU sup-gap report");
  c_tay->add_option("--alpha", tay.alpha, "Warping factor")->capture_default_str();
  c_tay->add_option("--z0", tay.z0, "Expansion point")->capture_default_str();
  c_tay->add_option("--order", tay.order, "Series order (<= 12)")->capture_default_str();
  c_tay->add_option("--alphas", tay.alphas, "Increasing alphas for the sup-gap report (default alpha, 2 alpha, 4 alpha)");

  insar::FigOnetoneOptions fig;
  std::string fig_out;
  std::string fig_second;
  auto* c_fig = app.add_subcommand("fig-onetone", "Onetone figure panel set (rasters, CTEN and summary.csv)");
  c_fig->add_option("--seed", fig.seed, "Patch seed")->capture_default_str();
  c_fig->add_option("--rows", fig.rows, "Patch rows (even)")->capture_default_str();
  c_fig->add_option("--cols", fig.cols, "Patch columns (even)")->capture_default_str();
  c_fig->add_option("--phase-noise", fig.phase_noise, "Phase noise of the stand-in fake [rad]")->capture_default_str();
  c_fig->add_option("--window", fig.window, "Coherence window")->capture_default_str();
  c_fig->add_option("--second", fig_second, "Use this complex CTEN as the fake instead");
  c_fig->add_flag("--bin-aligned", fig.bin_aligned, "Bin-aligned stripe frequencies");
  c_fig->add_option("--out", fig_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  note(std::string("kernels: ") + std::string(insar::kernels::isa_name(insar::kernels::active().isa)));
  try {
    if (*c_gen) return run_gen_onetone(gen);
    if (*c_enc) return run_encode(enc);
    if (*c_dec) return run_decode(dec);
    if (*c_spec) return run_spectrum(spec);
    if (*c_ifg) return run_interferogram(ifg);
    if (*c_coh) return run_coherence(coh);
    if (*c_loss) return run_cohloss(loss);
    if (*c_sim) return run_simulate(sim);
    if (*c_tay) return run_relu_taylor(tay);
    if (*c_fig) {
      fig.out_dir = fig_out;
      if (!fig_second.empty()) fig.second = fig_second;
      return run_fig_onetone(fig);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
