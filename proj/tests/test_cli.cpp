#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "insar/tensor_file.hpp"
#include "support.hpp"

#ifndef INSARKIT_PATH
#error "INSARKIT_PATH must name the insarkit binary"
#endif

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const std::filesystem::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string("cd '") + dir.string() + "' && '" + INSARKIT_PATH + "' " + args +
                          " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  const auto o = testsupport::read_bytes(out), e = testsupport::read_bytes(err);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, {o.begin(), o.end()}, {e.begin(), e.end()}};
}

}  // namespace

TEST_CASE("exit-code contract") {
  const auto dir = testsupport::scratch_dir("cli_codes");
  CHECK(run("--help", dir).code == 0);
  CHECK(run("encode --help", dir).code == 0);
  CHECK(run("", dir).code == 1);
  CHECK(run("frobnicate", dir).code == 1);
  const auto flag = run("cohloss --bogus-flag a b", dir);
  CHECK(flag.code == 1);
  CHECK(flag.err.find("--bogus-flag") != std::string::npos);
  CHECK(run("encode --scheme wavelet in.cten --out o.cten", dir).code == 1);
  CHECK(run("encode --scheme nyquist missing.cten --out o.cten", dir).code == 2);
  std::ofstream(dir / "junk.cten") << "not a tensor";
  const auto bad = run("decode --scheme reim junk.cten --out o.cten", dir);
  CHECK(bad.code == 2);
  CHECK(bad.err.find("magic") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("pipeline outputs load back") {
  const auto dir = testsupport::scratch_dir("cli_pipe");
  REQUIRE(run("gen-onetone --count 2 --rows 32 --cols 32 --seed 5 --out ds", dir).code == 0);
  CHECK(std::filesystem::exists(dir / "ds" / "manifest.csv"));
  const std::string patch = "ds/onetone_00000_patch.cten", other = "ds/onetone_00001_patch.cten";
  for (const char* s : {"nyquist", "reim", "magphase"}) {
    const std::string scheme(s);
    REQUIRE(run("encode --scheme " + scheme + " " + patch + " --out e_" + scheme + ".cten", dir).code == 0);
    REQUIRE(run("decode --scheme " + scheme + " e_" + scheme + ".cten --out d_" + scheme + ".cten", dir).code == 0);
    CHECK(insar::load_real(dir / ("e_" + scheme + ".cten")).rows() == (scheme == "nyquist" ? 64u : 32u));
    CHECK(insar::load_complex(dir / ("d_" + scheme + ".cten")).rows() == 32);
  }
  const auto sp = run("spectrum --scheme nyquist e_nyquist.cten --raster s.pgm --spectrum-out s.cten", dir);
  CHECK(sp.code == 0);
  CHECK(sp.out.rfind("channel,quadrant,energy,residual\n", 0) == 0);
  CHECK(insar::load_complex(dir / "s.cten").rows() == 64);

  CHECK(run("interferogram " + patch + " " + other + " --out ifg.cten --phase-raster ifg.pgm", dir).code == 0);
  CHECK(insar::load_complex(dir / "ifg.cten").cols() == 32);
  CHECK(run("coherence --window 5 " + patch + " " + other + " --out coh.cten --raster coh.pgm", dir).code == 0);
  CHECK(insar::load_complex(dir / "coh.cten").cols() == 32);

  const auto self = run("cohloss " + patch + " " + patch, dir);
  CHECK(self.code == 0);
  CHECK(self.out == "0.000000000000\n");
  const auto loss = run("cohloss --window 3 " + patch + " " + other, dir);
  CHECK(loss.code == 0);
  const double v = std::stod(loss.out);
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
  CHECK(run("cohloss --window 4 " + patch + " " + other, dir).code == 2);

  std::ofstream(dir / "chain.cfg") << "[layer]\nin = 2\nout = 1\nkernel = average\nactivation = relu\nresample = down2\n";
  const auto sim = run("simulate-layer --chain chain.cfg --input e_reim.cten --probe-dir probes --output y.cten", dir);
  CHECK(sim.code == 0);
  CHECK(insar::load_real(dir / "y.cten").rows() == 16);
  CHECK(insar::load_complex(dir / "probes" / "L00_post-resample_c00_spectrum.cten").rows() == 16);
  CHECK(std::filesystem::exists(dir / "probes" / "L00_post-activation_c00_peaks.csv"));
  CHECK(std::filesystem::exists(dir / "probes" / "probes.csv"));
  std::ofstream(dir / "broken.cfg") << "[layer]\nsize = 3\n";
  CHECK(run("simulate-layer --chain broken.cfg --input e_reim.cten --probe-dir p2", dir).code == 2);

  const auto tay = run("relu-taylor --alpha 100 --z0 0 --order 4", dir);
  CHECK(tay.code == 0);
  CHECK(tay.out.rfind("k,center,coefficient\n0,0,0.0069314718055994", 0) == 0);
  CHECK(tay.out.find("alpha,sup_gap,argmax_z,bound,within_bound,ratio_to_previous,expected_ratio\n") !=
        std::string::npos);
  CHECK(run("relu-taylor --alpha 100 --order 13", dir).code == 2);

  const auto fig = run("-v fig-onetone --seed 2 --rows 32 --cols 32 --out fig", dir);
  CHECK(fig.code == 0);
  CHECK(fig.err.find("kernels:") != std::string::npos);
  CHECK(insar::load_real(dir / "fig" / "conditioning.cten").channels() == 3);
  CHECK(run("fig-onetone --seed 2 --rows 32 --cols 32 --out fig2 -v", dir).code == 0);
  for (const auto& e : std::filesystem::directory_iterator(dir / "fig"))
    CHECK(testsupport::read_bytes(e.path()) == testsupport::read_bytes(dir / "fig2" / e.path().filename()));
  std::filesystem::remove_all(dir);
}
