#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "insar/activation.hpp"
#include "insar/chain_config.hpp"
#include "insar/cnnsim.hpp"
#include "insar/errors.hpp"
#include "insar/spectrum.hpp"
#include "support.hpp"

using namespace insar;
using testsupport::cdouble;

namespace {

constexpr double kPi = std::numbers::pi;

// z_j = sum_i x_i * h_ij + b_j with h = rot180(w), zero padding, 'same' size.
RealTensor conv_oracle(const RealTensor& x, const LayerSpec& s) {
  const auto k = static_cast<std::ptrdiff_t>(s.kernel_size), c = k / 2;
  const auto rows = static_cast<std::ptrdiff_t>(x.rows()), cols = static_cast<std::ptrdiff_t>(x.cols());
  RealTensor z(x.rows(), x.cols(), s.out_channels);
  for (std::size_t j = 0; j < s.out_channels; ++j)
    for (std::ptrdiff_t m = 0; m < rows; ++m)
      for (std::ptrdiff_t n = 0; n < cols; ++n) {
        long double acc = s.biases[j];
        for (std::size_t i = 0; i < s.in_channels; ++i)
          for (std::ptrdiff_t p = 0; p < k; ++p)
            for (std::ptrdiff_t q = 0; q < k; ++q) {
              const std::ptrdiff_t r = m - p + c, t = n - q + c;
              if (r < 0 || t < 0 || r >= rows || t >= cols) continue;
              const double h = s.weight(i, j, std::size_t(k - 1 - p), std::size_t(k - 1 - q));
              acc += static_cast<long double>(h) * x(std::size_t(r), std::size_t(t), i);
            }
        z(std::size_t(m), std::size_t(n), j) = static_cast<double>(acc);
      }
  return z;
}

LayerSpec random_layer(std::size_t in, std::size_t out, std::size_t k, std::uint64_t seed) {
  LayerSpec s;
  s.in_channels = in;
  s.out_channels = out;
  s.kernel_size = k;
  s.weights = testsupport::gaussian(in * out * k * k, seed);
  s.biases = testsupport::gaussian(out, seed + 1);
  return s;
}

RealTensor cos_tone(std::size_t rows, std::size_t cols, std::size_t k0, double offset = 0.0) {
  RealTensor x(rows, cols);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n)
      x(m, n) = offset + std::cos(2 * kPi * double((k0 * n) % cols) / double(cols));
  return x;
}

LayerSpec impulse_layer(Activation a) {
  LayerSpec s;
  s.kernel_size = 3;
  s.weights = canned_kernel(CannedKernel::Impulse, 3);
  s.activation = a;
  return s;
}

}  // namespace

TEST_CASE("convolution matches the direct oracle") {
  std::mt19937_64 eng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t rows = 1 + eng() % 12, cols = 1 + eng() % 12;
    const std::size_t in = 1 + eng() % 3, out = 1 + eng() % 3, k = 1 + 2 * (eng() % 3);
    const auto x = testsupport::random_real(rows, cols, in, 1000 + t);
    const auto spec = random_layer(in, out, k, 2000 + t);
    CHECK(max_abs_diff(conv_layer(x, spec), conv_oracle(x, spec)) <= 1e-12);
  }
}

TEST_CASE("convolution special cases") {
  const auto x = testsupport::random_real(8, 8, 1, 1);
  CHECK(max_abs_diff(conv_layer(x, impulse_layer(Activation::identity())), x) <= 1e-14);

  auto zero = random_layer(2, 3, 3, 4);
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);
  zero.biases = {1.5, -2.0, 0.0};
  const auto z = conv_layer(testsupport::random_real(5, 6, 2, 2), zero);
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(z(m, n, 0) == 1.5);
      CHECK(z(m, n, 1) == -2.0);
      CHECK(z(m, n, 2) == 0.0);
    }

  // A one-sample shift kernel moves content by one column, with zero fill.
  LayerSpec shift;
  shift.kernel_size = 3;
  shift.weights = {0, 0, 0, 0, 0, 1, 0, 0, 0};
  const auto y = conv_layer(x, shift);
  for (std::size_t m = 0; m < 8; ++m) {
    for (std::size_t n = 0; n + 1 < 8; ++n) CHECK(y(m, n) == x(m, n + 1));
    CHECK(y(m, 7) == 0.0);
  }

  CHECK_THROWS_AS(conv_layer(testsupport::random_real(4, 4, 2, 1), impulse_layer(Activation::identity())),
                  InvalidInputError);
  LayerSpec even;
  even.kernel_size = 2;
  even.weights.assign(4, 0.0);
  CHECK_THROWS_AS(conv_layer(x, even), InvalidInputError);
  LayerSpec nan = impulse_layer(Activation::identity());
  nan.biases = {std::nan("")};
  CHECK_THROWS_AS(nan.validate(), InvalidInputError);
}

TEST_CASE("activations") {
  CHECK(Activation::relu()(-1.0) == 0.0);
  CHECK(Activation::relu()(2.0) == 2.0);
  CHECK(Activation::tanh()(0.0) == 0.0);
  CHECK(Activation::sigmoid()(0.0) == 0.5);
  CHECK(Activation::softplus(100)(0.0) == doctest::Approx(std::log(2.0) / 100).epsilon(1e-15));
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(softplus_warped(1000.0, 1.0) == 1000.0);
  CHECK(softplus_warped(-1000.0, 1.0) >= 0.0);
  CHECK_THROWS_AS(Activation::softplus(0.0), InvalidInputError);
  CHECK_THROWS_AS(parse_activation("gelu"), InvalidInputError);
  for (const char* name : {"identity", "relu", "sigmoid", "tanh"})
    CHECK(activation_name(parse_activation(name)) == name);
  const auto sp = parse_activation("softplus", 3.0);
  CHECK(sp.alpha == 3.0);
  RealTensor z(1, 3, 1, {-1.0, 0.0, 2.0});
  const auto y = activate(z, Activation::relu());
  CHECK(y.data()[0] == 0.0);
  CHECK(y.data()[2] == 2.0);
}

TEST_CASE("alias predictor") {
  const double ws = 2 * kPi;
  CHECK(predict_alias(0.7 * ws, ws) == doctest::Approx(-0.3 * ws));
  CHECK(predict_alias(0.5 * ws, ws) == doctest::Approx(-0.5 * ws));
  CHECK(predict_alias(1.2 * ws, ws) == doctest::Approx(0.2 * ws));
  CHECK(predict_alias(-0.5 * ws, ws) == doctest::Approx(-0.5 * ws));
  CHECK(predict_alias(0.0, ws) == 0.0);
  CHECK_THROWS_AS(predict_alias(1.0, 0.0), InvalidInputError);

  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> uw(-50.0, 50.0), us(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = uw(eng), s = us(eng);
    const double f = predict_alias(w, s);
    CHECK(f >= -0.5 * s);
    CHECK(f < 0.5 * s);
    const double d = std::remainder(f - w, s);
    CHECK(std::abs(d) <= 1e-12 * (1 + std::abs(w)));
    const double g = predict_alias(w + s, s);
    const double gap = std::abs(g - f);
    CHECK(std::min(gap, std::abs(gap - s)) <= 1e-12 * (1 + std::abs(w)));
  }
}

TEST_CASE("resampling") {
  RealTensor one(1, 1, 1, {1.0});
  const auto up = resample(one, Resample::Up2);
  CHECK(up == RealTensor(2, 2, 1, {1, 0, 0, 0}));
  CHECK_THROWS_AS(resample(RealTensor(3, 4), Resample::Down2), InvalidInputError);
  const auto x = testsupport::random_real(6, 4, 2, 3);
  const auto d = resample(x, Resample::Down2);
  CHECK(d.rows() == 3);
  CHECK(d(1, 1, 1) == x(2, 2, 1));
  CHECK(resample(x, Resample::None) == x);
  CHECK(parse_resample(resample_name(Resample::Up2)) == Resample::Up2);
}

TEST_CASE("unfiltered Down2 folds a tone to the predicted bin") {
  // omega0 = 0.3 ws becomes 0.6 ws' after decimation, folding to -0.4 ws'.
  const auto y = resample(cos_tone(4, 40, 12), Resample::Down2);
  const auto mags = row_spectrum(y, 0, y.rows() / 2);
  const auto peaks = detect_peaks(mags);
  REQUIRE(peaks.size() == 2);
  const double pred = predict_alias(2 * (2 * kPi * 12 / 40), 2 * kPi);
  CHECK(pred == doctest::Approx(-0.4 * 2 * kPi));
  const std::size_t bin = frequency_bin(pred, 20);
  CHECK(bin == 12);
  CHECK(std::set<std::size_t>{peaks[0].bin, peaks[1].bin} == std::set<std::size_t>{8, 12});
}

TEST_CASE("unfiltered Up2 creates the mirror image tone") {
  const std::size_t n = 32, k0 = 5;
  const auto y = resample(cos_tone(2, n, k0), Resample::Up2);
  const auto peaks = detect_peaks(row_spectrum(y, 0, 0));
  std::set<std::size_t> bins;
  for (const auto& p : peaks) bins.insert(p.bin);
  const double w_new = 2 * kPi * k0 / n / 2;
  const std::size_t image = frequency_bin(predict_alias(w_new + kPi, 2 * kPi), 2 * n);
  CHECK(image == 2 * n - (n - k0));
  CHECK(bins == std::set<std::size_t>{k0, 2 * n - k0, image, n - k0});
}

TEST_CASE("Up2 followed by an ideal low-band projection recovers the input") {
  const std::size_t m = 6, n = 8;
  const auto x = testsupport::random_real(m, n, 1, 21);
  const auto up = resample(x, Resample::Up2);
  std::vector<cdouble> big(up.data().begin(), up.data().end());
  auto spec = testsupport::naive_dft2(big, 2 * m, 2 * n);
  for (std::size_t k = 0; k < 2 * m; ++k)
    for (std::size_t l = 0; l < 2 * n; ++l) {
      const bool keep_k = k < m / 2 || k >= 2 * m - m / 2;
      const bool keep_l = l < n / 2 || l >= 2 * n - n / 2;
      spec[k * 2 * n + l] *= (keep_k && keep_l) ? 4.0 : 0.0;
    }
  const auto back = testsupport::naive_dft2(spec, 2 * m, 2 * n, true);
  double err = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      err = std::max(err, std::abs(back[(2 * r) * 2 * n + 2 * c] - cdouble(x(r, c))));
  CHECK(err <= 1e-10);
}

TEST_CASE("peak detection") {
  std::vector<double> flat(16, 1.0);
  CHECK(detect_peaks(flat).empty());
  CHECK(detect_peaks(std::vector<double>{1.0, 5.0}).empty());
  std::vector<double> v(16, 1e-3);
  v[3] = 1.0;
  v[9] = 4.0;
  v[10] = 2.0;
  v[0] = 0.5;
  const auto p = detect_peaks(v);
  REQUIRE(p.size() == 3);
  CHECK(p[0].bin == 9);
  CHECK(p[1].bin == 3);
  CHECK(p[2].bin == 0);
  CHECK(p[0].level_db == doctest::Approx(20 * std::log10(4.0 + 1e-12)));
  CHECK(detect_peaks(v, PeakOptions{55.0}).size() == 2);
  const auto csv = peaks_csv(p, 16);
  CHECK(csv.rfind("bin,omega,magnitude,level_db\n", 0) == 0);
}

TEST_CASE("run_chain probes and linearity") {
  const auto x = testsupport::random_real(8, 10, 1, 30);
  const auto empty = run_chain(x, LayerChain{}, true);
  CHECK(empty.output == x);
  CHECK(empty.probes.empty());

  LayerChain one{{impulse_layer(Activation::identity())}};
  const auto r = run_chain(x, one, true);
  CHECK(max_abs_diff(r.output, x) <= 1e-14);
  REQUIRE(r.probes.size() == 3);
  CHECK(r.probes[0].stage == ProbeStage::PostConv);
  CHECK(r.probes[1].stage == ProbeStage::PostBias);
  CHECK(r.probes[2].stage == ProbeStage::PostActivation);
  CHECK(r.probes[2].slice_row == 4);
  CHECK(r.probes[2].slice_magnitude.size() == 10);
  CHECK(stage_name(ProbeStage::PostResample) == "post-resample");

  auto l1 = random_layer(2, 3, 3, 40), l2 = random_layer(3, 1, 5, 41);
  l1.biases.assign(3, 0.0);
  l2.biases.assign(1, 0.0);
  l2.resample = Resample::Down2;
  LayerChain lin{{l1, l2}};
  const auto a = testsupport::random_real(8, 12, 2, 50), b = testsupport::random_real(8, 12, 2, 51);
  RealTensor ab = a;
  for (std::size_t i = 0; i < ab.size(); ++i) ab.data()[i] = 2.0 * a.data()[i] - 0.5 * b.data()[i];
  const auto ya = run_chain(a, lin, false).output, yb = run_chain(b, lin, false).output;
  const auto yab = run_chain(ab, lin, true);
  CHECK(yab.probes.size() == 3 * 3 + 4 * 1);
  double err = 0.0;
  for (std::size_t i = 0; i < ya.size(); ++i)
    err = std::max(err, std::abs(yab.output.data()[i] - (2.0 * ya.data()[i] - 0.5 * yb.data()[i])));
  CHECK(err <= 1e-10);

  LayerChain bad{{random_layer(2, 3, 3, 1), random_layer(2, 1, 3, 2)}};
  CHECK_THROWS_AS(run_chain(a, bad, false), InvalidInputError);
  CHECK_THROWS_AS(run_chain(testsupport::random_real(4, 4, 3, 1), lin, false), InvalidInputError);
}

TEST_CASE("harmonics of identity, tanh and ReLU layers") {
  const std::size_t n = 128, k0 = 4;
  const double w0 = 2 * kPi * double(k0) / double(n);
  const auto x = cos_tone(16, n, k0);

  const auto lin = run_chain(x, LayerChain{{impulse_layer(Activation::identity())}}, false).output;
  const auto rl = harmonic_report(lin, w0, 8);
  CHECK(rl.status == "ok");
  CHECK(rl.lines[1].match);
  for (std::size_t k = 2; k <= 8; ++k) CHECK(rl.lines[k].level_db < -200.0);

  const auto th = run_chain(x, LayerChain{{impulse_layer(Activation::tanh())}}, false).output;
  const auto rt = harmonic_report(th, w0, 9);
  for (std::size_t k = 1; k <= 9; k += 2) {
    CHECK(rt.lines[k].level_db > -100.0);
    CHECK(rt.lines[k].match);
  }
  for (std::size_t k = 0; k <= 9; k += 2) CHECK(rt.lines[k].relative_db < -200.0);

  const auto re = run_chain(x, LayerChain{{impulse_layer(Activation::relu())}}, true);
  const auto rr = harmonic_report(re.output, w0, 12);
  CHECK(rr.lines[0].match);
  std::size_t matched = 0;
  for (std::size_t k = 1; k <= 12; ++k) matched += rr.lines[k].match;
  CHECK(matched >= 5);
  const auto& post = re.probes.back();
  CHECK(post.stage == ProbeStage::PostActivation);
  std::set<std::size_t> bins;
  for (const auto& p : post.peaks) bins.insert(p.bin);
  CHECK(bins.contains(0));
  for (std::size_t k : {1u, 2u, 4u, 6u})
    CHECK(bins.contains(frequency_bin(predict_alias(double(k) * w0, 2 * kPi), n)));

  const auto off = harmonic_report(lin, w0 + 0.01, 3);
  CHECK_FALSE(off.bin_aligned);
  CHECK(off.status.rfind("warning", 0) == 0);
  CHECK(harmonic_csv(rr).rfind("k,predicted_omega", 0) == 0);
  CHECK_THROWS_AS(harmonic_report(RealTensor(4, 4, 2), w0, 3), InvalidInputError);
}

TEST_CASE("canned kernels") {
  const auto imp = canned_kernel(CannedKernel::Impulse, 3);
  CHECK(imp == std::vector<double>{0, 0, 0, 0, 1, 0, 0, 0, 0});
  const auto avg = canned_kernel(CannedKernel::Average, 3);
  for (double v : avg) CHECK(v == doctest::Approx(1.0 / 9));
  const auto dc = canned_kernel(CannedKernel::DiffCols, 3);
  CHECK(dc == std::vector<double>{0, 0, 0, 0, -1, 1, 0, 0, 0});
  const auto dr = canned_kernel(CannedKernel::DiffRows, 3);
  CHECK(dr == std::vector<double>{0, 0, 0, 0, -1, 0, 0, 1, 0});
  CHECK_THROWS_AS(canned_kernel(CannedKernel::DiffRows, 1), InvalidInputError);
  CHECK_THROWS_AS(canned_kernel(CannedKernel::Impulse, 4), InvalidInputError);
  CHECK_THROWS_AS(parse_canned_kernel("sobel"), InvalidInputError);
}

TEST_CASE("chain configuration files") {
  const auto chain = parse_chain_config(R"(# two layers
[layer]
in = 2
out = 2
kernel_size = 3
kernel = average
kernel_pairs = diagonal
bias = 0.5, -0.5
activation = softplus
alpha = 10

[layer]
in = 2
out = 1
kernel_size = 1
weights = 1 -1
activation = tanh   # odd
resample = up2
)");
  REQUIRE(chain.layers.size() == 2);
  const auto& l0 = chain.layers[0];
  CHECK(l0.activation.kind == Activation::Kind::SoftplusWarped);
  CHECK(l0.activation.alpha == 10.0);
  CHECK(l0.biases == std::vector<double>{0.5, -0.5});
  CHECK(l0.weight(0, 0, 1, 1) == doctest::Approx(1.0 / 9));
  CHECK(l0.weight(0, 1, 1, 1) == 0.0);
  CHECK(l0.weight(1, 1, 0, 2) == doctest::Approx(1.0 / 9));
  const auto& l1 = chain.layers[1];
  CHECK(l1.weights == std::vector<double>{1.0, -1.0});
  CHECK(l1.biases == std::vector<double>{0.0});
  CHECK(l1.resample == Resample::Up2);

  const auto defaults = parse_chain_config("[layer]\n");
  CHECK(defaults.layers[0].weights == std::vector<double>{1.0});
  CHECK(defaults.layers[0].activation.kind == Activation::Kind::Identity);

  const char* bad[] = {
      "in = 1\n",
      "[layer]\nfoo = 1\n",
      "[layer]\nin = 1\nin = 2\n",
      "[layer]\nactivation = softplus\n",
      "[layer]\nkernel_size = 2\n",
      "[layer]\nweights = 1 2\n",
      "[layer]\nkernel = impulse\nweights = 1\n",
      "[layer]\nbias = x\n",
      "[layer]\nout = 2\n[layer]\nin = 3\n",
      "[network]\n",
      "[layer]\nkernel_pairs = some\n",
      "[layer]\nresample = down3\n",
      "[layer]\nin\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_chain_config(text), ConfigError);
  }
  try {
    parse_chain_config("[layer]\nin = 1\n\nbogus = 2\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(load_chain_config("/nonexistent/chain.cfg"), IoError);
}
