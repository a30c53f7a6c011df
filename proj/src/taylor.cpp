#include "insar/taylor.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "insar/errors.hpp"
#include "insar/spectrum.hpp"

namespace insar {

namespace {

using Poly = std::vector<double>;  // ascending powers

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

// p * (c0 + c1 x + c2 x^2)
Poly times_quadratic(const Poly& p, double c0, double c1, double c2) {
  Poly out(p.size() + 2, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += c0 * p[i];
    out[i + 1] += c1 * p[i];
    out[i + 2] += c2 * p[i];
  }
  return out;
}

// Derivatives 0..count-1 of sigmoid (variant s) or tanh (variant t), as
// polynomials in s = sigmoid(z) or t = tanh(z).
std::vector<Poly> derivative_polys(bool is_tanh, std::size_t count) {
  std::vector<Poly> polys{{0.0, 1.0}};
  while (polys.size() < count) {
    const Poly d = derivative(polys.back());
    polys.push_back(is_tanh ? times_quadratic(d, 1.0, 0.0, -1.0) : times_quadratic(d, 0.0, 1.0, -1.0));
  }
  return polys;
}

}  // namespace

TaylorSeries taylor_coeffs(const Activation& activation, double z0, std::size_t order) {
  if (order > kMaxTaylorOrder) {
    throw InvalidInputError("Taylor order " + std::to_string(order) + " exceeds the limit of " +
                            std::to_string(kMaxTaylorOrder));
  }
  if (!std::isfinite(z0)) throw InvalidInputError("expansion point must be finite");
  TaylorSeries series{z0, std::vector<double>(order + 1, 0.0)};
  auto& c = series.coefficients;
  double factorial = 1.0;

  switch (activation.kind) {
    case Activation::Kind::ReLU:
      throw InvalidInputError(
          "ReLU has no Taylor series at its kink; expand the warped softplus instead");
    case Activation::Kind::Identity:
      c[0] = z0;
      if (order >= 1) c[1] = 1.0;
      break;
    case Activation::Kind::Sigmoid:
    case Activation::Kind::Tanh: {
      const bool is_tanh = activation.kind == Activation::Kind::Tanh;
      const double v = is_tanh ? std::tanh(z0) : sigmoid(z0);
      const auto polys = derivative_polys(is_tanh, order + 1);
      for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        c[k] = horner(polys[k], v) / factorial;
      }
      break;
    }
    case Activation::Kind::SoftplusWarped: {
      const double alpha = activation.alpha;
      c[0] = softplus_warped(z0, alpha);
      if (order == 0) break;
      const double s = sigmoid(alpha * z0);
      const auto polys = derivative_polys(false, order);
      double alpha_pow = 1.0;  // alpha^{k-1}
      for (std::size_t k = 1; k <= order; ++k) {
        factorial *= static_cast<double>(k);
        c[k] = alpha_pow * horner(polys[k - 1], s) / factorial;
        alpha_pow *= alpha;
      }
      break;
    }
  }
  return series;
}

double taylor_eval(const TaylorSeries& series, double z) {
  return horner(series.coefficients, z - series.center);
}

std::vector<ReluGapRow> relu_limit_check(std::span<const double> alphas,
                                         std::span<const double> z_grid) {
  if (alphas.empty() || z_grid.empty()) throw InvalidInputError("alpha list and z grid must be non-empty");
  std::vector<ReluGapRow> rows;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double alpha = alphas[i];
    if (!(alpha > 0.0) || (i > 0 && !(alpha > alphas[i - 1]))) {
      throw InvalidInputError("alphas must be positive and strictly increasing");
    }
    ReluGapRow row;
    row.alpha = alpha;
    row.bound = std::numbers::ln2 / alpha;
    row.argmax_z = z_grid.front();
    for (double z : z_grid) {
      const double gap = softplus_warped(z, alpha) - std::max(0.0, z);
      if (gap > row.sup_gap) {
        row.sup_gap = gap;
        row.argmax_z = z;
      }
    }
    row.within_bound = row.sup_gap <= row.bound + 1e-12;
    if (!rows.empty()) {
      if (rows.back().sup_gap > 0.0) row.ratio_to_previous = row.sup_gap / rows.back().sup_gap;
      row.expected_ratio = rows.back().alpha / alpha;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string relu_gap_csv(std::span<const ReluGapRow> rows) {
  std::string out = "alpha,sup_gap,argmax_z,bound,within_bound,ratio_to_previous,expected_ratio\n";
  const auto optional_field = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", *v);
    return std::string(b);
  };
  char buf[256];
  for (const auto& r : rows) {
    const std::string ratio = optional_field(r.ratio_to_previous);
    const std::string expected = optional_field(r.expected_ratio);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%s,%s\n", r.alpha, r.sup_gap,
                  r.argmax_z, r.bound, r.within_bound ? 1 : 0, ratio.c_str(), expected.c_str());
    out += buf;
  }
  return out;
}

std::string taylor_csv(const TaylorSeries& series) {
  std::string out = "k,center,coefficient\n";
  char buf[96];
  for (std::size_t k = 0; k < series.coefficients.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, series.center, series.coefficients[k]);
    out += buf;
  }
  return out;
}

namespace {

double outside_level(const RealTensor& y, double omega0, std::size_t order, double fundamental_db) {
  const auto mags = row_spectrum(y, 0, y.rows() / 2);
  const std::size_t n = mags.size();
  std::set<std::size_t> allowed;
  for (std::size_t k = 0; k <= order; ++k) {
    const double w = predict_alias(static_cast<double>(k) * omega0, 2.0 * std::numbers::pi);
    allowed.insert(frequency_bin(w, n));
    allowed.insert(frequency_bin(-w, n));
  }
  double worst = kLogMagnitudeFloorDb;
  for (std::size_t b = 0; b < n; ++b) {
    if (!allowed.contains(b)) worst = std::max(worst, log_magnitude_db(mags[b]));
  }
  return worst - fundamental_db;
}

}  // namespace

HarmonicCountReport harmonic_count_check(const Activation& activation, double omega0,
                                         std::size_t order, HarmonicCountOptions options) {
  const TaylorSeries series = taylor_coeffs(activation, options.z0, order);
  RealTensor tone(1, options.cols, 1);
  for (std::size_t n = 0; n < options.cols; ++n) {
    tone(0, n) = options.z0 + options.amplitude * std::cos(omega0 * static_cast<double>(n));
  }
  RealTensor poly_out = tone;
  for (double& v : poly_out.data()) v = taylor_eval(series, v);
  const RealTensor full_out = activate(tone, activation);

  HarmonicCountReport report{series,
                             harmonic_report(poly_out, omega0, order + options.extra, options.peaks),
                             harmonic_report(full_out, omega0, order + options.extra, options.peaks),
                             0.0, 0.0};
  const auto fundamental = [](const HarmonicReport& r) {
    return r.lines.size() > 1 ? r.lines[1].level_db : 0.0;
  };
  report.polynomial_outside_db = outside_level(poly_out, omega0, order, fundamental(report.polynomial));
  report.full_outside_db = outside_level(full_out, omega0, order, fundamental(report.full));
  return report;
}

}  // namespace insar
