#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "insar/activation.hpp"
#include "insar/cnnsim.hpp"

namespace insar {

/// Truncated power series sum_k c_k (z - center)^k.
struct TaylorSeries {
  double center = 0.0;
  std::vector<double> coefficients;  // c_0 .. c_K

  std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// Derivative recurrences lose accuracy quickly past this order.
inline constexpr std::size_t kMaxTaylorOrder = 12;

/// c_k = a^{(k)}(z0) / k! from closed-form derivative recurrences:
///   sigmoid   d/dz P(s) = P'(s) s (1 - s),   s = sigmoid(z)
///   tanh      d/dz Q(t) = Q'(t) (1 - t^2),   t = tanh(z)
///   softplus  a^{(k)}(z) = alpha^{k-1} sigmoid^{(k-1)}(alpha z), k >= 1
/// Identity is accepted (affine series). ReLU is rejected: it has no Taylor
/// series at the kink; expand the warped Softplus instead.
/// Throws InvalidInputError for ReLU or order > kMaxTaylorOrder.
TaylorSeries taylor_coeffs(const Activation& activation, double z0, std::size_t order);

/// Horner evaluation.
double taylor_eval(const TaylorSeries& series, double z);

struct ReluGapRow {
  double alpha = 0.0;
  double sup_gap = 0.0;  // max over the grid of softplus_warped - ReLU
  double argmax_z = 0.0;
  double bound = 0.0;    // ln(2) / alpha
  bool within_bound = false;                // sup_gap <= bound + 1e-12
  std::optional<double> ratio_to_previous;  // sup_gap / previous row's sup_gap
  std::optional<double> expected_ratio;     // previous alpha / alpha
};

/// Sup-gap between the warped Softplus and ReLU on `z_grid` for each alpha.
/// Throws InvalidInputError unless `alphas` is non-empty, positive and
/// strictly increasing and the grid is non-empty.
std::vector<ReluGapRow> relu_limit_check(std::span<const double> alphas,
                                         std::span<const double> z_grid);
std::string relu_gap_csv(std::span<const ReluGapRow> rows);
std::string taylor_csv(const TaylorSeries& series);

struct HarmonicCountOptions {
  double amplitude = 0.1;
  double z0 = 0.0;          // operating point: tone is z0 + A cos(omega0 n)
  std::size_t cols = 128;
  std::size_t extra = 3;    // harmonics reported beyond the series order
  PeakOptions peaks{};
};

struct HarmonicCountReport {
  TaylorSeries series;
  HarmonicReport polynomial;  // truncated series applied to the tone
  HarmonicReport full;        // the activation itself
  // Strongest bin outside the folded set {0, +-omega0, ..., +-K omega0},
  // relative to the fundamental.
  double polynomial_outside_db = 0.0;
  double full_outside_db = 0.0;
};

/// Applies the order-K series and the full activation to one bin-aligned
/// tone and reports the harmonic lines of both.
HarmonicCountReport harmonic_count_check(const Activation& activation, double omega0,
                                         std::size_t order, HarmonicCountOptions options = {});

}  // namespace insar
