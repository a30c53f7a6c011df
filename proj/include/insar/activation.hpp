#pragma once

#include <string>
#include <string_view>

namespace insar {

struct Activation {
  enum class Kind { Identity, ReLU, Sigmoid, Tanh, SoftplusWarped };
  Kind kind = Kind::Identity;
  double alpha = 1.0;  // warping factor, SoftplusWarped only

  static Activation identity() { return {Kind::Identity, 1.0}; }
  static Activation relu() { return {Kind::ReLU, 1.0}; }
  static Activation sigmoid() { return {Kind::Sigmoid, 1.0}; }
  static Activation tanh() { return {Kind::Tanh, 1.0}; }
  /// Throws InvalidInputError unless alpha > 0.
  static Activation softplus(double alpha);

  double operator()(double z) const;
};

/// "identity", "relu", "sigmoid", "tanh" or "softplus" (alpha supplied separately).
Activation parse_activation(std::string_view name, double alpha = 1.0);
std::string activation_name(const Activation& a);

/// Logistic function, evaluated without overflow for either sign of z.
double sigmoid(double z);

/// Warped Softplus (1/alpha) ln(1 + e^{alpha z}) in the overflow-safe form
/// max(z, 0) + (1/alpha) ln(1 + e^{-alpha |z|}). Converges to ReLU as
/// alpha grows, never below it, with the largest gap ln(2)/alpha at z = 0.
/// Throws InvalidInputError unless alpha > 0.
double softplus_warped(double z, double alpha);

}  // namespace insar
