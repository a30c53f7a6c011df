#include "insar/activation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "insar/errors.hpp"

namespace insar {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInputError("softplus warping factor must be positive and finite");
  }
}

}  // namespace

Activation Activation::softplus(double alpha) {
  require_alpha(alpha);
  return {Kind::SoftplusWarped, alpha};
}

double Activation::operator()(double z) const {
  switch (kind) {
    case Kind::Identity:
      return z;
    case Kind::ReLU:
      return std::max(0.0, z);
    case Kind::Sigmoid:
      return insar::sigmoid(z);
    case Kind::Tanh:
      return std::tanh(z);
    case Kind::SoftplusWarped:
      return softplus_warped(z, alpha);
  }
  return z;
}

Activation parse_activation(std::string_view name, double alpha) {
  if (name == "identity" || name == "linear") return Activation::identity();
  if (name == "relu") return Activation::relu();
  if (name == "sigmoid") return Activation::sigmoid();
  if (name == "tanh") return Activation::tanh();
  if (name == "softplus") return Activation::softplus(alpha);
  throw InvalidInputError("unknown activation '" + std::string(name) + "'");
}

std::string activation_name(const Activation& a) {
  switch (a.kind) {
    case Activation::Kind::Identity:
      return "identity";
    case Activation::Kind::ReLU:
      return "relu";
    case Activation::Kind::Sigmoid:
      return "sigmoid";
    case Activation::Kind::Tanh:
      return "tanh";
    case Activation::Kind::SoftplusWarped: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "softplus(alpha=%g)", a.alpha);
      return buf;
    }
  }
  return "unknown";
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus_warped(double z, double alpha) {
  require_alpha(alpha);
  return std::max(z, 0.0) + std::log1p(std::exp(-alpha * std::abs(z))) / alpha;
}

}  // namespace insar
