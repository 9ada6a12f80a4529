#include "hebbnet/activations.hpp"

#include <cmath>
#include <stdexcept>

namespace hebbnet {

ActivationKind ActivationKind::rectified_tanh(double coefficient) {
  ActivationKind kind{Activation::RectifiedTanh, coefficient};
  kind.validate();
  return kind;
}

void ActivationKind::validate() const {
  if (variant == Activation::RectifiedTanh && !(std::isfinite(coefficient) && coefficient > 0.0)) {
    throw std::invalid_argument("rectified tanh coefficient must be positive and finite");
  }
}

double tanh_rec(double x, double c) {
  if (!std::isfinite(x)) throw std::invalid_argument("tanh_rec: non-finite input");
  if (!(std::isfinite(c) && c > 0.0)) throw std::invalid_argument("tanh_rec: coefficient must be > 0");
  // std::tanh saturates to 1 instead of overflowing for large c*x.
  return x > 0.0 ? std::tanh(c * x) : 0.0;
}

double relu(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("relu: non-finite input");
  return x > 0.0 ? x : 0.0;
}

double apply_activation(const ActivationKind& kind, double preactivation) {
  switch (kind.variant) {
    case Activation::RectifiedTanh:
      return tanh_rec(preactivation, kind.coefficient);
    case Activation::Relu:
      return relu(preactivation);
  }
  throw std::invalid_argument("unknown activation");
}

}  // namespace hebbnet
