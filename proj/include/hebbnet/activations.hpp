#ifndef HEBBNET_ACTIVATIONS_HPP_
#define HEBBNET_ACTIVATIONS_HPP_

namespace hebbnet {

enum class Activation { RectifiedTanh, Relu };

/// Nonlinearity applied by a layer. The coefficient scales the argument of
/// tanh and is ignored for Relu.
struct ActivationKind {
  Activation variant = Activation::Relu;
  double coefficient = 1.0;

  static ActivationKind rectified_tanh(double coefficient);
  static ActivationKind relu() { return {}; }

  /// Throws std::invalid_argument if a RectifiedTanh coefficient is not a
  /// positive finite number.
  void validate() const;

  friend bool operator==(const ActivationKind&, const ActivationKind&) = default;
};

/// tanh(c * x) for x > 0, otherwise 0. Result lies in [0, 1).
double tanh_rec(double x, double c);

double relu(double x);

double apply_activation(const ActivationKind& kind, double preactivation);

}  // namespace hebbnet

#endif  // HEBBNET_ACTIVATIONS_HPP_
