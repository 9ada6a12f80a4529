#ifndef HEBBNET_PLASTICITY_HPP_
#define HEBBNET_PLASTICITY_HPP_

#include <optional>
#include <variant>

namespace hebbnet {

enum class Rule { Compressed, Extended, PlainHebb };

/// Out-of-range weights are replaced by +/- magnitude.
struct HardReset {
  double magnitude = 0.90;
  friend bool operator==(const HardReset&, const HardReset&) = default;
};

/// Out-of-range weights are passed through tanh_rec(|w|, c_weights), keeping their sign.
struct Squash {
  double c_weights = 0.5;
  friend bool operator==(const Squash&, const Squash&) = default;
};

using Bounding = std::variant<HardReset, Squash>;

struct PlasticityParams {
  double eta_ltp = 0.001;
  double eta_ltd = 0.0001;
  // Rate of the x = 0, y > 0 branches of the extended rule. Falls back to
  // eta_ltd when unset.
  std::optional<double> eta_ltp2;
  double threshold = 0.25;
  double creation_value = 0.50;
  // When false, a zero weight is created regardless of x*y (compressed rule only).
  bool creation_requires_threshold = true;
  Rule rule = Rule::Compressed;
  Bounding bounding = HardReset{};

  double ltp2_rate() const { return eta_ltp2.value_or(eta_ltd); }

  /// Throws std::invalid_argument when a field is outside its admissible range.
  void validate() const;

  friend bool operator==(const PlasticityParams&, const PlasticityParams&) = default;
};

// Update rules. x and y are pre- and post-synaptic activations in [0, 1],
// w the current weight in [-1, 1]. Each returns the weight change; the
// caller applies it through bound_weight().

/// Compressed modified Hebbian rule: creation at w = 0, otherwise
/// +/- eta_ltp * x * y depending on whether x * y reaches the threshold.
double delta_w_compressed(double x, double y, double w, const PlasticityParams& p);

/// Extended rule: separate potentiation/depression cases for every sign
/// combination of (x, y, w). Exactly one case applies; 0 otherwise.
double delta_w_extended(double x, double y, double w, const PlasticityParams& p);

/// Plain Hebb: eta * x * y.
double delta_w_plain(double x, double y, double eta);

/// Dispatches on p.rule. PlainHebb uses eta_ltp.
double delta_w(double x, double y, double w, const PlasticityParams& p);

/// Applies delta to w_old while keeping the result in [-1, 1] and never
/// flipping the sign of a nonzero weight (a crossing lands on 0).
double bound_weight(double w_old, double delta, const PlasticityParams& p);

namespace detail {

// Unchecked kernels shared by the public functions and the training loop.

inline double compressed(double x, double y, double w, const PlasticityParams& p) {
  const double xy = x * y;
  if (w == 0.0) {
    return (xy >= p.threshold || !p.creation_requires_threshold) ? p.creation_value : 0.0;
  }
  return xy >= p.threshold ? p.eta_ltp * x * y : -p.eta_ltp * x * y;
}

inline double extended(double x, double y, double w, double ltp2, const PlasticityParams& p) {
  if (w == 0.0) return x * y >= p.threshold ? p.creation_value : 0.0;
  const bool excitatory = w > 0.0;
  if (x > 0.0 && y > 0.0) return excitatory ? p.eta_ltp * x * y : -p.eta_ltp * x * y;
  if (x > 0.0) return excitatory ? -p.eta_ltd * x : p.eta_ltd * x;
  if (y > 0.0) return excitatory ? ltp2 * y : -ltp2 * y;
  return 0.0;
}

double saturate(double w_raw, const Bounding& bounding);

inline double bound(double w_old, double delta, const PlasticityParams& p) {
  const double w_raw = w_old + delta;
  if (w_old > 0.0 && w_raw < 0.0) return 0.0;
  if (w_old < 0.0 && w_raw > 0.0) return 0.0;
  if (w_raw > 1.0 || w_raw < -1.0) return saturate(w_raw, p.bounding);
  return w_raw;
}

}  // namespace detail
}  // namespace hebbnet

#endif  // HEBBNET_PLASTICITY_HPP_
