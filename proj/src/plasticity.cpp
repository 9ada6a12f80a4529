#include "hebbnet/plasticity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hebbnet/activations.hpp"

namespace hebbnet {
namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

void check_weight(double w) {
  if (!(w >= -1.0 && w <= 1.0)) {
    throw std::invalid_argument("weight must lie in [-1, 1], got " + std::to_string(w));
  }
}

}  // namespace

void PlasticityParams::validate() const {
  if (!positive(eta_ltp) || !positive(eta_ltd)) {
    throw std::invalid_argument("learning rates must be positive");
  }
  if (eta_ltp2 && !positive(*eta_ltp2)) throw std::invalid_argument("eta_ltp2 must be positive");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
  if (!(creation_value > 0.0 && creation_value <= 1.0)) {
    throw std::invalid_argument("creation value must lie in (0, 1]");
  }
  if (const auto* reset = std::get_if<HardReset>(&bounding)) {
    if (!(reset->magnitude > 0.0 && reset->magnitude < 1.0)) {
      throw std::invalid_argument("reset magnitude must lie in (0, 1)");
    }
  } else if (!positive(std::get<Squash>(bounding).c_weights)) {
    throw std::invalid_argument("c_weights must be positive");
  }
}

double delta_w_compressed(double x, double y, double w, const PlasticityParams& p) {
  check_unit(x, "x");
  check_unit(y, "y");
  check_weight(w);
  return detail::compressed(x, y, w, p);
}

double delta_w_extended(double x, double y, double w, const PlasticityParams& p) {
  check_unit(x, "x");
  check_unit(y, "y");
  check_weight(w);
  return detail::extended(x, y, w, p.ltp2_rate(), p);
}

double delta_w_plain(double x, double y, double eta) {
  check_unit(x, "x");
  check_unit(y, "y");
  if (!positive(eta)) throw std::invalid_argument("eta must be positive");
  return eta * x * y;
}

double delta_w(double x, double y, double w, const PlasticityParams& p) {
  switch (p.rule) {
    case Rule::Compressed:
      return delta_w_compressed(x, y, w, p);
    case Rule::Extended:
      return delta_w_extended(x, y, w, p);
    case Rule::PlainHebb:
      check_weight(w);
      return delta_w_plain(x, y, p.eta_ltp);
  }
  throw std::invalid_argument("unknown plasticity rule");
}

double bound_weight(double w_old, double delta, const PlasticityParams& p) {
  check_weight(w_old);
  return detail::bound(w_old, delta, p);
}

namespace detail {

double saturate(double w_raw, const Bounding& bounding) {
  if (const auto* reset = std::get_if<HardReset>(&bounding)) {
    return w_raw > 0.0 ? reset->magnitude : -reset->magnitude;
  }
  const double c = std::get<Squash>(bounding).c_weights;
  return w_raw > 0.0 ? tanh_rec(w_raw, c) : -tanh_rec(-w_raw, c);
}

}  // namespace detail
}  // namespace hebbnet
