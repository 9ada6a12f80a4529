#include "hebbnet/pooling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hebbnet/errors.hpp"

namespace hebbnet {
namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::size_t exact_sqrt(std::size_t n) {
  auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return root * root == n ? root : 0;
}

std::size_t PoolingSpec::source_side() const { return exact_sqrt(n); }
std::size_t PoolingSpec::destination_side() const { return exact_sqrt(m); }

std::size_t PoolingSpec::ratio() const {
  const std::size_t dst = destination_side();
  return dst == 0 ? 0 : source_side() / dst;
}

void PoolingSpec::validate() const {
  const std::size_t src = source_side();
  const std::size_t dst = destination_side();
  if (src == 0 || dst == 0) {
    throw ConfigError("pooling needs perfect-square layer sizes, got " + std::to_string(n) + " -> " +
                      std::to_string(m));
  }
  if (m >= n) throw ConfigError("pooling destination must be smaller than its source");
  if (src % dst != 0) {
    throw ConfigError("pooling side ratio sqrt(" + std::to_string(n) + ")/sqrt(" + std::to_string(m) +
                      ") is not an integer");
  }
  if (v > src - 1) throw ConfigError("connectivity factor " + std::to_string(v) + " exceeds sqrt(n) - 1");
  if (!(c >= -1.0 && c <= 1.0)) throw ConfigError("pooling weight must lie in [-1, 1]");
}

GridIndex decompose_index(std::size_t x, std::size_t side) {
  if (side == 0 || x >= side * side) {
    throw std::invalid_argument("index " + std::to_string(x) + " outside a " + std::to_string(side) + "x" +
                                std::to_string(side) + " grid");
  }
  return {x / side, x % side};
}

double pooling_weight(std::size_t x, std::size_t y, const PoolingSpec& spec) {
  if (x >= spec.n || y >= spec.m) throw std::invalid_argument("pooling index out of range");
  const std::size_t r = spec.ratio();
  if (r == 0) throw ConfigError("invalid pooling layer sizes");
  const GridIndex src = decompose_index(x, spec.source_side());
  const GridIndex dst = decompose_index(y, spec.destination_side());
  const bool connected = distance(src.row / r, dst.row) <= spec.v && distance(src.col / r, dst.col) <= spec.v;
  return connected ? spec.c : 0.0;
}

Matrix build_pooling_matrix(const PoolingSpec& spec) {
  spec.validate();
  Matrix weights(spec.m, spec.n);
  for (std::size_t y = 0; y < spec.m; ++y) {
    for (std::size_t x = 0; x < spec.n; ++x) weights(y, x) = pooling_weight(x, y, spec);
  }
  return weights;
}

}  // namespace hebbnet
