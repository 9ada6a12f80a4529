#ifndef HEBBNET_POOLING_HPP_
#define HEBBNET_POOLING_HPP_

#include <cstddef>

#include "hebbnet/matrix.hpp"

namespace hebbnet {

/// Fixed connectivity map from a square layer of n cells to a smaller square
/// layer of m cells. Each destination cell (i2, j2) receives weight c from
/// every source cell (i1, j1) whose block coordinate (i1 / r, j1 / r) lies
/// within Chebyshev distance v of (i2, j2), where r = sqrt(n) / sqrt(m).
struct PoolingSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t v = 0;
  double c = 0.0;

  std::size_t source_side() const;
  std::size_t destination_side() const;
  /// Block ratio sqrt(n) / sqrt(m).
  std::size_t ratio() const;

  /// Throws ConfigError unless n and m are perfect squares with m < n, the
  /// side ratio is an integer, v <= sqrt(n) - 1 and c lies in [-1, 1].
  void validate() const;
};

struct GridIndex {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Row-major decomposition of a flat index on a side x side grid.
GridIndex decompose_index(std::size_t x, std::size_t side);

double pooling_weight(std::size_t x, std::size_t y, const PoolingSpec& spec);

/// m x n matrix with entry [y][x] = pooling_weight(x, y, spec).
Matrix build_pooling_matrix(const PoolingSpec& spec);

/// Integer square root when n is a perfect square, 0 otherwise.
std::size_t exact_sqrt(std::size_t n);

}  // namespace hebbnet

#endif  // HEBBNET_POOLING_HPP_
