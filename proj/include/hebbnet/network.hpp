#ifndef HEBBNET_NETWORK_HPP_
#define HEBBNET_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hebbnet/activations.hpp"
#include "hebbnet/matrix.hpp"
#include "hebbnet/plasticity.hpp"

namespace hebbnet {

struct LabeledExample;

struct LayerSpec {
  std::size_t size = 0;
  // Subtracted from every neuron's weighted input. Fixed; never learned.
  double bias = 0.0;
  ActivationKind activation = ActivationKind::relu();
  // Whether the weight layer feeding this layer is updated during training.
  bool trainable_incoming = true;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct FullyConnected {
  double initial_weight = 0.0;
  friend bool operator==(const FullyConnected&, const FullyConnected&) = default;
};

/// Square pooling map (see PoolingSpec) with connectivity radius v and weight c.
struct PoolingConnection {
  std::size_t v = 0;
  double c = 0.5;
  friend bool operator==(const PoolingConnection&, const PoolingConnection&) = default;
};

using Connection = std::variant<FullyConnected, PoolingConnection>;

/// layers[0] is the input layer; its bias and activation are unused.
/// connections[k] feeds layers[k + 1].
struct NetworkConfig {
  std::vector<LayerSpec> layers;
  std::vector<Connection> connections;
  PlasticityParams plasticity;

  /// Throws ConfigError on structural problems, std::invalid_argument on bad
  /// activation or plasticity parameters.
  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Per-layer activations for one example, input layer first.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;
  bool clamped = false;
};

/// Feed-forward network trained by local Hebbian updates.
///
/// Weight matrix k has shape layers[k+1].size x layers[k].size; entry (j, i)
/// connects neuron i of layer k to neuron j of layer k+1. Every weight stays
/// in [-1, 1]. Layers that do not learn keep a sparse copy of their weights
/// for the forward pass.
class Network {
 public:
  /// Deterministic construction: fully connected layers get their single
  /// initial value, pooling layers get build_pooling_matrix().
  explicit Network(NetworkConfig config);

  /// Restores a network from explicit weights (used by deserialization).
  Network(NetworkConfig config, std::vector<Matrix> weights, std::uint64_t examples_trained = 0);

  const NetworkConfig& config() const { return config_; }
  std::size_t weight_layer_count() const { return weights_.size(); }
  const Matrix& weights(std::size_t k) const { return weights_.at(k); }
  std::size_t input_size() const { return config_.layers.front().size; }
  std::size_t output_size() const { return config_.layers.back().size; }

  /// Number of train_on_example calls applied so far.
  std::uint64_t examples_trained() const { return examples_trained_; }

  ForwardTrace forward(std::span<const double> input) const;

  /// Same as forward() but the output activations are replaced by the one-hot target.
  ForwardTrace forward_clamped(std::span<const double> input, std::span<const double> target) const;

  /// One supervised step: a clamped trace is computed once, then every
  /// trainable weight layer is updated in forward order from that trace.
  void train_on_example(std::span<const double> input, std::span<const double> target);

  /// Trains on every example in order, `epochs` times over.
  void fit(std::span<const LabeledExample> examples, std::size_t epochs = 1);

  /// Index of the largest un-clamped output activation; ties go to the lowest index.
  std::size_t predict(std::span<const double> input) const;

  /// Fraction of examples whose prediction equals the label.
  double evaluate(std::span<const LabeledExample> examples) const;

 private:
  struct SparseRows {
    std::vector<std::size_t> row_begin;
    std::vector<std::size_t> columns;
    std::vector<double> values;
  };

  void check_input(std::span<const double> input) const;
  void rebuild_frozen_cache();
  void propagate(std::size_t k, std::span<const double> in, std::vector<double>& out) const;

  NetworkConfig config_;
  std::vector<Matrix> weights_;
  std::vector<SparseRows> frozen_;  // empty entry for trainable layers
  std::uint64_t examples_trained_ = 0;
};

/// Index of the maximum value, lowest index on ties.
std::size_t argmax(std::span<const double> values);

}  // namespace hebbnet

#endif  // HEBBNET_NETWORK_HPP_
