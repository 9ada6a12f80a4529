#include "hebbnet/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hebbnet/data.hpp"
#include "hebbnet/errors.hpp"
#include "hebbnet/pooling.hpp"

namespace hebbnet {
namespace {

bool in_unit_interval(std::span<const double> values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return true;
}

void check_one_hot(std::span<const double> target, std::size_t size) {
  if (target.size() != size) {
    throw std::invalid_argument("target has length " + std::to_string(target.size()) + ", expected " +
                                std::to_string(size));
  }
  std::size_t ones = 0;
  for (double v : target) {
    if (v == 1.0) {
      ++ones;
    } else if (v != 0.0) {
      throw std::invalid_argument("target is not one-hot");
    }
  }
  if (ones != 1) throw std::invalid_argument("target is not one-hot");
}

template <typename DeltaFn>
void update_layer(Matrix& weights, std::span<const double> source, std::span<const double> destination,
                  const PlasticityParams& params, DeltaFn delta) {
  for (std::size_t j = 0; j < weights.rows(); ++j) {
    const double y = destination[j];
    std::span<double> row = weights.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = detail::bound(row[i], delta(source[i], y, row[i]), params);
    }
  }
}

}  // namespace

void NetworkConfig::validate() const {
  if (layers.size() < 2) throw ConfigError("a network needs at least an input and an output layer");
  if (connections.size() != layers.size() - 1) {
    throw ConfigError("expected " + std::to_string(layers.size() - 1) + " connection entries, got " +
                      std::to_string(connections.size()));
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (layers[k].size == 0) throw ConfigError("layer " + std::to_string(k) + " is empty");
    if (!std::isfinite(layers[k].bias)) throw ConfigError("layer " + std::to_string(k) + " has a non-finite bias");
    if (k > 0) layers[k].activation.validate();
  }
  for (std::size_t k = 0; k < connections.size(); ++k) {
    if (const auto* full = std::get_if<FullyConnected>(&connections[k])) {
      if (!(full->initial_weight >= -1.0 && full->initial_weight <= 1.0)) {
        throw ConfigError("initial weight of connection " + std::to_string(k) + " outside [-1, 1]");
      }
    } else {
      const auto& pool = std::get<PoolingConnection>(connections[k]);
      PoolingSpec{layers[k].size, layers[k + 1].size, pool.v, pool.c}.validate();
    }
  }
  plasticity.validate();
}

Network::Network(NetworkConfig config) : config_(std::move(config)) {
  config_.validate();
  weights_.reserve(config_.connections.size());
  for (std::size_t k = 0; k < config_.connections.size(); ++k) {
    const std::size_t rows = config_.layers[k + 1].size;
    const std::size_t cols = config_.layers[k].size;
    if (const auto* full = std::get_if<FullyConnected>(&config_.connections[k])) {
      weights_.emplace_back(rows, cols, full->initial_weight);
    } else {
      const auto& pool = std::get<PoolingConnection>(config_.connections[k]);
      weights_.push_back(build_pooling_matrix({cols, rows, pool.v, pool.c}));
    }
  }
  rebuild_frozen_cache();
}

Network::Network(NetworkConfig config, std::vector<Matrix> weights, std::uint64_t examples_trained)
    : config_(std::move(config)), weights_(std::move(weights)), examples_trained_(examples_trained) {
  config_.validate();
  if (weights_.size() != config_.connections.size()) {
    throw ConfigError("expected " + std::to_string(config_.connections.size()) + " weight matrices, got " +
                      std::to_string(weights_.size()));
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k].rows() != config_.layers[k + 1].size || weights_[k].cols() != config_.layers[k].size) {
      throw ConfigError("weight matrix " + std::to_string(k) + " has the wrong shape");
    }
    for (double w : weights_[k].values()) {
      if (!(w >= -1.0 && w <= 1.0)) throw ConfigError("weight matrix " + std::to_string(k) + " leaves [-1, 1]");
    }
  }
  rebuild_frozen_cache();
}

void Network::rebuild_frozen_cache() {
  frozen_.assign(weights_.size(), {});
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (config_.layers[k + 1].trainable_incoming) continue;
    const Matrix& w = weights_[k];
    SparseRows& sparse = frozen_[k];
    sparse.row_begin.reserve(w.rows() + 1);
    for (std::size_t j = 0; j < w.rows(); ++j) {
      sparse.row_begin.push_back(sparse.columns.size());
      for (std::size_t i = 0; i < w.cols(); ++i) {
        if (w(j, i) != 0.0) {
          sparse.columns.push_back(i);
          sparse.values.push_back(w(j, i));
        }
      }
    }
    sparse.row_begin.push_back(sparse.columns.size());
  }
}

void Network::check_input(std::span<const double> input) const {
  if (input.size() != input_size()) {
    throw std::invalid_argument("input has length " + std::to_string(input.size()) + ", expected " +
                                std::to_string(input_size()));
  }
  if (!in_unit_interval(input)) throw std::invalid_argument("input values must lie in [0, 1]");
}

void Network::propagate(std::size_t k, std::span<const double> in, std::vector<double>& out) const {
  const LayerSpec& layer = config_.layers[k + 1];
  out.assign(layer.size, 0.0);
  const SparseRows& sparse = frozen_[k];
  const bool use_sparse = !sparse.row_begin.empty();
  for (std::size_t j = 0; j < layer.size; ++j) {
    double sum = 0.0;
    if (use_sparse) {
      // Skipping zero weights leaves the sum bit-identical to the dense loop
      // because every activation is finite and non-negative.
      for (std::size_t e = sparse.row_begin[j]; e < sparse.row_begin[j + 1]; ++e) {
        sum += in[sparse.columns[e]] * sparse.values[e];
      }
    } else {
      std::span<const double> row = weights_[k].row(j);
      for (std::size_t i = 0; i < row.size(); ++i) sum += in[i] * row[i];
    }
    out[j] = apply_activation(layer.activation, sum - layer.bias);
  }
}

ForwardTrace Network::forward(std::span<const double> input) const {
  check_input(input);
  ForwardTrace trace;
  trace.activations.resize(config_.layers.size());
  trace.activations[0].assign(input.begin(), input.end());
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    propagate(k, trace.activations[k], trace.activations[k + 1]);
  }
  return trace;
}

ForwardTrace Network::forward_clamped(std::span<const double> input, std::span<const double> target) const {
  check_one_hot(target, output_size());
  ForwardTrace trace = forward(input);
  trace.activations.back().assign(target.begin(), target.end());
  trace.clamped = true;
  return trace;
}

void Network::train_on_example(std::span<const double> input, std::span<const double> target) {
  const ForwardTrace trace = forward_clamped(input, target);
  const PlasticityParams& params = config_.plasticity;
  const double ltp2 = params.ltp2_rate();
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (!config_.layers[k + 1].trainable_incoming) continue;
    const std::vector<double>& source = trace.activations[k];
    const std::vector<double>& destination = trace.activations[k + 1];
    if (!in_unit_interval(source) || !in_unit_interval(destination)) {
      throw std::invalid_argument("activations feeding weight layer " + std::to_string(k) +
                                  " leave [0, 1]; the update rules are undefined there");
    }
    switch (params.rule) {
      case Rule::Compressed:
        update_layer(weights_[k], source, destination, params,
                     [&params](double x, double y, double w) { return detail::compressed(x, y, w, params); });
        break;
      case Rule::Extended:
        update_layer(weights_[k], source, destination, params, [&params, ltp2](double x, double y, double w) {
          return detail::extended(x, y, w, ltp2, params);
        });
        break;
      case Rule::PlainHebb:
        update_layer(weights_[k], source, destination, params,
                     [eta = params.eta_ltp](double x, double y, double) { return eta * x * y; });
        break;
    }
  }
  ++examples_trained_;
}

void Network::fit(std::span<const LabeledExample> examples, std::size_t epochs) {
  if (examples.empty()) throw std::invalid_argument("fit needs at least one example");
  if (epochs == 0) throw std::invalid_argument("epochs must be positive");
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    for (const LabeledExample& example : examples) {
      const std::vector<double> target = one_hot(example.label, output_size());
      train_on_example(example.pixels, target);
    }
  }
}

std::size_t Network::predict(std::span<const double> input) const {
  return argmax(forward(input).activations.back());
}

double Network::evaluate(std::span<const LabeledExample> examples) const {
  if (examples.empty()) throw std::invalid_argument("cannot evaluate on an empty example list");
  std::size_t correct = 0;
  for (const LabeledExample& example : examples) {
    if (predict(example.pixels) == static_cast<std::size_t>(example.label)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace hebbnet
