#ifndef HEBBNET_HARNESS_HPP_
#define HEBBNET_HARNESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hebbnet/data.hpp"
#include "hebbnet/network.hpp"

namespace hebbnet {

/// Names accepted by resolve_preset().
std::vector<std::string> preset_names();

/// Network and plasticity settings of the published shallow, medium and
/// deeper experiments. Throws ConfigError for any other name.
NetworkConfig resolve_preset(std::string_view name);

/// Integer pooling radius for a (possibly fractional) connectivity factor:
/// the largest integer v with v <= factor.
std::size_t connectivity_radius(double factor);

/// Individually overridable plasticity fields; unset fields keep the
/// preset's value.
struct PlasticityOverrides {
  std::optional<double> eta_ltp;
  std::optional<double> eta_ltd;
  std::optional<double> eta_ltp2;
  std::optional<double> threshold;
  std::optional<double> creation_value;
  std::optional<bool> creation_requires_threshold;
  std::optional<Rule> rule;
  std::optional<Bounding> bounding;

  void apply(PlasticityParams& params) const;
};

struct ExperimentConfig {
  // "shallow", "medium", "deeper", or "custom" (uses custom_network).
  std::string preset = "medium";
  std::optional<NetworkConfig> custom_network;
  std::size_t ipd = 60;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  PlasticityOverrides overrides;

  /// Preset (or custom network) with overrides applied and validated.
  NetworkConfig network_config() const;
};

/// Layers the keys present in `j` over `base`. Recognised keys: preset,
/// network, ipd, epochs, seed, plasticity. Unknown keys raise ConfigError.
ExperimentConfig merge_experiment_config(const nlohmann::json& j, ExperimentConfig base = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig base = {});
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

struct RunResult {
  std::string preset;
  std::size_t ipd = 0;
  std::size_t epochs = 0;
  std::uint64_t seed = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double validation_accuracy = 0.0;
  double train_seconds = 0.0;  // fit() only
  std::size_t examples_trained = 0;
};

struct ExperimentRun {
  Network network;
  RunResult result;
};

/// Builds the network, trains on the IPD subset of data.train and evaluates
/// on that subset plus the full test and validation splits.
ExperimentRun execute_experiment(const ExperimentConfig& cfg, const DatasetSplits& data);
RunResult run_experiment(const ExperimentConfig& cfg, const DatasetSplits& data);

/// One fresh run per IPD value, results in input order. Up to `jobs` runs
/// execute concurrently.
std::vector<RunResult> sweep_ipd(const ExperimentConfig& cfg, std::span<const std::size_t> ipd_values,
                                 const DatasetSplits& data, unsigned jobs = 1);

/// Accuracy per true label; NaN for digits absent from `examples`.
std::array<double, kDigitCount> per_digit_accuracy(const Network& net, std::span<const LabeledExample> examples);

struct AssistedRound {
  std::array<double, kDigitCount> per_digit_accuracy{};
  std::vector<int> digits;  // worst first
  std::size_t examples_added = 0;
};

struct AssistedLearningResult {
  Network network;
  std::vector<AssistedRound> rounds;
};

/// Retrains on the worst-classified digits. Each round measures per-digit
/// accuracy over everything trained so far, picks the `top_k` worst digits
/// and trains on `cfg.ipd` unseen training images of each. Only data.train
/// is ever used for training.
AssistedLearningResult assisted_learning(Network net, const ExperimentConfig& cfg, const DatasetSplits& data,
                                         std::size_t rounds, std::size_t top_k = 3);

/// Header preset,ipd,epochs,seed,train_acc,test_acc,val_acc,train_seconds,examples_trained;
/// reals printed with six decimals.
void export_csv(std::span<const RunResult> results, std::ostream& out);
void export_csv(std::span<const RunResult> results, const std::filesystem::path& path);

}  // namespace hebbnet

#endif  // HEBBNET_HARNESS_HPP_
