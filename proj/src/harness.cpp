#include "hebbnet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "hebbnet/config_json.hpp"
#include "hebbnet/errors.hpp"

namespace hebbnet {
namespace {

// Output layers use ReLU; hidden layers use the rectified tanh with the
// preset's c_output coefficient.
LayerSpec hidden(std::size_t size, double bias, double c_output) {
  return {size, bias, ActivationKind::rectified_tanh(c_output), false};
}

LayerSpec output(double bias) { return {kDigitCount, bias, ActivationKind::relu(), true}; }

NetworkConfig shallow() {
  NetworkConfig cfg;
  cfg.layers = {{kImagePixels}, output(0.95)};
  cfg.connections = {FullyConnected{0.00}};
  cfg.plasticity.eta_ltp = 0.001;
  cfg.plasticity.eta_ltd = 0.0001;
  cfg.plasticity.bounding = Squash{0.5};
  return cfg;
}

NetworkConfig medium() {
  constexpr double c_output = 0.50;
  NetworkConfig cfg;
  cfg.layers = {{kImagePixels}, hidden(196, 0.95, c_output), output(0.00)};
  cfg.connections = {PoolingConnection{0, 0.50}, FullyConnected{0.00}};
  cfg.plasticity.eta_ltp = 0.01;
  cfg.plasticity.eta_ltd = 0.0005;
  cfg.plasticity.bounding = Squash{0.50};
  return cfg;
}

NetworkConfig deeper() {
  constexpr double c_output = 1.0;
  NetworkConfig cfg;
  cfg.layers = {{kImagePixels}, hidden(196, 0.35, c_output), hidden(49, 0.05, c_output), output(0.00)};
  cfg.connections = {PoolingConnection{connectivity_radius(0.75), 0.50},
                     PoolingConnection{connectivity_radius(0.25), 0.60}, FullyConnected{0.00}};
  cfg.plasticity.eta_ltp = 0.001;
  cfg.plasticity.eta_ltd = 0.0001;
  cfg.plasticity.bounding = Squash{0.5};
  return cfg;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

std::vector<std::string> preset_names() { return {"shallow", "medium", "deeper"}; }

NetworkConfig resolve_preset(std::string_view name) {
  if (name == "shallow") return shallow();
  if (name == "medium") return medium();
  if (name == "deeper") return deeper();
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected shallow, medium or deeper)");
}

std::size_t connectivity_radius(double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw ConfigError("connectivity factor must be a non-negative number");
  }
  return static_cast<std::size_t>(std::floor(factor));
}

void PlasticityOverrides::apply(PlasticityParams& params) const {
  if (eta_ltp) params.eta_ltp = *eta_ltp;
  if (eta_ltd) params.eta_ltd = *eta_ltd;
  if (eta_ltp2) params.eta_ltp2 = *eta_ltp2;
  if (threshold) params.threshold = *threshold;
  if (creation_value) params.creation_value = *creation_value;
  if (creation_requires_threshold) params.creation_requires_threshold = *creation_requires_threshold;
  if (rule) params.rule = *rule;
  if (bounding) params.bounding = *bounding;
}

NetworkConfig ExperimentConfig::network_config() const {
  NetworkConfig cfg;
  if (preset == "custom") {
    if (!custom_network) throw ConfigError("preset 'custom' needs a network definition");
    cfg = *custom_network;
  } else {
    cfg = resolve_preset(preset);
  }
  overrides.apply(cfg.plasticity);
  cfg.validate();
  return cfg;
}

ExperimentConfig merge_experiment_config(const nlohmann::json& j, ExperimentConfig base) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const std::vector<std::string> known = {"preset", "network", "ipd", "epochs", "seed", "plasticity"};
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("unknown experiment config key '" + item.key() + "'");
    }
  }
  try {
    if (j.contains("preset")) base.preset = j.at("preset").get<std::string>();
    if (j.contains("network")) {
      base.custom_network = j.at("network").get<NetworkConfig>();
      if (!j.contains("preset")) base.preset = "custom";
    }
    if (j.contains("ipd")) base.ipd = j.at("ipd").get<std::size_t>();
    if (j.contains("epochs")) base.epochs = j.at("epochs").get<std::size_t>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("plasticity")) {
      // Route the partial object through PlasticityParams parsing so the
      // key names and bounding syntax stay identical.
      const auto& p = j.at("plasticity");
      PlasticityParams parsed;
      merge_plasticity(p, parsed);
      auto& o = base.overrides;
      if (p.contains("eta_ltp")) o.eta_ltp = parsed.eta_ltp;
      if (p.contains("eta_ltd")) o.eta_ltd = parsed.eta_ltd;
      if (p.contains("eta_ltp2")) o.eta_ltp2 = parsed.eta_ltp2;
      if (p.contains("threshold")) o.threshold = parsed.threshold;
      if (p.contains("creation_value")) o.creation_value = parsed.creation_value;
      if (p.contains("creation_requires_threshold")) o.creation_requires_threshold = parsed.creation_requires_threshold;
      if (p.contains("rule")) o.rule = parsed.rule;
      if (p.contains("bounding")) o.bounding = parsed.bounding;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  if (base.ipd == 0) throw ConfigError("ipd must be positive");
  if (base.epochs == 0) throw ConfigError("epochs must be positive");
  return base;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return merge_experiment_config(j, std::move(base));
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j = {{"preset", cfg.preset}, {"ipd", cfg.ipd}, {"epochs", cfg.epochs}, {"seed", cfg.seed}};
  j["network"] = cfg.network_config();
  return j;
}

ExperimentRun execute_experiment(const ExperimentConfig& cfg, const DatasetSplits& data) {
  Network net(cfg.network_config());
  const std::vector<LabeledExample> subset = select_ipd(data.train, cfg.ipd, cfg.seed);

  const auto start = std::chrono::steady_clock::now();
  net.fit(subset, cfg.epochs);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  RunResult result;
  result.preset = cfg.preset;
  result.ipd = cfg.ipd;
  result.epochs = cfg.epochs;
  result.seed = cfg.seed;
  result.train_accuracy = net.evaluate(subset);
  result.test_accuracy = net.evaluate(data.test);
  result.validation_accuracy = net.evaluate(data.validation);
  result.train_seconds = elapsed.count();
  result.examples_trained = subset.size() * cfg.epochs;
  return {std::move(net), std::move(result)};
}

RunResult run_experiment(const ExperimentConfig& cfg, const DatasetSplits& data) {
  return execute_experiment(cfg, data).result;
}

std::vector<RunResult> sweep_ipd(const ExperimentConfig& cfg, std::span<const std::size_t> ipd_values,
                                 const DatasetSplits& data, unsigned jobs) {
  if (ipd_values.empty()) throw std::invalid_argument("sweep needs at least one ipd value");
  std::vector<RunResult> results(ipd_values.size());
  std::vector<std::exception_ptr> failures(ipd_values.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t n = next++; n < ipd_values.size(); n = next++) {
      try {
        ExperimentConfig run = cfg;
        run.ipd = ipd_values[n];
        results[n] = run_experiment(run, data);
      } catch (...) {
        failures[n] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, ipd_values.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return results;
}

std::array<double, kDigitCount> per_digit_accuracy(const Network& net, std::span<const LabeledExample> examples) {
  std::array<std::size_t, kDigitCount> seen{};
  std::array<std::size_t, kDigitCount> correct{};
  for (const LabeledExample& example : examples) {
    const auto label = static_cast<std::size_t>(example.label);
    if (label >= kDigitCount) throw std::invalid_argument("label outside 0..9");
    ++seen[label];
    if (net.predict(example.pixels) == label) ++correct[label];
  }
  std::array<double, kDigitCount> accuracy;
  for (std::size_t d = 0; d < kDigitCount; ++d) {
    accuracy[d] = seen[d] == 0 ? std::numeric_limits<double>::quiet_NaN()
                               : static_cast<double>(correct[d]) / static_cast<double>(seen[d]);
  }
  return accuracy;
}

AssistedLearningResult assisted_learning(Network net, const ExperimentConfig& cfg, const DatasetSplits& data,
                                         std::size_t rounds, std::size_t top_k) {
  if (rounds == 0) throw std::invalid_argument("assisted learning needs at least one round");
  if (top_k == 0 || top_k > kDigitCount) throw std::invalid_argument("top_k must lie in 1..10");
  if (net.examples_trained() == 0) throw std::invalid_argument("assisted learning starts from a trained network");
  if (net.output_size() != kDigitCount) throw std::invalid_argument("assisted learning needs a 10-way output");

  std::vector<LabeledExample> trained = select_ipd(data.train, cfg.ipd, cfg.seed);
  const auto draw_order = digit_draw_order(data.train, cfg.seed);
  std::array<std::size_t, kDigitCount> cursor;
  cursor.fill(cfg.ipd);

  AssistedLearningResult out{std::move(net), {}};
  for (std::size_t round = 0; round < rounds; ++round) {
    AssistedRound info;
    info.per_digit_accuracy = per_digit_accuracy(out.network, trained);

    std::vector<int> digits(kDigitCount);
    std::iota(digits.begin(), digits.end(), 0);
    const auto& acc = info.per_digit_accuracy;
    std::stable_sort(digits.begin(), digits.end(), [&acc](int a, int b) {
      // NaN (digit never trained) sorts last.
      const double x = std::isnan(acc[a]) ? 2.0 : acc[a];
      const double y = std::isnan(acc[b]) ? 2.0 : acc[b];
      return x < y;
    });
    digits.resize(top_k);
    info.digits = digits;

    std::vector<LabeledExample> batch;
    for (std::size_t n = 0; n < cfg.ipd; ++n) {
      for (int digit : digits) {
        const auto d = static_cast<std::size_t>(digit);
        if (cursor[d] >= draw_order[d].size()) {
          throw DataError("no unseen training images of digit " + std::to_string(digit) + " remain");
        }
        batch.push_back(data.train[draw_order[d][cursor[d]++]]);
      }
    }
    out.network.fit(batch, 1);
    info.examples_added = batch.size();
    trained.insert(trained.end(), batch.begin(), batch.end());
    out.rounds.push_back(std::move(info));
  }
  return out;
}

void export_csv(std::span<const RunResult> results, std::ostream& out) {
  if (results.empty()) throw std::invalid_argument("no results to export");
  out << "preset,ipd,epochs,seed,train_acc,test_acc,val_acc,train_seconds,examples_trained\n";
  for (const RunResult& r : results) {
    out << r.preset << ',' << r.ipd << ',' << r.epochs << ',' << r.seed << ',' << format_real(r.train_accuracy) << ','
        << format_real(r.test_accuracy) << ',' << format_real(r.validation_accuracy) << ','
        << format_real(r.train_seconds) << ',' << r.examples_trained << '\n';
  }
  if (!out) throw IoError("failed to write CSV");
}

void export_csv(std::span<const RunResult> results, const std::filesystem::path& path) {
  if (results.empty()) throw std::invalid_argument("no results to export");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  export_csv(results, out);
}

}  // namespace hebbnet
