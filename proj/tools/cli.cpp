#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hebbnet/config_json.hpp"
#include "hebbnet/data.hpp"
#include "hebbnet/errors.hpp"
#include "hebbnet/harness.hpp"
#include "hebbnet/network_io.hpp"

namespace hebbnet::cli {
namespace {

struct ExperimentFlags {
  std::string preset;
  std::string config;
  std::string data_dir;
  std::size_t ipd = 0;
  std::size_t epochs = 0;
  std::uint64_t seed = 0;
  std::string rule;

  CLI::Option* preset_opt = nullptr;
  CLI::Option* ipd_opt = nullptr;
  CLI::Option* epochs_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* rule_opt = nullptr;

  void add_to(CLI::App& app) {
    preset_opt = app.add_option("--preset", preset, "Experiment preset")
                     ->check(CLI::IsMember({"shallow", "medium", "deeper", "custom"}));
    app.add_option("--config", config, "JSON experiment config file")->check(CLI::ExistingFile);
    add_data_dir(app);
    ipd_opt = app.add_option("--ipd", ipd, "Training images per digit")->check(CLI::PositiveNumber);
    epochs_opt = app.add_option("--epochs", epochs, "Passes over the training subset")->check(CLI::PositiveNumber);
    seed_opt = app.add_option("--seed", seed, "Image selection seed (0 = first images in file order)");
    rule_opt = app.add_option("--rule", rule, "Weight update rule")
                   ->check(CLI::IsMember({"compressed", "extended", "plain"}));
  }

  void add_data_dir(CLI::App& app) {
    app.add_option("--data-dir", data_dir, std::string("MNIST directory (default: $") + kDataDirEnv + ")");
  }

  // preset defaults < config file < flags
  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config.empty()) cfg = load_experiment_config(config, cfg);
    if (preset_opt->count() > 0) cfg.preset = preset;
    if (ipd_opt->count() > 0) cfg.ipd = ipd;
    if (epochs_opt->count() > 0) cfg.epochs = epochs;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (rule_opt->count() > 0) cfg.overrides.rule = parse_rule(rule);
    cfg.network_config();
    return cfg;
  }

  std::filesystem::path data_directory() const {
    if (!data_dir.empty()) return data_dir;
    if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return env;
    throw IoError(std::string("no data directory: pass --data-dir or set ") + kDataDirEnv);
  }
};

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

void print_result(std::ostream& out, const RunResult& r) {
  out << "preset " << r.preset << ", ipd " << r.ipd << ", epochs " << r.epochs << ", seed " << r.seed << '\n'
      << "train accuracy:      " << percent(r.train_accuracy) << '\n'
      << "test accuracy:       " << percent(r.test_accuracy) << '\n'
      << "validation accuracy: " << percent(r.validation_accuracy) << '\n'
      << "train time:          " << r.train_seconds << " s (" << r.examples_trained << " examples)\n";
}

std::vector<std::size_t> parse_ipd_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || value == 0 || item.front() == '-') {
      throw CLI::ValidationError("--ipd-list", "'" + item + "' is not a positive integer");
    }
    values.push_back(static_cast<std::size_t>(value));
    start = comma + 1;
  }
  return values;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supervised Hebbian feed-forward networks on MNIST", "hebbnet"};
  app.require_subcommand(1);

  ExperimentFlags train_flags;
  std::string train_model;
  std::string train_csv;
  std::size_t assist_rounds = 0;
  std::size_t assist_top_k = 3;
  CLI::App* train = app.add_subcommand("train", "Train one preset and report accuracies");
  train_flags.add_to(*train);
  train->add_option("--save-model", train_model, "Write the trained network dump here");
  train->add_option("--out", train_csv, "Also write the result as CSV");
  train->add_option("--assist-rounds", assist_rounds, "Assisted-learning rounds after the initial fit");
  train->add_option("--assist-top-k", assist_top_k, "Digits retrained per assisted round")->check(CLI::Range(1, 10));

  ExperimentFlags sweep_flags;
  std::string ipd_list;
  std::string sweep_csv;
  unsigned jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Accuracy as a function of images per digit");
  sweep_flags.add_to(*sweep);
  sweep->add_option("--ipd-list", ipd_list, "Comma-separated IPD values, e.g. 1,2,5,10")->required();
  sweep->add_option("--out", sweep_csv, "CSV destination")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  ExperimentFlags eval_flags;
  std::string eval_model;
  std::string split = "test";
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a saved network on one split");
  eval->add_option("--model", eval_model, "Network dump")->required();
  eval->add_option("--split", split, "train, test or validation")
      ->check(CLI::IsMember({"train", "test", "validation"}));
  eval_flags.add_data_dir(*eval);

  ExperimentFlags inspect_flags;
  std::string inspect_model;
  CLI::App* inspect = app.add_subcommand("inspect", "Print a preset, config file or saved network");
  inspect->add_option("--model", inspect_model, "Network dump");
  inspect_flags.add_to(*inspect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (train->parsed()) {
      const ExperimentConfig cfg = train_flags.resolve();
      const DatasetSplits data = load_mnist(train_flags.data_directory());
      ExperimentRun run = execute_experiment(cfg, data);
      print_result(out, run.result);
      if (assist_rounds > 0) {
        AssistedLearningResult assisted = assisted_learning(std::move(run.network), cfg, data, assist_rounds,
                                                            assist_top_k);
        for (std::size_t n = 0; n < assisted.rounds.size(); ++n) {
          out << "assisted round " << n + 1 << ": retrained digits";
          for (int d : assisted.rounds[n].digits) out << ' ' << d;
          out << " (" << assisted.rounds[n].examples_added << " examples)\n";
        }
        run.network = std::move(assisted.network);
        out << "after assisted learning: test " << percent(run.network.evaluate(data.test)) << ", validation "
            << percent(run.network.evaluate(data.validation)) << '\n';
      }
      if (!train_model.empty()) {
        save_network(run.network, std::filesystem::path(train_model));
        out << "saved network to " << train_model << '\n';
      }
      if (!train_csv.empty()) export_csv(std::span(&run.result, 1), std::filesystem::path(train_csv));
    } else if (sweep->parsed()) {
      std::vector<std::size_t> values;
      try {
        values = parse_ipd_list(ipd_list);
      } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
      }
      const ExperimentConfig cfg = sweep_flags.resolve();
      const DatasetSplits data = load_mnist(sweep_flags.data_directory());
      const std::vector<RunResult> results = sweep_ipd(cfg, values, data, jobs);
      export_csv(results, std::filesystem::path(sweep_csv));
      out << "ipd    train     test      validation  seconds\n";
      for (const RunResult& r : results) {
        char line[128];
        std::snprintf(line, sizeof line, "%-6zu %-9s %-9s %-11s %.3f\n", r.ipd, percent(r.train_accuracy).c_str(),
                      percent(r.test_accuracy).c_str(), percent(r.validation_accuracy).c_str(), r.train_seconds);
        out << line;
      }
      out << "wrote " << results.size() << " rows to " << sweep_csv << '\n';
    } else if (eval->parsed()) {
      const Network net = load_network(std::filesystem::path(eval_model));
      const DatasetSplits data = load_mnist(eval_flags.data_directory());
      const auto& examples = split == "train" ? data.train : split == "validation" ? data.validation : data.test;
      out << split << " accuracy: " << percent(net.evaluate(examples)) << '\n';
    } else if (inspect->parsed()) {
      nlohmann::json report;
      if (!inspect_model.empty()) {
        const Network net = load_network(std::filesystem::path(inspect_model));
        report["network"] = net.config();
        report["examples_trained"] = net.examples_trained();
        for (std::size_t k = 0; k < net.weight_layer_count(); ++k) {
          const auto values = net.weights(k).values();
          std::size_t nonzero = 0;
          double lo = 1.0, hi = -1.0;
          for (double w : values) {
            nonzero += w != 0.0;
            lo = std::min(lo, w);
            hi = std::max(hi, w);
          }
          report["weights"].push_back({{"rows", net.weights(k).rows()},
                                       {"cols", net.weights(k).cols()},
                                       {"nonzero", nonzero},
                                       {"min", lo},
                                       {"max", hi}});
        }
      } else {
        report = experiment_config_to_json(inspect_flags.resolve());
      }
      out << report.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hebbnet::cli
