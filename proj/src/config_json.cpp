#include "hebbnet/config_json.hpp"

#include <string>

#include "hebbnet/errors.hpp"

namespace hebbnet {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

}  // namespace

Rule parse_rule(const std::string& name) {
  if (name == "compressed") return Rule::Compressed;
  if (name == "extended") return Rule::Extended;
  if (name == "plain") return Rule::PlainHebb;
  throw ConfigError("unknown rule '" + name + "' (expected compressed, extended or plain)");
}

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Compressed:
      return "compressed";
    case Rule::Extended:
      return "extended";
    case Rule::PlainHebb:
      return "plain";
  }
  return "?";
}

void to_json(json& j, const ActivationKind& kind) {
  if (kind.variant == Activation::Relu) {
    j = json{{"kind", "relu"}};
  } else {
    j = json{{"kind", "tanh_rec"}, {"coefficient", kind.coefficient}};
  }
}

void from_json(const json& j, ActivationKind& kind) {
  require_object(j, "activation");
  const auto name = get_or<std::string>(j, "kind", "relu");
  if (name == "relu") {
    kind = ActivationKind::relu();
  } else if (name == "tanh_rec") {
    kind = {Activation::RectifiedTanh, get_or<double>(j, "coefficient", 1.0)};
  } else {
    throw ConfigError("unknown activation '" + name + "'");
  }
}

void to_json(json& j, const PlasticityParams& p) {
  j = json{{"eta_ltp", p.eta_ltp},
           {"eta_ltd", p.eta_ltd},
           {"threshold", p.threshold},
           {"creation_value", p.creation_value},
           {"creation_requires_threshold", p.creation_requires_threshold},
           {"rule", rule_name(p.rule)}};
  if (p.eta_ltp2) j["eta_ltp2"] = *p.eta_ltp2;
  if (const auto* reset = std::get_if<HardReset>(&p.bounding)) {
    j["bounding"] = {{"mode", "hard_reset"}, {"magnitude", reset->magnitude}};
  } else {
    j["bounding"] = {{"mode", "squash"}, {"c_weights", std::get<Squash>(p.bounding).c_weights}};
  }
}

void merge_plasticity(const json& j, PlasticityParams& p) {
  require_object(j, "plasticity");
  p.eta_ltp = get_or(j, "eta_ltp", p.eta_ltp);
  p.eta_ltd = get_or(j, "eta_ltd", p.eta_ltd);
  if (j.contains("eta_ltp2")) p.eta_ltp2 = get_or<double>(j, "eta_ltp2", 0.0);
  p.threshold = get_or(j, "threshold", p.threshold);
  p.creation_value = get_or(j, "creation_value", p.creation_value);
  p.creation_requires_threshold = get_or(j, "creation_requires_threshold", p.creation_requires_threshold);
  if (j.contains("rule")) p.rule = parse_rule(get_or<std::string>(j, "rule", ""));
  if (j.contains("bounding")) {
    const json& b = j.at("bounding");
    require_object(b, "bounding");
    const auto mode = get_or<std::string>(b, "mode", "");
    if (mode == "hard_reset") {
      p.bounding = HardReset{get_or<double>(b, "magnitude", HardReset{}.magnitude)};
    } else if (mode == "squash") {
      p.bounding = Squash{get_or<double>(b, "c_weights", Squash{}.c_weights)};
    } else {
      throw ConfigError("unknown bounding mode '" + mode + "' (expected hard_reset or squash)");
    }
  }
}

void from_json(const json& j, PlasticityParams& p) {
  p = PlasticityParams{};
  merge_plasticity(j, p);
}

void to_json(json& j, const LayerSpec& layer) {
  j = json{{"size", layer.size},
           {"bias", layer.bias},
           {"activation", layer.activation},
           {"trainable", layer.trainable_incoming}};
}

void from_json(const json& j, LayerSpec& layer) {
  require_object(j, "layer");
  if (!j.contains("size")) throw ConfigError("layer is missing 'size'");
  layer.size = get_or<std::size_t>(j, "size", 0);
  layer.bias = get_or(j, "bias", 0.0);
  layer.activation = j.contains("activation") ? j.at("activation").get<ActivationKind>() : ActivationKind::relu();
  layer.trainable_incoming = get_or(j, "trainable", true);
}

void to_json(json& j, const Connection& connection) {
  if (const auto* full = std::get_if<FullyConnected>(&connection)) {
    j = json{{"type", "full"}, {"initial_weight", full->initial_weight}};
  } else {
    const auto& pool = std::get<PoolingConnection>(connection);
    j = json{{"type", "pooling"}, {"v", pool.v}, {"c", pool.c}};
  }
}

void from_json(const json& j, Connection& connection) {
  require_object(j, "connection");
  const auto type = get_or<std::string>(j, "type", "");
  if (type == "full") {
    connection = FullyConnected{get_or(j, "initial_weight", 0.0)};
  } else if (type == "pooling") {
    connection = PoolingConnection{get_or<std::size_t>(j, "v", 0), get_or(j, "c", 0.5)};
  } else {
    throw ConfigError("unknown connection type '" + type + "' (expected full or pooling)");
  }
}

void to_json(json& j, const NetworkConfig& config) {
  j = json{{"layers", config.layers}, {"connections", config.connections}, {"plasticity", config.plasticity}};
}

void from_json(const json& j, NetworkConfig& config) {
  require_object(j, "network");
  if (!j.contains("layers") || !j.at("layers").is_array()) throw ConfigError("network needs a 'layers' array");
  if (!j.contains("connections") || !j.at("connections").is_array()) {
    throw ConfigError("network needs a 'connections' array");
  }
  config.layers = j.at("layers").get<std::vector<LayerSpec>>();
  config.connections = j.at("connections").get<std::vector<Connection>>();
  config.plasticity = j.contains("plasticity") ? j.at("plasticity").get<PlasticityParams>() : PlasticityParams{};
}

}  // namespace hebbnet
