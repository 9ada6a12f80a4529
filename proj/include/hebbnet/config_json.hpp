#ifndef HEBBNET_CONFIG_JSON_HPP_
#define HEBBNET_CONFIG_JSON_HPP_

#include <json.hpp>

#include "hebbnet/network.hpp"
#include "hebbnet/plasticity.hpp"

// JSON mapping of the configuration types. Key names mirror the struct
// fields; see README.md for the full schema. Parsing errors surface as
// ConfigError.

namespace hebbnet {

void to_json(nlohmann::json& j, const ActivationKind& kind);
void from_json(const nlohmann::json& j, ActivationKind& kind);

void to_json(nlohmann::json& j, const PlasticityParams& params);
void from_json(const nlohmann::json& j, PlasticityParams& params);

/// Applies only the keys present in `j` on top of `params`.
void merge_plasticity(const nlohmann::json& j, PlasticityParams& params);

void to_json(nlohmann::json& j, const LayerSpec& layer);
void from_json(const nlohmann::json& j, LayerSpec& layer);

void to_json(nlohmann::json& j, const Connection& connection);
void from_json(const nlohmann::json& j, Connection& connection);

void to_json(nlohmann::json& j, const NetworkConfig& config);
void from_json(const nlohmann::json& j, NetworkConfig& config);

Rule parse_rule(const std::string& name);
const char* rule_name(Rule rule);

}  // namespace hebbnet

#endif  // HEBBNET_CONFIG_JSON_HPP_
