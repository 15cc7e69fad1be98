#pragma once

#include <cstdint>
#include <string>

#include "mwsim/experiment.hpp"

namespace mwsim {

/// Parses the sectioned key-value configuration format. Every key has a
/// default equal to the proposed experiment's parameters, so the empty
/// document is a valid full configuration. Unknown keys, malformed numbers
/// and invariant violations raise ConfigError with the key name and line.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a configuration file.
ExperimentConfig load_config_file(const std::string& path);

/// Canonical serialization: every key, fixed order, 17 significant digits.
/// parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a 64-bit hash of the canonical text; embedded in output provenance.
std::uint64_t config_hash(const std::string& canonical_text);

Assumption assumption_from_string(const std::string& name);

}  // namespace mwsim
