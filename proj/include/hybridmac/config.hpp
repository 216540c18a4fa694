#pragma once

// INI-style configuration with three flat sections:
//
//   [timing]    all ten TimingParams fields, required, microseconds
//   [scenario]  ScenarioConfig fields, optional (defaults apply)
//   [sweep]     axis / values / protocols, optional
//
// Unknown keys are rejected so that typos surface as errors.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybridmac/harness.hpp"
#include "hybridmac/scenario.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

struct SweepSpec {
    SweepAxis axis = SweepAxis::k_total;
    std::vector<double> values;
    std::vector<Protocol> protocols{Protocol::hybrid, Protocol::aloha, Protocol::tdma};
};

struct Config {
    TimingParams timing;
    ScenarioConfig scenario;
    SweepSpec sweep;
};

/// Throws ConfigError naming the offending field.
Config parse_config(std::istream& is);
Config load_config(const std::filesystem::path& path);

/// Renders a config that parse_config reads back unchanged.
std::string render_config(const Config& config);

std::vector<double> parse_value_list(const std::string& s, const std::string& field = "values");
std::vector<Protocol> parse_protocol_list(const std::string& s, const std::string& field = "protocols");

}  // namespace hybridmac
