// Scenario configuration: a JSON document describing one simulation run.
#pragma once

#include <ptv/dynamics.hpp>
#include <ptv/oracle.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptvsim {

struct Tolerances {
    double terminal_relative = 1e-9;        ///< per-formulation terminal error vs oracle
    double formulation_discrepancy = 1e-9;  ///< pairwise terminal difference, relative
    double oracle_refinement = 1e-10;       ///< oracle Richardson check
};

struct OutputConfig {
    std::string dir = "ptv_out";
    std::string prefix = "run";
};

struct ScenarioConfig {
    ptv::MotionProfile profile;  ///< profile.horizon is the run horizon t1
    int steps = 10000;
    std::vector<ptv::Formulation> formulations = {
        ptv::Formulation::PtvThrust, ptv::Formulation::PtvVtv, ptv::Formulation::SavageVtv};
    int refine_factor = 8;
    OutputConfig output;
    Tolerances tolerances;
};

/// Parse failure. line/column are 1-based; 0 when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const ScenarioConfig& config);
std::string serialize(const ScenarioConfig& config);

}  // namespace ptvsim
