// Subcommands of the ptvsim driver.
#pragma once

#include "ptvsim/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ptvsim {

enum ExitCode : int {
    kExitOk = 0,
    kExitToleranceFailure = 1,
    kExitUsage = 2,
    kExitDomain = 3,
};

/// Environment variable that, when set, replaces output.dir from the config.
inline constexpr const char* kOutputDirEnv = "PTV_OUTPUT_DIR";

struct RunOptions {
    bool timing = false;  ///< add wall-clock fields (makes reports non-reproducible)
};

struct FormulationRun {
    ptv::Formulation formulation;
    ptv::Trajectory trajectory;
    double err_sp_abs = 0.0;        ///< |sp(T) - oracle sp(T)|
    double err_sp_rel = 0.0;        ///< err_sp_abs / |oracle sp(T)|
    double err_zeta_map_abs = 0.0;  ///< |zeta(T) - savage_map(oracle sigma, oracle sp)(T)|
    double err_zeta_map_rel = 0.0;  ///< err_zeta_map_abs / |zeta(T)|
    double wall_clock_s = 0.0;

    /// The error the formulation is judged on: sp for the PTV formulations,
    /// zeta for the Savage one.
    double primary_relative_error() const;
};

struct ScenarioRun {
    ptv::GroundTruth truth;
    std::vector<FormulationRun> runs;
    double oracle_wall_clock_s = 0.0;
};

/// Oracle at 2 * steps samples plus every configured formulation at `steps`.
ScenarioRun run_scenario(const ScenarioConfig& config, int steps);

/// Per-sample CSV: t, sigma_{x,y,z}, sp_{x,y,z}, zeta_{x,y,z}, oracle_sp_{x,y,z},
/// oracle_dint_{x,y,z}, err_sp, err_zeta_map. 17 significant digits.
std::string trajectory_csv(const ScenarioRun& run, const FormulationRun& f);

std::string resolve_output_dir(const ScenarioConfig& config);

int cmd_simulate(const ScenarioConfig& config, const RunOptions& opts, std::ostream& out,
                 std::ostream& err);

/// Validates the step list: at least three counts, each >= 2x the previous.
std::optional<std::string> validate_sweep_steps(const std::vector<int>& steps);

struct OrderEstimate {
    bool floor = false;  ///< every error below the floor; no order can be measured
    double order = 0.0;  ///< least-squares slope of -log2(error) vs log2(steps)
    std::vector<double> pairwise;
};

inline constexpr double kErrorFloor = 1e-13;
inline constexpr double kMinRk4Order = 3.5;

OrderEstimate estimate_order(const std::vector<int>& steps, const std::vector<double>& errors);

int cmd_sweep(const ScenarioConfig& config, const std::vector<int>& steps, const RunOptions& opts,
              std::ostream& out, std::ostream& err);

struct CheckOptions {
    std::uint64_t seed = 42;
    int samples = 10000;
    std::optional<double> tolerance;  ///< overrides every per-check tolerance
    bool zero_sigma = false;          ///< force sigma = 0 in every sample
    std::optional<std::string> report_path;
};

struct CheckEntry {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return max_residual < tolerance || max_residual == 0.0; }
};

std::vector<CheckEntry> run_check(const CheckOptions& opts);

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace ptvsim
