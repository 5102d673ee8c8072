#include "ptvsim/commands.hpp"
#include "ptvsim/config.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"ptvsim: position translation vector integration and checks"};
    app.require_subcommand(1);

    std::string config_path;
    ptvsim::RunOptions run_opts;

    auto* simulate = app.add_subcommand("simulate", "integrate a scenario against the oracle");
    simulate->add_option("config", config_path, "scenario JSON")->required();
    simulate->add_flag("--timing", run_opts.timing, "record wall-clock times in the report");

    std::vector<int> steps;
    auto* sweep = app.add_subcommand("sweep", "measure convergence order over step counts");
    sweep->add_option("config", config_path, "scenario JSON")->required();
    sweep->add_option("--steps", steps, "comma-separated step counts")->required()->delimiter(',');
    sweep->add_flag("--timing", run_opts.timing, "record wall-clock times in the report");

    ptvsim::CheckOptions check_opts;
    std::string report_path;
    double tolerance = 0.0;
    auto* check = app.add_subcommand("check", "randomized identity and round-trip checks");
    check->add_option("--seed", check_opts.seed, "RNG seed");
    check->add_option("--samples", check_opts.samples, "samples per check");
    auto* tol_opt = check->add_option("--tolerance", tolerance, "override every tolerance");
    check->add_flag("--zero-sigma", check_opts.zero_sigma, "force sigma = 0");
    auto* report_opt = check->add_option("--report", report_path, "write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ptvsim::kExitOk : ptvsim::kExitUsage;
    }

    try {
        if (*check) {
            if (*tol_opt) check_opts.tolerance = tolerance;
            if (*report_opt) check_opts.report_path = report_path;
            return ptvsim::cmd_check(check_opts, std::cout, std::cerr);
        }
        const ptvsim::ScenarioConfig config = ptvsim::load_config(config_path);
        if (*simulate) return ptvsim::cmd_simulate(config, run_opts, std::cout, std::cerr);
        return ptvsim::cmd_sweep(config, steps, run_opts, std::cout, std::cerr);
    } catch (const ptvsim::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return ptvsim::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ptvsim::kExitUsage;
    }
}
