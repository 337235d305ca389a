// Command-line front end: batch experiment driver for the SQG diagnostic
// engine.  Exit codes: 0 ok, 2 config error, 3 integrator failure,
// 4 criteria hypothesis vacuous (informational).
#include <iostream>

#include "CLI11.hpp"
#include "sqg/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"supercritical SQG simulator with Littlewood-Paley diagnostics"};
    app.require_subcommand(1);

    std::string config_path, run_dir, theorem = "all";
    uint64_t check_seed = 1;

    auto* simulate = app.add_subcommand("simulate", "run one trajectory from a config");
    simulate->add_option("config", config_path, "config JSON path")->required();

    auto* twin = app.add_subcommand("twin", "run a twin pair and record w diagnostics");
    twin->add_option("config", config_path, "config JSON path")->required();

    auto* criteria =
        app.add_subcommand("criteria", "evaluate theorem criteria from a run directory");
    criteria->add_option("run_dir", run_dir, "run directory")->required();
    criteria->add_option("--theorem", theorem, "prop|1|2|3|4|5|all");

    auto* calibrate =
        app.add_subcommand("calibrate", "measure/calibrate the symbolic constants");
    calibrate->add_option("config", config_path, "config JSON path")->required();

    auto* plot = app.add_subcommand("plot", "emit SVG plots from a run directory");
    plot->add_option("run_dir", run_dir, "run directory")->required();

    auto* check = app.add_subcommand("check", "run the numerical property suite");
    check->add_option("--seed", check_seed, "property-suite seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed() || twin->parsed()) {
            sqg::RunConfig cfg = sqg::load_config(config_path);
            if (twin->parsed() && !cfg.twin.enabled) {
                std::cerr << "config error: twin subcommand needs twin.enabled = true\n";
                return sqg::exit_config_error;
            }
            return sqg::run_simulate(cfg);
        }
        if (criteria->parsed()) return sqg::run_criteria(run_dir, theorem);
        if (calibrate->parsed()) return sqg::run_calibrate(sqg::load_config(config_path));
        if (plot->parsed()) return sqg::emit_plots(run_dir);
        if (check->parsed()) return sqg::run_check(check_seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return sqg::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
