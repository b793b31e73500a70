#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "itolab/runners.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string seed;
    int paths = -1;
    int workers = -1;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Run configuration file")->required();
    cmd->add_option("--out", args.out_dir, "Output directory for CSV tables");
    cmd->add_option("--seed", args.seed, "Override run.seed");
    cmd->add_option("--paths", args.paths, "Override run.paths");
    cmd->add_option("--workers", args.workers, "Override run.workers");
}

itolab::RunConfig load_config(const CommonArgs& args) {
    itolab::RunConfig cfg = itolab::RunConfig::parse_file(args.config_path);
    if (!args.seed.empty()) cfg.set("run.seed", args.seed);
    if (args.paths >= 0) cfg.set("run.paths", std::to_string(args.paths));
    if (args.workers >= 0) cfg.set("run.workers", std::to_string(args.workers));
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-discretized stochastic PDE identity checks"};
    app.require_subcommand(1);

    CommonArgs args;
    bool power_check = false;
    bool override_assumptions = false;

    CLI::App* resolvent = app.add_subcommand(
        "resolvent-verify", "Resolvent family property suite on the configured grid");
    attach_common(resolvent, args);

    CLI::App* ito = app.add_subcommand(
        "ito-verify", "Pathwise identity ledgers over the dt ladder plus lifting convergence");
    attach_common(ito, args);

    CLI::App* maxprin = app.add_subcommand(
        "maxprin", "Sign-preservation experiment with the Gronwall sequence check");
    attach_common(maxprin, args);
    maxprin->add_flag("--power-check", power_check,
                      "Run the sign-violating source and require detection");
    maxprin->add_flag("--override-assumptions", override_assumptions,
                      "Run even when the assumption gate fails");

    CLI::App* simulate = app.add_subcommand("simulate", "Emit raw trajectories and diagnostics");
    attach_common(simulate, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : itolab::kExitConfigError;
    }

    try {
        const itolab::RunConfig cfg = load_config(args);
        if (resolvent->parsed())
            return itolab::run_resolvent_verify(cfg, args.out_dir, std::cout);
        if (ito->parsed()) return itolab::run_ito_verify(cfg, args.out_dir, std::cout);
        if (maxprin->parsed())
            return itolab::run_maxprin(cfg, args.out_dir, std::cout, power_check,
                                       override_assumptions);
        if (simulate->parsed()) return itolab::run_simulate(cfg, args.out_dir, std::cout);
        std::cerr << "no subcommand selected\n";
        return itolab::kExitConfigError;
    } catch (const itolab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return itolab::kExitConfigError;
    } catch (const itolab::SolverDivergence& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return itolab::kExitSolverFailure;
    } catch (const itolab::AssumptionViolated& e) {
        std::cerr << "assumption gate: " << e.what() << "\n";
        return itolab::kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return itolab::kExitCheckFailed;
    }
}
