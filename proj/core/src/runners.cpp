#include "itolab/runners.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <random>

#include "itolab/csvio.hpp"
#include "itolab/experiments.hpp"

namespace itolab {

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
}

std::vector<GridFunction> random_samples(const GridPtr& grid, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<GridFunction> out;
    out.reserve(count);
    for (int s = 0; s < count; ++s) {
        GridFunction f(grid);
        for (int i = 0; i < f.size(); ++i) f[i] = dist(rng);
        out.push_back(std::move(f));
    }
    return out;
}

void require_halving(const std::vector<double>& dts) {
    for (size_t i = 0; i + 1 < dts.size(); ++i)
        if (std::abs(dts[i + 1] - 0.5 * dts[i]) > 1e-12 * dts[i])
            throw ConfigError(
                "run.dt_list must halve between entries (common random numbers "
                "refine by bridge midpoints)");
}

GridFunction sample_initial(const RunConfig& cfg, const GridPtr& grid) {
    const ScalarField u0 = cfg.initial_condition();
    return GridFunction::sample(grid, [&](const Coord& x) { return eval_field(u0, 0.0, x); });
}

} // namespace

int run_resolvent_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
    cfg.validate();
    const GridPtr grid = build_grid(cfg.grid_spec());
    const SobolevOrder m = cfg.sobolev_order();
    ResolventCheckOptions opts;
    opts.solver = cfg.solver_options();
    const ResolventReport report = verify_resolvent_properties(
        grid, m, cfg.lambda_list(), random_samples(grid, cfg.sample_count(), cfg.seed()), opts);

    CsvWriter csv(out_path(out_dir, "resolvent_verify.csv"));
    write_run_preamble(csv, "resolvent-verify", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                       "stationary", cfg.sample_count(), cfg.workers());
    csv.comment("grid: dim=" + std::to_string(grid->dim()) +
                " nodes=" + std::to_string(grid->num_nodes()) + " m=" + std::to_string(m.m));
    csv.columns({"check", "lambda", "measured", "bound", "pass"});
    for (const ResolventCheckRow& row : report.rows)
        csv.row({row.check, CsvWriter::num(row.lambda), CsvWriter::num(row.measured),
                 CsvWriter::num(row.bound), CsvWriter::flag(row.pass)});

    log << "resolvent-verify: " << report.rows.size() << " checks, "
        << (report.all_pass() ? "all pass" : "FAILURES") << "\n";
    return report.all_pass() ? kExitPass : kExitCheckFailed;
}

namespace {

void write_refinement_rows(CsvWriter& csv, const LedgerRefinementStudy& study, double h) {
    csv.columns({"dt", "h", "n_paths", "mean_abs_residual", "stderr", "max_u_plus", "pass"});
    for (size_t i = 0; i < study.rungs.size(); ++i) {
        const RefinementRung& r = study.rungs[i];
        const bool pass =
            i == 0 || r.abs_residual.mean <= study.rungs[i - 1].abs_residual.mean;
        csv.row({CsvWriter::num(r.dt), CsvWriter::num(h), CsvWriter::num(r.paths),
                 CsvWriter::num(r.abs_residual.mean), CsvWriter::num(r.abs_residual.stderr_),
                 CsvWriter::num(r.max_u_plus), CsvWriter::flag(pass)});
    }
}

} // namespace

int run_ito_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
    cfg.validate();
    const GridPtr grid = build_grid(cfg.grid_spec());
    const SPDECoefficients coeffs = cfg.coefficients();
    const GridFunction u0 = sample_initial(cfg, grid);
    const std::vector<double> dts = cfg.dt_list();
    require_halving(dts);
    const double T = cfg.total_time();

    EnsembleOptions ens;
    ens.n_paths = cfg.paths();
    ens.workers = cfg.workers();
    ens.scheme = cfg.scheme();
    ens.solver = cfg.solver_options();
    const NoiseDriver base(coeffs.channels, cfg.seed(), dts[0]);

    const LedgerRefinementStudy energy = ledger_refinement_study(
        grid, coeffs, u0, T, base, static_cast<int>(dts.size()), nullptr, ens);
    const FunctionalR pospart = FunctionalR::positive_part_squared();
    const LedgerRefinementStudy plus = ledger_refinement_study(
        grid, coeffs, u0, T, base, static_cast<int>(dts.size()), &pospart, ens);

    // specialization r = x^2 against the squared-norm ledger, one path
    SimulateOptions sim;
    sim.scheme = ens.scheme;
    sim.solver = ens.solver;
    SpdeContext ctx(grid, coeffs, sim);
    const Trajectory probe = simulate(ctx, u0, T, base, 0);
    const ItoLedger by_energy = energy_identity_ledger(probe, ctx);
    const FunctionalR quad = FunctionalR::quadratic();
    const ItoLedger by_general = general_ito_ledger(probe, ctx, quad);
    double specialization_gap = 0.0;
    for (size_t n = 0; n < by_energy.rows.size(); ++n) {
        auto gap = [&](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
        };
        const auto& e = by_energy.rows[n];
        const auto& g = by_general.rows[n];
        specialization_gap = std::max(
            {specialization_gap, gap(e.lhs_increment, g.lhs_increment),
             gap(e.drift_term, g.drift_term), gap(e.qv_term, g.qv_term),
             gap(e.stochastic_term, g.stochastic_term)});
    }

    // lifting along a stored trajectory at the finest dt
    const NoiseDriver fine = base.at_level(static_cast<int>(dts.size()) - 1);
    const Trajectory stored = simulate(ctx, u0, T, fine, 0);
    const LiftingReport lifting =
        lifting_convergence(stored, cfg.n_list(), SobolevOrder(1), ens.solver);

    const double h = grid->mesh();
    {
        CsvWriter csv(out_path(out_dir, "ito_verify.csv"));
        write_run_preamble(csv, "ito-verify", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                           scheme_id(ens.scheme), ens.n_paths, ens.workers);
        csv.comment("squared-norm identity ledger, cumulative residual at T");
        write_refinement_rows(csv, energy, h);
    }
    {
        CsvWriter csv(out_path(out_dir, "ito_verify_pospart.csv"));
        write_run_preamble(csv, "ito-verify", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                           scheme_id(ens.scheme), ens.n_paths, ens.workers);
        csv.comment("positive-part-squared ledger, cumulative residual at T");
        csv.comment("specialization_gap=" + CsvWriter::num(specialization_gap));
        write_refinement_rows(csv, plus, h);
    }
    {
        CsvWriter csv(out_path(out_dir, "lifting.csv"));
        write_run_preamble(csv, "ito-verify", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                           scheme_id(ens.scheme), 1, 1);
        csv.comment("sup_t ||S_n u_t - u_t||_H along the stored trajectory, dt=" +
                    CsvWriter::num(fine.dt()));
        csv.comment("sup_norm_V=" + CsvWriter::num(lifting.sup_norm_v));
        csv.columns({"n", "sup_diff_H", "pass"});
        for (size_t i = 0; i < lifting.n_values.size(); ++i) {
            const bool pass = i == 0 || lifting.sup_diff_h[i] <= lifting.sup_diff_h[i - 1];
            csv.row({CsvWriter::num(lifting.n_values[i]), CsvWriter::num(lifting.sup_diff_h[i]),
                     CsvWriter::flag(pass)});
        }
    }

    const bool pass = energy.monotone_abs() && plus.monotone_abs() &&
                      specialization_gap <= 1e-12 && lifting.nonincreasing;
    log << "ito-verify: energy monotone=" << energy.monotone_abs()
        << " pospart monotone=" << plus.monotone_abs()
        << " specialization_gap=" << specialization_gap
        << " lifting nonincreasing=" << lifting.nonincreasing << "\n";
    return pass ? kExitPass : kExitCheckFailed;
}

int run_maxprin(const RunConfig& cfg, const std::string& out_dir, std::ostream& log,
                bool power_check, bool override_assumptions) {
    cfg.validate();
    const GridPtr grid = build_grid(cfg.grid_spec());
    SPDECoefficients coeffs = cfg.coefficients();
    const GridFunction u0 = sample_initial(cfg, grid);
    const std::vector<double> dts = cfg.dt_list();
    require_halving(dts);
    const double T = cfg.total_time();

    MaxPrincipleOptions opts;
    opts.ensemble.n_paths = cfg.paths();
    opts.ensemble.workers = cfg.workers();
    opts.ensemble.scheme = cfg.scheme();
    opts.ensemble.solver = cfg.solver_options();
    opts.override_assumptions = override_assumptions;

    if (power_check) {
        // deliberate violation of the sign condition on the source
        coeffs.f = parse_field_expr("constant:1");
        opts.override_assumptions = true;
        opts.ensemble.n_paths = std::min(cfg.paths(), 16);
    }

    const NoiseDriver base(coeffs.channels, cfg.seed(), dts[0]);
    const MaxPrincipleReport report = max_principle_experiment(
        grid, coeffs, u0, T, base, static_cast<int>(dts.size()), cfg.k_bound(), opts);

    const double threshold_frac = cfg.get_double_or("run.plus_threshold", 1e-4);
    const double threshold = threshold_frac * report.u0_norm_h_sq;
    const GronwallReport gronwall = gronwall_check(report.levels.back());

    CsvWriter csv(out_path(out_dir, power_check ? "maxprin_power.csv" : "maxprin.csv"));
    write_run_preamble(csv, "maxprin", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                       scheme_id(opts.ensemble.scheme), opts.ensemble.n_paths,
                       opts.ensemble.workers);
    csv.comment("parabolicity_margin=" + CsvWriter::num(report.assumptions.parabolicity_margin) +
                " dissipativity_margin=" +
                CsvWriter::num(report.assumptions.dissipativity_margin));
    csv.comment("E||u_T^+||_H^2 threshold=" + CsvWriter::num(threshold) +
                " gronwall_worst_violation=" + CsvWriter::num(gronwall.worst_violation));
    csv.columns({"dt", "h", "n_paths", "mean_plus_sq_T", "stderr", "max_u", "pass"});
    bool rows_pass = true;
    for (size_t i = 0; i < report.levels.size(); ++i) {
        const MaxPrincipleLevel& lvl = report.levels[i];
        bool pass;
        if (power_check) {
            pass = lvl.max_u > 0.1;
        } else if (i + 1 == report.levels.size()) {
            pass = lvl.final_plus_sq.mean <= threshold;
        } else {
            pass = true;
        }
        rows_pass = rows_pass && pass;
        csv.row({CsvWriter::num(lvl.dt), CsvWriter::num(grid->mesh()),
                 CsvWriter::num(lvl.paths), CsvWriter::num(lvl.final_plus_sq.mean),
                 CsvWriter::num(lvl.final_plus_sq.stderr_), CsvWriter::num(lvl.max_u),
                 CsvWriter::flag(pass)});
    }

    if (power_check) {
        const bool detected = report.levels.back().max_u > 0.1;
        log << "maxprin power check: max_u=" << report.levels.back().max_u
            << (detected ? " (violation detected)" : " (NOT detected)") << "\n";
        return detected ? kExitPass : kExitCheckFailed;
    }

    const bool pass = rows_pass && report.final_nonincreasing_in_dt && gronwall.pass;
    log << "maxprin: E||u_T^+||^2=" << report.levels.back().final_plus_sq.mean
        << " threshold=" << threshold << " monotone=" << report.final_nonincreasing_in_dt
        << " gronwall=" << gronwall.pass << "\n";
    return pass ? kExitPass : kExitCheckFailed;
}

int run_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
    cfg.validate();
    const GridPtr grid = build_grid(cfg.grid_spec());
    const SPDECoefficients coeffs = cfg.coefficients();
    const GridFunction u0 = sample_initial(cfg, grid);
    const double T = cfg.total_time();
    const double dt = cfg.dt_list().front();

    SimulateOptions sim;
    sim.scheme = cfg.scheme();
    sim.solver = cfg.solver_options();
    const NoiseDriver driver(coeffs.channels, cfg.seed(), dt);

    const int n_paths = cfg.paths();
    auto run_path = [&](int path) -> Trajectory {
        SpdeContext ctx(grid, coeffs, sim);
        return simulate(ctx, u0, T, driver, path);
    };
    const std::vector<Trajectory> trajectories =
        parallel_paths<Trajectory>(n_paths, cfg.workers(), run_path);

    CsvWriter traj_csv(out_path(out_dir, "trajectory.csv"));
    write_run_preamble(traj_csv, "simulate", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                       scheme_id(sim.scheme), n_paths, cfg.workers());
    traj_csv.columns({"path", "t", "node", "value"});
    CsvWriter diag_csv(out_path(out_dir, "diagnostics.csv"));
    write_run_preamble(diag_csv, "simulate", cfg.hash(), cfg.seed(), NoiseDriver::rng_id(),
                       scheme_id(sim.scheme), n_paths, cfg.workers());
    diag_csv.columns({"path", "t", "norm_H", "norm_V", "norm_plus_H"});
    for (const Trajectory& traj : trajectories) {
        for (size_t n = 0; n < traj.states.size(); ++n)
            for (int i = 0; i < traj.states[n].size(); ++i)
                traj_csv.row({CsvWriter::num(traj.path), CsvWriter::num(traj.times[n]),
                              CsvWriter::num(i), CsvWriter::num(traj.states[n][i])});
        for (size_t n = 0; n < traj.diagnostics.size(); ++n)
            diag_csv.row({CsvWriter::num(traj.path), CsvWriter::num(traj.times[n]),
                          CsvWriter::num(traj.diagnostics[n].norm_h),
                          CsvWriter::num(traj.diagnostics[n].norm_v),
                          CsvWriter::num(traj.diagnostics[n].norm_plus_h)});
    }
    log << "simulate: " << n_paths << " paths, " << trajectories.front().steps()
        << " steps each\n";
    return kExitPass;
}

} // namespace itolab
