#include "itolab/experiments.hpp"

#include <cmath>
#include <limits>

namespace itolab {

LiftingReport lifting_convergence(const Trajectory& traj, const std::vector<double>& n_list,
                                  SobolevOrder m, const CgOptions& solver) {
    LiftingReport rep;
    rep.n_values = n_list;
    auto gram = std::make_shared<GramOperator>(traj.grid, m);
    for (const Trajectory::Diagnostics& d : traj.diagnostics)
        rep.sup_norm_v = std::max(rep.sup_norm_v, d.norm_v);
    for (double n : n_list) {
        ResolventSolver rs(gram, n, solver);
        double sup = 0.0;
        for (const GridFunction& u : traj.states) {
            GridFunction lifted = apply_lift(n, rs, u);
            lifted -= u;
            sup = std::max(sup, norm_H(lifted));
        }
        rep.sup_diff_h.push_back(sup);
    }
    for (size_t i = 0; i + 1 < rep.sup_diff_h.size(); ++i)
        if (rep.sup_diff_h[i + 1] > rep.sup_diff_h[i]) rep.nonincreasing = false;
    return rep;
}

bool LedgerRefinementStudy::monotone_abs() const {
    for (size_t i = 0; i + 1 < rungs.size(); ++i)
        if (rungs[i + 1].abs_residual.mean > rungs[i].abs_residual.mean) return false;
    return true;
}

double LedgerRefinementStudy::final_over_coarsest() const {
    if (rungs.size() < 2 || rungs.front().abs_residual.mean == 0.0) return 0.0;
    return rungs.back().abs_residual.mean / rungs.front().abs_residual.mean;
}

LedgerRefinementStudy ledger_refinement_study(const GridPtr& grid,
                                              const SPDECoefficients& coeffs,
                                              const GridFunction& u0, double T,
                                              const NoiseDriver& base_driver, int n_levels,
                                              const FunctionalR* r,
                                              const EnsembleOptions& opts) {
    LedgerRefinementStudy study;
    struct PathOutcome {
        double residual = 0.0;
        double sup_plus = 0.0;
    };
    for (int level = 0; level < n_levels; ++level) {
        const NoiseDriver driver = base_driver.at_level(base_driver.level() + level);
        auto run_path = [&](int path) -> PathOutcome {
            SimulateOptions sim;
            sim.scheme = opts.scheme;
            sim.solver = opts.solver;
            sim.check_assumptions = opts.check_assumptions;
            SpdeContext ctx(grid, coeffs, sim);
            const Trajectory traj = simulate(ctx, u0, T, driver, path);
            const ItoLedger ledger = r ? general_ito_ledger(traj, ctx, *r)
                                       : energy_identity_ledger(traj, ctx);
            PathOutcome out;
            out.residual = ledger.final_residual();
            for (const Trajectory::Diagnostics& d : traj.diagnostics)
                out.sup_plus = std::max(out.sup_plus, d.norm_plus_h);
            return out;
        };
        const std::vector<PathOutcome> outcomes =
            parallel_paths<PathOutcome>(opts.n_paths, opts.workers, run_path);
        std::vector<double> abs(outcomes.size()), signed_r(outcomes.size());
        RefinementRung rung;
        for (size_t i = 0; i < outcomes.size(); ++i) {
            signed_r[i] = outcomes[i].residual;
            abs[i] = std::abs(outcomes[i].residual);
            rung.max_u_plus = std::max(rung.max_u_plus, outcomes[i].sup_plus);
        }
        rung.dt = driver.dt();
        rung.paths = opts.n_paths;
        rung.abs_residual = mean_stderr(abs);
        rung.signed_residual = mean_stderr(signed_r);
        study.rungs.push_back(rung);
    }
    return study;
}

namespace {

struct PathPositivity {
    double max_u = 0.0;
    double final_plus_sq = 0.0;
    std::vector<double> weighted;  // ||u^+||^2 exp(-int K) per checkpoint
    std::vector<double> qv_rate;   // sum_k ||g_k||_H^2 per checkpoint
};

} // namespace

MaxPrincipleReport max_principle_experiment(const GridPtr& grid, const SPDECoefficients& coeffs,
                                            const GridFunction& u0, double T,
                                            const NoiseDriver& base_driver, int n_levels,
                                            const ScalarField& k_bound,
                                            const MaxPrincipleOptions& opts) {
    MaxPrincipleReport report;
    report.assumptions = check_assumptions(coeffs, grid, k_bound, 0.0);
    report.u0_norm_h_sq = inner_H(u0, u0);

    double u0_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < u0.size(); ++i) u0_max = std::max(u0_max, u0[i]);
    double f_max = 0.0;
    if (coeffs.f)
        for (int i = 0; i < grid->num_nodes(); ++i)
            f_max = std::max(f_max, coeffs.f(0.0, grid->position_of(i)));

    if (!opts.override_assumptions) {
        if (!report.assumptions.parabolicity_pass)
            throw AssumptionViolated("max principle: parabolicity fails");
        if (!report.assumptions.dissipativity_pass)
            throw AssumptionViolated("max principle: dissipativity bound fails");
        if (u0_max > 0.0) throw AssumptionViolated("max principle: u0 must be <= 0");
        if (f_max > 0.0) throw AssumptionViolated("max principle: f must be <= 0");
    }

    std::vector<std::vector<double>> finals_per_level;

    for (int level = 0; level < n_levels; ++level) {
        const NoiseDriver driver = base_driver.at_level(base_driver.level() + level);
        const double dt = driver.dt();
        const int steps = static_cast<int>(std::ceil(T / dt - 1e-9));
        const int ncheck = std::min(opts.checkpoints, steps);
        std::vector<int> check_steps(ncheck + 1);
        for (int c = 0; c <= ncheck; ++c)
            check_steps[c] = static_cast<int>(std::llround(static_cast<double>(c) * steps / ncheck));

        // exp(-int_0^t K ds) on the step grid; coefficients are
        // deterministic so this is shared by every path
        std::vector<double> weight(steps + 1, 1.0);
        if (k_bound) {
            double integral = 0.0;
            for (int n = 0; n < steps; ++n) {
                double k_max = -std::numeric_limits<double>::infinity();
                for (int i = 0; i < grid->num_nodes(); ++i)
                    k_max = std::max(k_max, k_bound(n * dt, grid->position_of(i)));
                integral += k_max * dt;
                weight[n + 1] = std::exp(-integral);
            }
        }

        auto run_path = [&](int path) -> PathPositivity {
            SimulateOptions sim;
            sim.scheme = opts.ensemble.scheme;
            sim.solver = opts.ensemble.solver;
            sim.check_assumptions = false; // gated above with better messages
            SpdeContext ctx(grid, coeffs, sim);
            const Trajectory traj = simulate(ctx, u0, T, driver, path);
            PathPositivity out;
            out.max_u = -std::numeric_limits<double>::infinity();
            for (const GridFunction& u : traj.states)
                for (int i = 0; i < u.size(); ++i) out.max_u = std::max(out.max_u, u[i]);
            const double final_plus = traj.diagnostics.back().norm_plus_h;
            out.final_plus_sq = final_plus * final_plus;
            out.weighted.resize(ncheck + 1);
            out.qv_rate.resize(ncheck + 1);
            for (int c = 0; c <= ncheck; ++c) {
                const int s = check_steps[c];
                const double plus = traj.diagnostics[s].norm_plus_h;
                out.weighted[c] = plus * plus * weight[s];
                const std::vector<GridFunction> g =
                    ctx.diffusion_fields(traj.states[s], traj.times[s]);
                double rate = 0.0;
                for (const GridFunction& gk : g) rate += inner_H(gk, gk);
                out.qv_rate[c] = rate;
            }
            return out;
        };

        const std::vector<PathPositivity> paths =
            parallel_paths<PathPositivity>(opts.ensemble.n_paths, opts.ensemble.workers, run_path);

        MaxPrincipleLevel lvl;
        lvl.dt = dt;
        lvl.paths = opts.ensemble.n_paths;
        lvl.max_u = -std::numeric_limits<double>::infinity();
        std::vector<double> finals(paths.size());
        for (size_t p = 0; p < paths.size(); ++p) {
            lvl.max_u = std::max(lvl.max_u, paths[p].max_u);
            finals[p] = paths[p].final_plus_sq;
        }
        lvl.final_plus_sq = mean_stderr(finals);
        lvl.checkpoint_times.resize(ncheck + 1);
        for (int c = 0; c <= ncheck; ++c) lvl.checkpoint_times[c] = check_steps[c] * dt;
        std::vector<double> column(paths.size());
        for (int c = 0; c <= ncheck; ++c) {
            for (size_t p = 0; p < paths.size(); ++p) column[p] = paths[p].weighted[c];
            lvl.weighted_plus_sq.push_back(mean_stderr(column));
            double qv = 0.0;
            for (size_t p = 0; p < paths.size(); ++p) qv += paths[p].qv_rate[c];
            lvl.qv_rate.push_back(qv / paths.size());
        }
        for (int c = 0; c < ncheck; ++c) {
            for (size_t p = 0; p < paths.size(); ++p)
                column[p] = paths[p].weighted[c + 1] - paths[p].weighted[c];
            lvl.weighted_increments.push_back(mean_stderr(column));
        }
        report.levels.push_back(std::move(lvl));
        finals_per_level.push_back(std::move(finals));
    }

    // paired comparison of E||u_T^+||^2 between consecutive rungs
    for (size_t l = 0; l + 1 < finals_per_level.size(); ++l) {
        std::vector<double> diff(finals_per_level[l].size());
        for (size_t p = 0; p < diff.size(); ++p)
            diff[p] = finals_per_level[l + 1][p] - finals_per_level[l][p];
        const MeanStderr d = mean_stderr(diff);
        if (d.mean > 3.0 * d.stderr_ + 1e-15) report.final_nonincreasing_in_dt = false;
    }
    return report;
}

GronwallReport gronwall_check(const MaxPrincipleLevel& level) {
    GronwallReport rep;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < level.weighted_increments.size(); ++c) {
        const MeanStderr& inc = level.weighted_increments[c];
        const double defect = level.qv_rate[c] * level.dt;
        rep.allowed_defect_scale = std::max(rep.allowed_defect_scale, defect);
        rep.worst_violation =
            std::max(rep.worst_violation, inc.mean - (3.0 * inc.stderr_ + defect));
    }
    if (level.weighted_increments.empty()) rep.worst_violation = 0.0;
    rep.pass = rep.worst_violation <= 1e-15;
    return rep;
}

ChainRuleReport positive_part_chain_rule_check(
    const std::function<double(const Coord&)>& profile, const std::vector<GridPtr>& grids) {
    ChainRuleReport rep;
    for (const GridPtr& grid : grids) {
        const GridFunction u = GridFunction::sample(grid, profile);
        const GridFunction up = u.positive_part();
        const LatticeField su = scatter(u);
        const LatticeField sup = scatter(up);
        double mismatch_sq = 0.0;
        for (int ax = 0; ax < grid->dim(); ++ax) {
            LatticeField d_plus = forward_diff(sup, ax);
            const LatticeField d_u = forward_diff(su, ax);
            // subtract 1_{u(x) > 0} D u on the staggered window
            LatticeCoord k{0, 0};
            auto visit = [&](const LatticeCoord& kk) {
                const double indicator = u.at_lattice(kk) > 0.0 ? 1.0 : 0.0;
                d_plus.ref(kk) -= indicator * d_u.at(kk);
            };
            if (grid->dim() == 1) {
                for (k[0] = d_plus.lo()[0]; k[0] <= d_plus.hi()[0]; ++k[0]) visit(k);
            } else {
                for (k[1] = d_plus.lo()[1]; k[1] <= d_plus.hi()[1]; ++k[1])
                    for (k[0] = d_plus.lo()[0]; k[0] <= d_plus.hi()[0]; ++k[0]) visit(k);
            }
            mismatch_sq += lattice_inner(d_plus, d_plus);
        }
        rep.h_values.push_back(grid->mesh());
        rep.mismatch_h.push_back(std::sqrt(mismatch_sq));
    }
    rep.min_rate = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < rep.mismatch_h.size(); ++i) {
        const double a = rep.mismatch_h[i], b = rep.mismatch_h[i + 1];
        double rate;
        if (a == 0.0 && b == 0.0) rate = std::numeric_limits<double>::infinity();
        else if (b == 0.0) rate = std::numeric_limits<double>::infinity();
        else rate = std::log2(a / b);
        rep.rates.push_back(rate);
        rep.min_rate = std::min(rep.min_rate, rate);
    }
    if (rep.rates.empty()) rep.min_rate = 0.0;
    return rep;
}

} // namespace itolab
