#pragma once

#include <atomic>
#include <mutex>
#include <thread>

#include "itolab/ledger.hpp"
#include "itolab/spde.hpp"
#include "itolab/stochastic.hpp"

namespace itolab {

/// Map a function over path indices with a fixed-size worker pool. Results
/// are returned in path order, so any reduction over them is independent of
/// the worker count.
template <typename Result, typename Fn>
std::vector<Result> parallel_paths(int n_paths, int workers, Fn&& fn) {
    std::vector<Result> results(n_paths);
    if (workers <= 1) {
        for (int p = 0; p < n_paths; ++p) results[p] = fn(p);
        return results;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const int p = next.fetch_add(1);
            if (p >= n_paths) return;
            try {
                results[p] = fn(p);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

/// sup_t ||S_n u_t - u_t||_H along a stored trajectory for each n; the
/// sequence must be nonincreasing in n.
struct LiftingReport {
    std::vector<double> n_values;
    std::vector<double> sup_diff_h;
    double sup_norm_v = 0.0; // sup_t ||u_t||_V, for spectral comparisons
    bool nonincreasing = true;
};

LiftingReport lifting_convergence(const Trajectory& traj, const std::vector<double>& n_list,
                                  SobolevOrder m, const CgOptions& solver = {});

/// One dt rung of a ledger refinement study.
struct RefinementRung {
    double dt = 0.0;
    int paths = 0;
    MeanStderr abs_residual;    // mean |cumulative residual at T| over paths
    MeanStderr signed_residual; // mean of the signed residual
    double max_u_plus = 0.0;    // max over paths of sup_t ||u_t^+||_H
};

struct LedgerRefinementStudy {
    std::vector<RefinementRung> rungs; // coarsest first
    bool monotone_abs() const;
    /// finest mean |residual| over the coarsest one
    double final_over_coarsest() const;
};

struct EnsembleOptions {
    int n_paths = 100;
    int workers = 1;
    Scheme scheme = Scheme::SemiImplicit;
    CgOptions solver{};
    bool check_assumptions = true;
};

/// Monte Carlo refinement study of a pathwise identity ledger: for each
/// refinement level of the driver (common random numbers through the
/// Brownian bridge) simulate n_paths trajectories and aggregate the
/// cumulative residual at T. `r` selects the generalized ledger; null runs
/// the squared-norm ledger.
LedgerRefinementStudy ledger_refinement_study(const GridPtr& grid,
                                              const SPDECoefficients& coeffs,
                                              const GridFunction& u0, double T,
                                              const NoiseDriver& base_driver, int n_levels,
                                              const FunctionalR* r,
                                              const EnsembleOptions& opts);

/// Statistics of one dt rung of the positivity experiment.
struct MaxPrincipleLevel {
    double dt = 0.0;
    int paths = 0;
    double max_u = 0.0;                         // over paths, times, nodes
    MeanStderr final_plus_sq;                   // E ||u_T^+||_H^2
    std::vector<double> checkpoint_times;
    std::vector<MeanStderr> weighted_plus_sq;   // E[||u_t^+||^2 exp(-int K)]
    std::vector<MeanStderr> weighted_increments; // paired consecutive diffs
    std::vector<double> qv_rate;                // mean noise QV rate per checkpoint
};

struct MaxPrincipleReport {
    AssumptionReport assumptions;
    std::vector<MaxPrincipleLevel> levels;      // coarsest dt first
    double u0_norm_h_sq = 0.0;
    bool final_nonincreasing_in_dt = true;      // across the ladder, paired
};

struct MaxPrincipleOptions {
    EnsembleOptions ensemble;
    int checkpoints = 20;
    bool override_assumptions = false;
    double dissipativity_tol_scale = 1.0;
};

/// Simulate the sign-preserving setup over a dt ladder and collect the
/// positive-part statistics. Preconditions (parabolicity, dissipativity
/// against k_bound, u0 <= 0, f <= 0 at t = 0) throw AssumptionViolated
/// unless overridden.
MaxPrincipleReport max_principle_experiment(const GridPtr& grid, const SPDECoefficients& coeffs,
                                            const GridFunction& u0, double T,
                                            const NoiseDriver& base_driver, int n_levels,
                                            const ScalarField& k_bound,
                                            const MaxPrincipleOptions& opts);

struct GronwallReport {
    /// worst violation of E X_{n+1} - E X_n <= 3 stderr + qv_rate * dt,
    /// where X = ||u^+||^2 exp(-int K); nonpositive means pass
    double worst_violation = 0.0;
    double allowed_defect_scale = 0.0; // largest qv_rate * dt allowance used
    bool pass = false;
};

/// Check that the exponentially weighted positive-part energy is
/// nonincreasing along checkpoints, within Monte Carlo error (3 stderr of
/// the paired increments) plus the scheme defect allowance qv_rate * dt.
GronwallReport gronwall_check(const MaxPrincipleLevel& level);

struct ChainRuleReport {
    std::vector<double> h_values;
    std::vector<double> mismatch_h; // || D(u^+) - 1_{u>0} D u ||
    std::vector<double> rates;      // log2 decay between consecutive grids
    double min_rate = 0.0;
};

/// Measure the positive-part chain-rule defect of the forward stencil on a
/// sampled profile across an h ladder; the mismatch concentrates at sign
/// changes and must decay at rate >= ~1/2 in log2.
ChainRuleReport positive_part_chain_rule_check(
    const std::function<double(const Coord&)>& profile, const std::vector<GridPtr>& grids);

} // namespace itolab
