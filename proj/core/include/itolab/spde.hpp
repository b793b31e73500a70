#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "itolab/cg.hpp"
#include "itolab/coefficients.hpp"
#include "itolab/lattice.hpp"
#include "itolab/noise.hpp"
#include "itolab/resolvent.hpp"

namespace itolab {

enum class Scheme { SemiImplicit, Explicit };

std::string scheme_id(Scheme scheme);

/// Discrete states of one path, sampled at every step, with the Wiener
/// increments that produced them and per-step norm diagnostics.
struct Trajectory {
    GridPtr grid;
    double dt = 0.0;
    std::vector<double> times;               // M + 1 entries
    std::vector<GridFunction> states;        // M + 1 entries
    std::vector<std::vector<double>> dw;     // M entries of K increments
    struct Diagnostics {
        double norm_h = 0.0;
        double norm_v = 0.0;
        double norm_plus_h = 0.0;
    };
    std::vector<Diagnostics> diagnostics;    // M + 1 entries
    std::string scheme;
    std::uint64_t seed = 0;
    std::uint64_t path = 0;

    int steps() const { return static_cast<int>(dw.size()); }
};

struct SimulateOptions {
    Scheme scheme = Scheme::SemiImplicit;
    CgOptions solver{};
    bool check_assumptions = true; // parabolicity + boundedness gate
};

/// Shared machinery for one (grid, coefficients) pair: sampled coefficient
/// tables, the symmetric second-order part for the implicit solve, and the
/// order-1 resolvent used for Riesz representers. Immutable after
/// construction except for the time-sampling cache; use one context per
/// execution thread.
class SpdeContext {
public:
    SpdeContext(GridPtr grid, SPDECoefficients coeffs, SimulateOptions options = {});

    const GridPtr& grid() const { return grid_; }
    const SPDECoefficients& coeffs() const { return coeffs_; }
    const SimulateOptions& options() const { return options_; }

    /// The weak-form right-hand side functional
    ///   phi -> (D_i phi, -a^{ij} D_j u - a^i u) + (phi, b^i D_i u + c u + f)
    /// with forward-difference gradients in the divergence pairing and
    /// node-centered gradients in the zero-order pairing.
    double weak_rhs_functional(const GridFunction& u, const GridFunction& phi, double t);

    /// H-representer g of the functional above: (phi, g)_H equals the weak
    /// right-hand side for every phi, built through the exact lattice
    /// adjoints. This is also the explicit Euler drift.
    GridFunction drift_representer(const GridFunction& u, double t);

    /// Riesz representer v* in V of the weak functional:
    /// (phi, v*)_V = weak_rhs_functional(u, phi) for all phi; computed as
    /// the lambda = 0 resolvent applied to the H-representer.
    GridFunction riesz_vstar(const GridFunction& u, double t);

    /// Noise fields g_k = sigma^{ik} D_i u + nu^k u with node-centered D_i u.
    std::vector<GridFunction> diffusion_fields(const GridFunction& u, double t);

    /// Symmetric second-order operator u -> -div(a_sym grad u) used
    /// implicitly by the semi-implicit scheme.
    GridFunction apply_divergence_part(const GridFunction& u, double t);

    /// One time step from u at time t with increments dW.
    GridFunction step(const GridFunction& u, double t, double dt,
                      const std::vector<double>& dw);

    const ResolventSolver& vstar_solver();

private:
    GridPtr grid_;
    SPDECoefficients coeffs_;
    SimulateOptions options_;

    struct Tables;
    std::shared_ptr<Tables> tables_;      // sampled coefficient values
    double tables_time_ = 0.0;
    bool tables_ready_ = false;
    bool has_second_order_ = false;

    std::shared_ptr<const GramOperator> gram1_;
    std::optional<ResolventSolver> r0_;

    void ensure_tables(double t);
    double divergence_diagonal(int node) const;
};

/// Run the scheme for ceil(T / dt) steps from u0, drawing increments from
/// the driver for the given path.
Trajectory simulate(SpdeContext& ctx, const GridFunction& u0, double T,
                    const NoiseDriver& driver, std::uint64_t path);

/// Free-function forms of the context operations (convenience for tests and
/// one-shot callers).
double weak_rhs_functional(const GridFunction& u, const SPDECoefficients& coeffs,
                           const GridFunction& phi, double t = 0.0);
GridFunction riesz_vstar(const GridFunction& u, const SPDECoefficients& coeffs, double t = 0.0);
std::vector<GridFunction> diffusion_fields(const GridFunction& u, const SPDECoefficients& coeffs,
                                           double t = 0.0);

struct WeakConsistencyReport {
    std::vector<double> max_residual_per_phi;
    double worst = 0.0;
};

/// Replay a trajectory against the weak identity
///   (phi, u_t) = (phi, u_0) + sum dt (phi, v*_s)_V + sum_k (phi, g_k) dW^k
/// and report the worst cumulative defect per test function.
WeakConsistencyReport weak_consistency_check(const Trajectory& traj, SpdeContext& ctx,
                                             const std::vector<GridFunction>& phis);

} // namespace itolab
