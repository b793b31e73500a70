#pragma once

#include "itolab/functional.hpp"
#include "itolab/spde.hpp"

namespace itolab {

/// Per-step bookkeeping of one pathwise identity: the increment of the
/// verified quantity against the three right-hand-side terms evaluated at
/// the left endpoint (Ito convention). residual is the cumulative series
/// lhs - rhs and starts at exactly zero.
struct ItoLedger {
    struct Row {
        double t = 0.0;              // left endpoint of the step
        double lhs_increment = 0.0;
        double drift_term = 0.0;     // V-pairing term times dt
        double qv_term = 0.0;        // second-derivative compensator times dt
        double stochastic_term = 0.0;
    };
    std::vector<Row> rows;
    std::vector<double> residual;    // size rows + 1, residual[0] = 0

    double final_residual() const { return residual.empty() ? 0.0 : residual.back(); }

    /// sum_k int |(grad phi(u), g_k)_H|^2 ds accumulated along the path;
    /// finite by the growth bounds, reported for every run.
    double stochastic_qv = 0.0;
    double stochastic_qv_bound = 0.0; // N^2 sup||grad||_H^2 * sum_k int ||g_k||^2
};

/// Ledger of the squared-H-norm identity along a trajectory:
///   d||u||_H^2 = 2 (u, v*)_V dt + sum_k ||g_k||_H^2 dt + 2 sum_k (u, g_k) dW.
ItoLedger energy_identity_ledger(const Trajectory& traj, SpdeContext& ctx);

/// Ledger of the generalized identity for phi(u) = h^d sum r(u):
///   d phi(u) = (grad phi(u), v*)_V dt + 1/2 sum_k hess_phi(u)[g_k] dt
///              + sum_k (grad phi(u), g_k) dW.
/// With r(x) = x^2 this reproduces the energy ledger term by term.
ItoLedger general_ito_ledger(const Trajectory& traj, SpdeContext& ctx, const FunctionalR& r);

} // namespace itolab
