#include "itolab/ledger.hpp"

namespace itolab {

namespace {

template <typename TermFn>
ItoLedger build_ledger(const Trajectory& traj, SpdeContext& ctx, TermFn&& terms) {
    ItoLedger ledger;
    const int steps = traj.steps();
    ledger.rows.reserve(steps);
    ledger.residual.reserve(steps + 1);
    ledger.residual.push_back(0.0);
    double cumulative = 0.0;
    for (int n = 0; n < steps; ++n) {
        ItoLedger::Row row = terms(n);
        row.t = traj.times[n];
        cumulative += row.lhs_increment - row.drift_term - row.qv_term - row.stochastic_term;
        ledger.residual.push_back(cumulative);
        ledger.rows.push_back(row);
    }
    (void)ctx;
    return ledger;
}

} // namespace

ItoLedger energy_identity_ledger(const Trajectory& traj, SpdeContext& ctx) {
    const SobolevOrder m1(1);
    double qv_running = 0.0, qv_bound_sigma = 0.0, sup_grad = 0.0;
    ItoLedger ledger = build_ledger(traj, ctx, [&](int n) {
        ItoLedger::Row row;
        const double t = traj.times[n];
        const GridFunction& u = traj.states[n];
        const GridFunction& u_next = traj.states[n + 1];
        row.lhs_increment = inner_H(u_next, u_next) - inner_H(u, u);
        const GridFunction vstar = ctx.riesz_vstar(u, t);
        row.drift_term = 2.0 * inner_V(u, vstar, m1) * traj.dt;
        const std::vector<GridFunction> g = ctx.diffusion_fields(u, t);
        for (size_t k = 0; k < g.size(); ++k) {
            const double gk2 = inner_H(g[k], g[k]);
            row.qv_term += gk2 * traj.dt;
            const double pairing = 2.0 * inner_H(u, g[k]);
            row.stochastic_term += pairing * traj.dw[n][k];
            qv_running += pairing * pairing * traj.dt;
            qv_bound_sigma += gk2 * traj.dt;
        }
        sup_grad = std::max(sup_grad, 2.0 * norm_H(u));
        return row;
    });
    ledger.stochastic_qv = qv_running;
    ledger.stochastic_qv_bound = sup_grad * sup_grad * qv_bound_sigma;
    return ledger;
}

ItoLedger general_ito_ledger(const Trajectory& traj, SpdeContext& ctx, const FunctionalR& r) {
    const SobolevOrder m1(1);
    double qv_running = 0.0, qv_bound_sigma = 0.0, sup_grad = 0.0;
    ItoLedger ledger = build_ledger(traj, ctx, [&](int n) {
        ItoLedger::Row row;
        const double t = traj.times[n];
        const GridFunction& u = traj.states[n];
        row.lhs_increment = phi_value(r, traj.states[n + 1]) - phi_value(r, u);
        const GridFunction grad = phi_grad(r, u);
        const GridFunction vstar = ctx.riesz_vstar(u, t);
        row.drift_term = inner_V(grad, vstar, m1) * traj.dt;
        const std::vector<GridFunction> g = ctx.diffusion_fields(u, t);
        for (size_t k = 0; k < g.size(); ++k) {
            row.qv_term += 0.5 * phi_hess_dir(r, u, g[k]) * traj.dt;
            const double pairing = inner_H(grad, g[k]);
            row.stochastic_term += pairing * traj.dw[n][k];
            qv_running += pairing * pairing * traj.dt;
            qv_bound_sigma += inner_H(g[k], g[k]) * traj.dt;
        }
        sup_grad = std::max(sup_grad, norm_H(grad));
        return row;
    });
    ledger.stochastic_qv = qv_running;
    ledger.stochastic_qv_bound = sup_grad * sup_grad * qv_bound_sigma;
    return ledger;
}

} // namespace itolab
