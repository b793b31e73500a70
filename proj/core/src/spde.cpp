#include "itolab/spde.hpp"

#include <cmath>

namespace itolab {

std::string scheme_id(Scheme scheme) {
    return scheme == Scheme::SemiImplicit ? "semi-implicit-euler-fd" : "explicit-euler-fd";
}

namespace {

// coefficient values over the lattice box padded by `pad` layers
LatticeField sample_table(const GridPtr& grid, const ScalarField& f, double t, int pad) {
    LatticeCoord lo{-pad, grid->dim() == 2 ? -pad : 0};
    LatticeCoord hi{grid->extent(0) + pad,
                    grid->dim() == 2 ? grid->extent(1) + pad : 0};
    LatticeField out(grid, lo, hi);
    if (!f) return out;
    LatticeCoord k{0, 0};
    if (grid->dim() == 1) {
        for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) out.ref(k) = f(t, grid->position_at(k));
    } else {
        for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
            for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0])
                out.ref(k) = f(t, grid->position_at(k));
    }
    return out;
}

// w(k) *= table(k) over w's window
void multiply_table(LatticeField& w, const LatticeField& table) {
    LatticeCoord k{0, 0};
    if (w.dim() == 1) {
        for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) *= table.at(k);
    } else {
        for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
            for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) *= table.at(k);
    }
}

bool field_present(const ScalarField& f) { return static_cast<bool>(f); }

} // namespace

struct SpdeContext::Tables {
    // sampled over the padded lattice window
    std::array<std::array<LatticeField, kMaxDim>, kMaxDim> a{};
    std::array<std::array<LatticeField, kMaxDim>, kMaxDim> a_sym{};
    std::array<LatticeField, kMaxDim> a_lower{};
    std::array<bool, kMaxDim> has_a_row{false, false};   // any a[i][j] or a_lower[i]
    // nodal samples
    std::array<GridFunction, kMaxDim> b{};
    GridFunction c;
    GridFunction f;
    std::vector<std::array<GridFunction, kMaxDim>> sigma;
    std::vector<GridFunction> nu;
    bool has_b = false, has_c = false, has_f = false;
};

SpdeContext::SpdeContext(GridPtr grid, SPDECoefficients coeffs, SimulateOptions options)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)), options_(options) {
    coeffs_.validate_shapes();
    if (coeffs_.dim != grid_->dim())
        throw std::invalid_argument("SpdeContext: coefficient dim does not match grid");
    for (int i = 0; i < coeffs_.dim; ++i)
        for (int j = 0; j < coeffs_.dim; ++j)
            has_second_order_ |= field_present(coeffs_.a[i][j]);
    gram1_ = std::make_shared<GramOperator>(grid_, SobolevOrder(1));
    r0_.emplace(gram1_, 0.0, options_.solver);

    if (options_.check_assumptions) {
        const AssumptionReport par = check_parabolicity(coeffs_, grid_, 0.0);
        if (!par.parabolicity_pass)
            throw AssumptionViolated("SpdeContext: parabolicity fails (margin " +
                                     std::to_string(par.parabolicity_margin) + ")");
        const AssumptionReport bnd = check_boundedness(coeffs_, grid_, 0.0);
        if (!bnd.bound_pass)
            throw AssumptionViolated("SpdeContext: a coefficient exceeds the declared bound");
    }
}

void SpdeContext::ensure_tables(double t) {
    if (tables_ready_ && (!coeffs_.time_dependent || tables_time_ == t)) return;
    auto tb = std::make_shared<Tables>();
    const int d = coeffs_.dim;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            tb->a[i][j] = sample_table(grid_, coeffs_.a[i][j], t, 2);
            tb->has_a_row[i] = tb->has_a_row[i] || field_present(coeffs_.a[i][j]);
        }
        tb->a_lower[i] = sample_table(grid_, coeffs_.a_lower[i], t, 2);
        tb->has_a_row[i] = tb->has_a_row[i] || field_present(coeffs_.a_lower[i]);
        tb->b[i] = GridFunction::sample(
            grid_, [&](const Coord& x) { return eval_field(coeffs_.b[i], t, x); });
        tb->has_b = tb->has_b || field_present(coeffs_.b[i]);
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            tb->a_sym[i][j] = tb->a[i][j];
            for (size_t q = 0; q < tb->a_sym[i][j].data().size(); ++q)
                tb->a_sym[i][j].data()[q] =
                    0.5 * (tb->a[i][j].data()[q] + tb->a[j][i].data()[q]);
        }
    tb->c = GridFunction::sample(grid_, [&](const Coord& x) { return eval_field(coeffs_.c, t, x); });
    tb->has_c = field_present(coeffs_.c);
    tb->f = GridFunction::sample(grid_, [&](const Coord& x) { return eval_field(coeffs_.f, t, x); });
    tb->has_f = field_present(coeffs_.f);
    tb->sigma.resize(coeffs_.channels);
    tb->nu.resize(coeffs_.channels, GridFunction{});
    for (int k = 0; k < coeffs_.channels; ++k) {
        for (int i = 0; i < d; ++i)
            tb->sigma[k][i] = GridFunction::sample(
                grid_, [&](const Coord& x) { return eval_field(coeffs_.sigma[k][i], t, x); });
        tb->nu[k] = GridFunction::sample(
            grid_, [&](const Coord& x) { return eval_field(coeffs_.nu[k], t, x); });
    }
    tables_ = std::move(tb);
    tables_time_ = t;
    tables_ready_ = true;
}

double SpdeContext::weak_rhs_functional(const GridFunction& u, const GridFunction& phi,
                                        double t) {
    if (u.grid() != grid_ || phi.grid() != grid_)
        throw GridMismatch("weak_rhs_functional: wrong grid");
    ensure_tables(t);
    const Tables& tb = *tables_;
    const int d = coeffs_.dim;
    const LatticeField su = scatter(u);

    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        if (!tb.has_a_row[i]) continue;
        // w_i = -sum_j a^{ij} D+_j u - a^i u on the staggered window
        LatticeField w = forward_diff(su, i); // window template
        for (double& v : w.data()) v = 0.0;
        for (int j = 0; j < d; ++j) {
            if (!field_present(coeffs_.a[i][j])) continue;
            LatticeField du = forward_diff(su, j);
            multiply_table(du, tb.a[i][j]);
            // accumulate on w's window
            LatticeCoord k{0, 0};
            if (d == 1) {
                for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) -= du.at(k);
            } else {
                for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
                    for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) -= du.at(k);
            }
        }
        if (field_present(coeffs_.a_lower[i])) {
            LatticeCoord k{0, 0};
            if (d == 1) {
                for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0])
                    w.ref(k) -= tb.a_lower[i].at(k) * su.at(k);
            } else {
                for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
                    for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0])
                        w.ref(k) -= tb.a_lower[i].at(k) * su.at(k);
            }
        }
        total += lattice_inner(forward_diff(phi, i), w);
    }

    GridFunction z(grid_);
    bool any_z = false;
    if (tb.has_b) {
        for (int i = 0; i < d; ++i) {
            if (!field_present(coeffs_.b[i])) continue;
            GridFunction du = central_diff_nodal(u, i);
            for (int q = 0; q < z.size(); ++q) z[q] += tb.b[i][q] * du[q];
            any_z = true;
        }
    }
    if (tb.has_c) {
        for (int q = 0; q < z.size(); ++q) z[q] += tb.c[q] * u[q];
        any_z = true;
    }
    if (tb.has_f) {
        for (int q = 0; q < z.size(); ++q) z[q] += tb.f[q];
        any_z = true;
    }
    if (any_z) total += inner_H(phi, z);
    return total;
}

GridFunction SpdeContext::drift_representer(const GridFunction& u, double t) {
    if (u.grid() != grid_) throw GridMismatch("drift_representer: wrong grid");
    ensure_tables(t);
    const Tables& tb = *tables_;
    const int d = coeffs_.dim;
    const LatticeField su = scatter(u);

    GridFunction g(grid_);
    for (int i = 0; i < d; ++i) {
        if (!tb.has_a_row[i]) continue;
        // D-_i ( sum_j a^{ij} D+_j u + a^i u ), gathered to the nodes
        LatticeField w = forward_diff(su, i);
        for (double& v : w.data()) v = 0.0;
        for (int j = 0; j < d; ++j) {
            if (!field_present(coeffs_.a[i][j])) continue;
            LatticeField du = forward_diff(su, j);
            multiply_table(du, tb.a[i][j]);
            LatticeCoord k{0, 0};
            if (d == 1) {
                for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) += du.at(k);
            } else {
                for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
                    for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) += du.at(k);
            }
        }
        if (field_present(coeffs_.a_lower[i])) {
            LatticeCoord k{0, 0};
            if (d == 1) {
                for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0])
                    w.ref(k) += tb.a_lower[i].at(k) * su.at(k);
            } else {
                for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
                    for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0])
                        w.ref(k) += tb.a_lower[i].at(k) * su.at(k);
            }
        }
        g += gather(backward_diff(w, i), grid_);
    }
    if (tb.has_b)
        for (int i = 0; i < d; ++i) {
            if (!field_present(coeffs_.b[i])) continue;
            GridFunction du = central_diff_nodal(u, i);
            for (int q = 0; q < g.size(); ++q) g[q] += tb.b[i][q] * du[q];
        }
    if (tb.has_c)
        for (int q = 0; q < g.size(); ++q) g[q] += tb.c[q] * u[q];
    if (tb.has_f)
        for (int q = 0; q < g.size(); ++q) g[q] += tb.f[q];
    return g;
}

GridFunction SpdeContext::riesz_vstar(const GridFunction& u, double t) {
    return r0_->apply(drift_representer(u, t));
}

std::vector<GridFunction> SpdeContext::diffusion_fields(const GridFunction& u, double t) {
    if (u.grid() != grid_) throw GridMismatch("diffusion_fields: wrong grid");
    ensure_tables(t);
    const Tables& tb = *tables_;
    std::vector<GridFunction> out(coeffs_.channels, GridFunction(grid_));
    std::array<GridFunction, kMaxDim> du{};
    for (int i = 0; i < coeffs_.dim; ++i) du[i] = central_diff_nodal(u, i);
    for (int k = 0; k < coeffs_.channels; ++k) {
        GridFunction& gk = out[k];
        for (int i = 0; i < coeffs_.dim; ++i)
            if (field_present(coeffs_.sigma[k][i]))
                for (int q = 0; q < gk.size(); ++q) gk[q] += tb.sigma[k][i][q] * du[i][q];
        if (field_present(coeffs_.nu[k]))
            for (int q = 0; q < gk.size(); ++q) gk[q] += tb.nu[k][q] * u[q];
    }
    return out;
}

GridFunction SpdeContext::apply_divergence_part(const GridFunction& u, double t) {
    ensure_tables(t);
    const Tables& tb = *tables_;
    const int d = coeffs_.dim;
    GridFunction out(grid_);
    if (!has_second_order_) return out;
    const LatticeField su = scatter(u);
    for (int i = 0; i < d; ++i) {
        LatticeField w = forward_diff(su, i);
        for (double& v : w.data()) v = 0.0;
        bool any = false;
        for (int j = 0; j < d; ++j) {
            if (!field_present(coeffs_.a[i][j]) && !field_present(coeffs_.a[j][i])) continue;
            LatticeField du = forward_diff(su, j);
            multiply_table(du, tb.a_sym[i][j]);
            LatticeCoord k{0, 0};
            if (d == 1) {
                for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) += du.at(k);
            } else {
                for (k[1] = w.lo()[1]; k[1] <= w.hi()[1]; ++k[1])
                    for (k[0] = w.lo()[0]; k[0] <= w.hi()[0]; ++k[0]) w.ref(k) += du.at(k);
            }
            any = true;
        }
        if (!any) continue;
        out -= gather(backward_diff(w, i), grid_);
    }
    return out;
}

double SpdeContext::divergence_diagonal(int node) const {
    const Tables& tb = *tables_;
    const int d = coeffs_.dim;
    const double inv_h2 = 1.0 / (grid_->mesh() * grid_->mesh());
    const LatticeCoord k = grid_->lattice_of(node);
    double val = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) {
                LatticeCoord km = k;
                km[i] -= 1;
                val += (tb.a_sym[i][i].at(k) + tb.a_sym[i][i].at(km)) * inv_h2;
            } else {
                val += tb.a_sym[i][j].at(k) * inv_h2;
            }
        }
    return val;
}

GridFunction SpdeContext::step(const GridFunction& u, double t, double dt,
                               const std::vector<double>& dw) {
    if (static_cast<int>(dw.size()) != coeffs_.channels)
        throw std::invalid_argument("step: increment count != channel count");
    ensure_tables(t);

    GridFunction rhs = u;
    if (options_.scheme == Scheme::Explicit || !has_second_order_) {
        rhs.axpy(dt, drift_representer(u, t));
        const std::vector<GridFunction> g = diffusion_fields(u, t);
        for (int k = 0; k < coeffs_.channels; ++k) rhs.axpy(dw[k], g[k]);
        return rhs;
    }

    // stiff part implicit: (I + dt A_sym) u' = u + dt (g + A_sym u) + noise
    GridFunction explicit_drift = drift_representer(u, t);
    explicit_drift += apply_divergence_part(u, t);
    rhs.axpy(dt, explicit_drift);
    const std::vector<GridFunction> g = diffusion_fields(u, t);
    for (int k = 0; k < coeffs_.channels; ++k) rhs.axpy(dw[k], g[k]);

    auto op = [this, t, dt](const GridFunction& v) {
        GridFunction out = apply_divergence_part(v, t);
        out *= dt;
        out += v;
        return out;
    };
    auto diag = [this, dt](int node) {
        return std::max(0.1, 1.0 + dt * divergence_diagonal(node));
    };
    return conjugate_gradient(op, rhs, diag, options_.solver).x;
}

const ResolventSolver& SpdeContext::vstar_solver() { return *r0_; }

Trajectory simulate(SpdeContext& ctx, const GridFunction& u0, double T,
                    const NoiseDriver& driver, std::uint64_t path) {
    if (!(T > 0.0)) throw std::invalid_argument("simulate: T must be > 0");
    if (u0.grid() != ctx.grid()) throw GridMismatch("simulate: u0 on wrong grid");
    if (driver.channels() != ctx.coeffs().channels)
        throw std::invalid_argument("simulate: driver channel count mismatch");

    const double dt = driver.dt();
    const int steps = static_cast<int>(std::ceil(T / dt - 1e-9));

    Trajectory traj;
    traj.grid = ctx.grid();
    traj.dt = dt;
    traj.scheme = scheme_id(ctx.options().scheme);
    traj.seed = driver.master_seed();
    traj.path = path;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.diagnostics.reserve(steps + 1);
    traj.dw.reserve(steps);

    const SobolevOrder m1(1);
    auto diag_of = [&m1](const GridFunction& u) {
        Trajectory::Diagnostics d;
        d.norm_h = norm_H(u);
        d.norm_v = norm_V(u, m1);
        d.norm_plus_h = norm_H(u.positive_part());
        return d;
    };

    GridFunction u = u0;
    traj.times.push_back(0.0);
    traj.states.push_back(u);
    traj.diagnostics.push_back(diag_of(u));
    for (int n = 0; n < steps; ++n) {
        const double t = n * dt;
        std::vector<double> dw = driver.increments(path, n);
        u = ctx.step(u, t, dt, dw);
        traj.dw.push_back(std::move(dw));
        traj.times.push_back((n + 1) * dt);
        traj.states.push_back(u);
        traj.diagnostics.push_back(diag_of(u));
    }
    return traj;
}

double weak_rhs_functional(const GridFunction& u, const SPDECoefficients& coeffs,
                           const GridFunction& phi, double t) {
    SimulateOptions opts;
    opts.check_assumptions = false;
    SpdeContext ctx(u.grid(), coeffs, opts);
    return ctx.weak_rhs_functional(u, phi, t);
}

GridFunction riesz_vstar(const GridFunction& u, const SPDECoefficients& coeffs, double t) {
    SimulateOptions opts;
    opts.check_assumptions = false;
    SpdeContext ctx(u.grid(), coeffs, opts);
    return ctx.riesz_vstar(u, t);
}

std::vector<GridFunction> diffusion_fields(const GridFunction& u, const SPDECoefficients& coeffs,
                                           double t) {
    SimulateOptions opts;
    opts.check_assumptions = false;
    SpdeContext ctx(u.grid(), coeffs, opts);
    return ctx.diffusion_fields(u, t);
}

WeakConsistencyReport weak_consistency_check(const Trajectory& traj, SpdeContext& ctx,
                                             const std::vector<GridFunction>& phis) {
    WeakConsistencyReport rep;
    rep.max_residual_per_phi.assign(phis.size(), 0.0);
    const SobolevOrder m1(1);
    std::vector<double> running(phis.size(), 0.0); // accumulated RHS per phi
    std::vector<double> base(phis.size());
    for (size_t p = 0; p < phis.size(); ++p) base[p] = inner_H(phis[p], traj.states[0]);

    for (int n = 0; n < traj.steps(); ++n) {
        const double t = traj.times[n];
        const GridFunction& u = traj.states[n];
        const GridFunction vstar = ctx.riesz_vstar(u, t);
        const std::vector<GridFunction> g = ctx.diffusion_fields(u, t);
        for (size_t p = 0; p < phis.size(); ++p) {
            double inc = traj.dt * inner_V(phis[p], vstar, m1);
            for (size_t k = 0; k < g.size(); ++k)
                inc += inner_H(phis[p], g[k]) * traj.dw[n][k];
            running[p] += inc;
            const double lhs = inner_H(phis[p], traj.states[n + 1]) - base[p];
            rep.max_residual_per_phi[p] =
                std::max(rep.max_residual_per_phi[p], std::abs(lhs - running[p]));
        }
    }
    for (double r : rep.max_residual_per_phi) rep.worst = std::max(rep.worst, r);
    return rep;
}

} // namespace itolab
