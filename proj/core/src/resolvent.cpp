#include "itolab/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "itolab/lattice.hpp"

namespace itolab {

ResolventSolver::ResolventSolver(std::shared_ptr<const GramOperator> gram, double lambda,
                                 CgOptions options)
    : gram_(std::move(gram)), lambda_(lambda), options_(options) {
    if (lambda_ < 0.0) throw std::invalid_argument("ResolventSolver: lambda must be >= 0");
}

ResolventSolver::ResolventSolver(GridPtr grid, SobolevOrder m, double lambda, CgOptions options)
    : ResolventSolver(std::make_shared<GramOperator>(std::move(grid), m), lambda, options) {}

GridFunction ResolventSolver::apply(const GridFunction& f) const {
    if (f.grid() != gram_->grid()) throw GridMismatch("ResolventSolver::apply: wrong grid");
    const double lambda = lambda_;
    const GramOperator& A = *gram_;
    auto op = [&A, lambda](const GridFunction& u) {
        GridFunction out = A.apply(u);
        if (lambda != 0.0) out.axpy(lambda, u);
        return out;
    };
    const double d = lambda + A.diagonal_value();
    return conjugate_gradient(op, f, [d](int) { return d; }, options_).x;
}

double ResolventSolver::residual(const GridFunction& f, const GridFunction& v) const {
    GridFunction r = gram_->apply(v);
    r.axpy(lambda_, v);
    r -= f;
    const double nf = norm_H(f);
    return nf > 0.0 ? norm_H(r) / nf : norm_H(r);
}

GridFunction apply_resolvent(const ResolventSolver& rs, const GridFunction& f) {
    return rs.apply(f);
}

GridFunction apply_lift(double n, const ResolventSolver& rs_at_n, const GridFunction& f) {
    if (!(n > 0.0)) throw std::invalid_argument("apply_lift: n must be > 0");
    if (rs_at_n.lambda() != n)
        throw std::invalid_argument("apply_lift: solver is not tuned to lambda = n");
    GridFunction v = rs_at_n.apply(f);
    v *= n;
    return v;
}

bool ResolventReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ResolventCheckRow& r) { return r.pass; });
}

namespace {

double rel_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

} // namespace

ResolventReport verify_resolvent_properties(GridPtr grid, SobolevOrder m,
                                            const std::vector<double>& lambdas,
                                            const std::vector<GridFunction>& samples,
                                            const ResolventCheckOptions& opts) {
    if (samples.empty())
        throw std::invalid_argument("verify_resolvent_properties: no samples");
    ResolventReport report;
    auto gram = std::make_shared<GramOperator>(grid, m);

    std::vector<double> sorted = lambdas;
    std::sort(sorted.begin(), sorted.end());

    const size_t ns = samples.size();
    std::vector<double> norm_h(ns), norm_v(ns);
    for (size_t i = 0; i < ns; ++i) {
        norm_h[i] = norm_H(samples[i]);
        norm_v[i] = norm_V(samples[i], m);
    }

    // err_v[i] tracks ||f - lambda R f||_V from the previous lambda
    std::vector<double> prev_err_v(ns, 0.0);
    bool have_prev = false;
    double prev_lambda = 0.0;

    for (double lambda : sorted) {
        ResolventSolver rs(gram, lambda, opts.solver);
        std::vector<GridFunction> r_of(ns, GridFunction{});
        for (size_t i = 0; i < ns; ++i) r_of[i] = rs.apply(samples[i]);

        auto row = [&](const std::string& name, double measured, double bound) {
            report.rows.push_back({name, lambda, measured, bound, measured <= bound});
        };

        double c_h = 0.0, c_v = 0.0, e_v = 0.0, id_h = 0.0, id_v = 0.0, rate = 0.0;
        for (size_t i = 0; i < ns; ++i) {
            const GridFunction& f = samples[i];
            const GridFunction& v = r_of[i];
            GridFunction defect = f;       // f - lambda R f
            defect.axpy(-lambda, v);

            const double v_h2 = inner_H(v, v);
            const double v_v2 = inner_V(v, v, m);
            c_h = std::max(c_h, lambda * std::sqrt(v_h2) / norm_h[i]);
            c_v = std::max(c_v, lambda * std::sqrt(v_v2) / norm_v[i]);
            e_v = std::max(e_v, std::sqrt(v_v2) / norm_h[i]);

            // lambda ||v||_H^2 + ||v||_V^2 = (f, v)_H as an equality
            id_h = std::max(id_h, rel_gap(lambda * v_h2 + v_v2, inner_H(f, v)));
            // (v, f)_V = ||f - lambda v||_H^2 + lambda ||v||_V^2 as an equality
            id_v = std::max(id_v, rel_gap(inner_V(v, f, m),
                                          inner_H(defect, defect) + lambda * v_v2));
            if (lambda > 0.0)
                rate = std::max(rate, norm_H(defect) * std::sqrt(lambda) / norm_v[i]);
        }
        row("contraction_H", c_h, 1.0 + opts.contraction_slack);
        row("contraction_V", c_v, 1.0 + opts.contraction_slack);
        row("energy_V_by_H", e_v, 1.0 + opts.contraction_slack);
        row("identity_H", id_h, opts.identity_rel_tol);
        row("identity_V", id_v, opts.identity_rel_tol);
        if (lambda > 0.0) row("approx_rate_H", rate, 1.0 + opts.contraction_slack);

        double sym = 0.0;
        for (size_t i = 0; i + 1 < ns; i += 2)
            sym = std::max(sym, rel_gap(inner_H(r_of[i], samples[i + 1]),
                                        inner_H(samples[i], r_of[i + 1])));
        row("symmetry_H", sym, opts.identity_rel_tol);

        std::vector<double> err_v(ns);
        for (size_t i = 0; i < ns; ++i) {
            GridFunction defect = samples[i];
            defect.axpy(-lambda, r_of[i]);
            err_v[i] = norm_V(defect, m);
        }
        if (have_prev && lambda > prev_lambda) {
            double worst = 0.0;
            for (size_t i = 0; i < ns; ++i)
                worst = std::max(worst, (err_v[i] - prev_err_v[i]) / norm_v[i]);
            row("approx_monotone_V", worst, opts.identity_rel_tol);
        }
        prev_err_v = err_v;
        prev_lambda = lambda;
        have_prev = true;
    }
    return report;
}

} // namespace itolab
