#include "itolab/cg.hpp"

#include <cmath>
#include <sstream>

#include "itolab/lattice.hpp"

namespace itolab {

namespace {

// one CG run from x, stops on the recurrence residual; returns l2 residual
void cg_sweep(const std::function<GridFunction(const GridFunction&)>& op,
              const GridFunction& b, GridFunction& x,
              const std::function<double(int)>& diag,
              double abs_tol_l2, int max_iter, int& used_iter) {
    const int n = b.size();
    GridFunction r = b;
    r -= op(x);
    GridFunction z(x.grid());
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag(i);
    GridFunction p = z;
    double rz = 0.0;
    for (int i = 0; i < n; ++i) rz += r[i] * z[i];
    double rr = 0.0;
    for (int i = 0; i < n; ++i) rr += r[i] * r[i];

    int it = 0;
    while (it < max_iter && std::sqrt(rr) > abs_tol_l2) {
        GridFunction q = op(p);
        double pq = 0.0;
        for (int i = 0; i < n; ++i) pq += p[i] * q[i];
        if (!(pq > 0.0)) break; // loss of positivity: bail out to refinement
        const double alpha = rz / pq;
        x.axpy(alpha, p);
        r.axpy(-alpha, q);
        rr = 0.0;
        for (int i = 0; i < n; ++i) rr += r[i] * r[i];
        for (int i = 0; i < n; ++i) z[i] = r[i] / diag(i);
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        ++it;
    }
    used_iter += it;
}

} // namespace

CgResult conjugate_gradient(const std::function<GridFunction(const GridFunction&)>& op,
                            const GridFunction& b,
                            const std::function<double(int)>& diag,
                            const CgOptions& opts) {
    CgResult res;
    res.x = GridFunction::zeros(b.grid());
    const double nb = norm_H(b);
    if (nb == 0.0) return res;

    const int n = b.size();
    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : 10 * n + 200;
    const double scale = std::sqrt(b.grid()->cell_volume());
    const double abs_tol_l2 = opts.rel_tol * nb / scale; // H norm = scale * l2 norm

    int used = 0;
    double true_rel = 1.0;
    for (int pass = 0; pass <= opts.max_refinements; ++pass) {
        cg_sweep(op, b, res.x, diag, 0.25 * abs_tol_l2, max_iter - used, used);
        GridFunction r = b;
        r -= op(res.x);
        true_rel = norm_H(r) / nb;
        res.refinements = pass;
        if (true_rel <= opts.rel_tol || used >= max_iter) break;
    }
    res.rel_residual = true_rel;
    res.iterations = used;

    if (true_rel > opts.rel_tol && opts.throw_on_failure) {
        std::ostringstream msg;
        msg << "conjugate_gradient: stalled at relative residual " << true_rel
            << " (target " << opts.rel_tol << ", " << used << " iterations)";
        throw SolverDivergence(msg.str());
    }
    return res;
}

} // namespace itolab
