#include "itolab/gram.hpp"

#include <cmath>
namespace itolab {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

GramOperator::GramOperator(GridPtr grid, SobolevOrder m)
    : grid_(std::move(grid)), m_(m), alphas_(multi_indices_up_to(grid_->dim(), m.m)) {
    // diag of (D^alpha)^T D^alpha at any node: the squared l2 norm of the
    // one-node stencil, h^{-2|alpha|} * prod_i C(2 alpha_i, alpha_i)
    const double h = grid_->mesh();
    diag_ = 0.0;
    for (const MultiIndex& alpha : alphas_) {
        double term = std::pow(h, -2.0 * alpha.order());
        for (int ax = 0; ax < grid_->dim(); ++ax)
            term *= binomial(2 * alpha.a[ax], alpha.a[ax]);
        diag_ += term;
    }
}

GridFunction GramOperator::apply(const GridFunction& u) const {
    if (u.grid() != grid_) throw GridMismatch("GramOperator::apply: wrong grid");
    GridFunction out = u; // |alpha| = 0 term
    const LatticeField su = scatter(u);
    for (const MultiIndex& alpha : alphas_) {
        if (alpha.order() == 0) continue;
        LatticeField w = diff_alpha(su, alpha);
        // adjoint composition (-1)^|alpha| (D^-)^alpha
        for (int ax = 0; ax < grid_->dim(); ++ax)
            for (int rep = 0; rep < alpha.a[ax]; ++rep) w = backward_diff(w, ax);
        const double sign = alpha.order() % 2 == 0 ? 1.0 : -1.0;
        out.axpy(sign, gather(w, grid_));
    }
    return out;
}

GramOperator assemble_gram(GridPtr grid, SobolevOrder m) {
    return GramOperator(std::move(grid), m);
}

} // namespace itolab
