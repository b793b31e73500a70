#pragma once

#include <functional>

#include "itolab/grid.hpp"

namespace itolab {

/// Result of a preconditioned conjugate gradient solve.
struct CgResult {
    GridFunction x;
    double rel_residual = 0.0; // true residual in the H norm over ||b||_H
    int iterations = 0;
    int refinements = 0;
};

struct CgOptions {
    double rel_tol = 1e-10;
    int max_iterations = 0;    // 0: use 10 * N + 200
    int max_refinements = 3;   // full-accuracy restarts on the true residual
    bool throw_on_failure = true;
};

/// Solve L x = b for a symmetric positive definite operator with Jacobi
/// (diagonal) preconditioning. `diag` supplies the matrix diagonal per node.
/// Convergence is certified on the explicitly recomputed residual; a few
/// iterative-refinement passes absorb the drift of the CG recurrence on
/// ill-conditioned systems. Throws SolverDivergence if the target cannot be
/// reached (unless opts.throw_on_failure is false).
CgResult conjugate_gradient(const std::function<GridFunction(const GridFunction&)>& op,
                            const GridFunction& b,
                            const std::function<double(int)>& diag,
                            const CgOptions& opts = {});

} // namespace itolab
