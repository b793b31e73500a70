#pragma once

#include <memory>
#include <string>
#include <vector>

#include "itolab/cg.hpp"
#include "itolab/gram.hpp"

namespace itolab {

/// Solver for the defining identity of the resolvent map f -> v:
///
///   (f, u)_H = lambda (v, u)_H + (v, u)_V   for all interior u,
///
/// realized as the SPD solve (lambda I + A) v = f with A the Gram operator
/// of the V inner product. lambda = 0 is allowed because A itself is SPD.
/// The Gram operator is shared between solvers at different lambda.
class ResolventSolver {
public:
    ResolventSolver(std::shared_ptr<const GramOperator> gram, double lambda,
                    CgOptions options = {});
    ResolventSolver(GridPtr grid, SobolevOrder m, double lambda, CgOptions options = {});

    double lambda() const { return lambda_; }
    const GramOperator& gram() const { return *gram_; }
    const CgOptions& options() const { return options_; }

    /// R_lambda f.
    GridFunction apply(const GridFunction& f) const;

    /// Relative H-norm residual of (lambda I + A) v = f for a candidate v.
    double residual(const GridFunction& f, const GridFunction& v) const;

private:
    std::shared_ptr<const GramOperator> gram_;
    double lambda_;
    CgOptions options_;
};

GridFunction apply_resolvent(const ResolventSolver& rs, const GridFunction& f);

/// Lift S_n f = n R_n f; a contraction of H and of V for every n > 0.
GridFunction apply_lift(double n, const ResolventSolver& rs_at_n, const GridFunction& f);

/// One measured property of the resolvent family.
struct ResolventCheckRow {
    std::string check;
    double lambda = 0.0;
    double measured = 0.0; // the quantity that must stay below `bound`
    double bound = 0.0;
    bool pass = false;
};

struct ResolventReport {
    std::vector<ResolventCheckRow> rows;
    bool all_pass() const;
};

struct ResolventCheckOptions {
    double contraction_slack = 1e-10; // allowed overshoot of the contraction
    double identity_rel_tol = 1e-8;   // residual tolerance for the equalities
    CgOptions solver;
};

/// Run the full property suite of the resolvent family on random samples:
/// contraction in H and V, symmetry in H, the energy estimates, the pairing
/// identity written as an equality, the H-norm convergence rate
/// ||f - lambda R f||_H <= lambda^{-1/2} ||f||_V, and the monotone V-norm
/// convergence along the lambda list. Failures become report rows, not
/// exceptions.
ResolventReport verify_resolvent_properties(GridPtr grid, SobolevOrder m,
                                            const std::vector<double>& lambdas,
                                            const std::vector<GridFunction>& samples,
                                            const ResolventCheckOptions& opts = {});

} // namespace itolab
