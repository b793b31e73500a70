#pragma once

#include "itolab/lattice.hpp"

namespace itolab {

/// Symmetric positive definite operator A on interior nodal values realizing
/// (A u, v)_H = (u, v)_V for every v, built from the composed forward
/// differences and their exact lattice adjoints:
///
///   A = sum over |alpha| <= m of (-1)^|alpha| (D^-)^alpha (D^+)^alpha
///
/// restricted back to the interior nodes. The |alpha| = 0 term makes
/// A - I positive semidefinite, so every eigenvalue is >= 1.
class GramOperator {
public:
    GramOperator(GridPtr grid, SobolevOrder m);

    const GridPtr& grid() const { return grid_; }
    SobolevOrder order() const { return m_; }

    GridFunction apply(const GridFunction& u) const;

    /// Matrix diagonal of A (constant across nodes on a uniform lattice).
    double diagonal_value() const { return diag_; }

private:
    GridPtr grid_;
    SobolevOrder m_;
    std::vector<MultiIndex> alphas_;
    double diag_ = 1.0;
};

GramOperator assemble_gram(GridPtr grid, SobolevOrder m);

} // namespace itolab
