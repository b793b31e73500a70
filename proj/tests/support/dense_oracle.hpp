#pragma once

#include <functional>
#include <vector>

#include "itolab/grid.hpp"

namespace itolab_test {

/// Dense column-major symmetric matrix utilities used as the independent
/// reference route: direct Cholesky solves and Jacobi-rotation spectra for
/// the desk-scale operators the iterative solvers are checked against.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double& at(int i, int j) { return a_[static_cast<size_t>(j) * n_ + i]; }
    double at(int i, int j) const { return a_[static_cast<size_t>(j) * n_ + i]; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Materialize a matrix-free operator by applying it to the basis vectors.
DenseMatrix materialize(const std::function<itolab::GridFunction(const itolab::GridFunction&)>& op,
                        const itolab::GridPtr& grid);

/// Solve A x = b for SPD A by Cholesky factorization.
std::vector<double> cholesky_solve(DenseMatrix a, const std::vector<double>& b);

itolab::GridFunction dense_solve(
    const std::function<itolab::GridFunction(const itolab::GridFunction&)>& op,
    const itolab::GridFunction& b);

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// ascending.
std::vector<double> jacobi_eigenvalues(DenseMatrix a, double tol = 1e-12);

} // namespace itolab_test
