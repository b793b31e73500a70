#include "support/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itolab_test {

using itolab::GridFunction;
using itolab::GridPtr;

DenseMatrix materialize(const std::function<GridFunction(const GridFunction&)>& op,
                        const GridPtr& grid) {
    const int n = grid->num_nodes();
    DenseMatrix m(n);
    for (int j = 0; j < n; ++j) {
        GridFunction e(grid);
        e[j] = 1.0;
        const GridFunction col = op(e);
        for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

std::vector<double> cholesky_solve(DenseMatrix a, const std::vector<double>& b) {
    const int n = a.size();
    // lower Cholesky in place
    for (int j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
        if (!(d > 0.0)) throw std::runtime_error("cholesky_solve: matrix not SPD");
        const double l = std::sqrt(d);
        a.at(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double s = a.at(i, j);
            for (int k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
            a.at(i, j) = s / l;
        }
    }
    std::vector<double> x = b;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) x[i] -= a.at(i, k) * x[k];
        x[i] /= a.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) x[i] -= a.at(k, i) * x[k];
        x[i] /= a.at(i, i);
    }
    return x;
}

GridFunction dense_solve(const std::function<GridFunction(const GridFunction&)>& op,
                         const GridFunction& b) {
    const DenseMatrix m = materialize(op, b.grid());
    return GridFunction(b.grid(), cholesky_solve(m, b.values()));
}

std::vector<double> jacobi_eigenvalues(DenseMatrix a, double tol) {
    const int n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        double diag = 0.0;
        for (int i = 0; i < n; ++i) diag += a.at(i, i) * a.at(i, i);
        if (off <= tol * tol * std::max(diag, 1e-300)) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = 0.5 * (a.at(q, q) - a.at(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace itolab_test
