#pragma once

#include "itolab/grid.hpp"

namespace itolab {

/// Dense values over a rectangular window of the lattice, zero outside the
/// window. Difference quotients of grid functions live here: their natural
/// support is staggered (it leaks one lattice step outside the interior per
/// applied difference), so the window is tracked explicitly and grows with
/// each application. All identities below are exact on this representation.
class LatticeField {
public:
    LatticeField() = default;
    /// Zero field over the window [lo, hi] (inclusive lattice coordinates).
    LatticeField(GridPtr grid, LatticeCoord lo, LatticeCoord hi);

    const GridPtr& grid() const { return grid_; }
    const LatticeCoord& lo() const { return lo_; }
    const LatticeCoord& hi() const { return hi_; }
    int dim() const { return grid_->dim(); }

    double at(const LatticeCoord& k) const;           // 0 outside the window
    double& ref(const LatticeCoord& k);               // k must be inside
    bool contains(const LatticeCoord& k) const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    LatticeField& operator+=(const LatticeField& other); // windows must match
    LatticeField& operator*=(double s);

private:
    GridPtr grid_;
    LatticeCoord lo_{0, 0};
    LatticeCoord hi_{0, 0};
    int nx_ = 0;
    std::vector<double> data_;
};

/// Copy interior nodal values onto the closed lattice box of the grid.
LatticeField scatter(const GridFunction& u);

/// Restrict a lattice field to the interior nodes.
GridFunction gather(const LatticeField& f, const GridPtr& grid);

/// Forward difference (f(k + e_axis) - f(k)) / h with zero extension.
LatticeField forward_diff(const LatticeField& f, int axis);
LatticeField forward_diff(const GridFunction& u, int axis);

/// Backward difference (f(k) - f(k - e_axis)) / h; the lattice adjoint of
/// forward_diff is -backward_diff.
LatticeField backward_diff(const LatticeField& f, int axis);
LatticeField backward_diff(const GridFunction& u, int axis);

/// Composed difference D^alpha, forward per axis alpha_i times. Throws
/// OrderTooHigh if |alpha| exceeds the active order.
LatticeField diff_alpha(const GridFunction& u, const MultiIndex& alpha, SobolevOrder limit);
LatticeField diff_alpha(const LatticeField& f, const MultiIndex& alpha);

/// h^d sum of the pointwise product over the overlap of the two windows.
double lattice_inner(const LatticeField& a, const LatticeField& b);

/// L2 pairing of a lattice field with a grid function (zero extension).
double lattice_inner(const LatticeField& a, const GridFunction& u);

/// (u, v)_H = h^d sum over interior nodes.
double inner_H(const GridFunction& u, const GridFunction& v);

/// (u, v)_V = sum over |alpha| <= m of the lattice pairing of D^alpha u
/// with D^alpha v. Contains the |alpha| = 0 term, so it dominates inner_H.
double inner_V(const GridFunction& u, const GridFunction& v, SobolevOrder m);

double norm_H(const GridFunction& u);
double norm_V(const GridFunction& u, SobolevOrder m);

/// Central difference (u(k+e) - u(k-e)) / 2h restricted to interior nodes;
/// equals the average of the two adjacent forward differences.
GridFunction central_diff_nodal(const GridFunction& u, int axis);

} // namespace itolab
