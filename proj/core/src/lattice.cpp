#include "itolab/lattice.hpp"

#include <cmath>
#include <algorithm>

namespace itolab {

LatticeField::LatticeField(GridPtr grid, LatticeCoord lo, LatticeCoord hi)
    : grid_(std::move(grid)), lo_(lo), hi_(hi) {
    nx_ = hi_[0] - lo_[0] + 1;
    const int ny = grid_->dim() == 2 ? hi_[1] - lo_[1] + 1 : 1;
    data_.assign(static_cast<size_t>(nx_) * ny, 0.0);
}

bool LatticeField::contains(const LatticeCoord& k) const {
    for (int ax = 0; ax < grid_->dim(); ++ax)
        if (k[ax] < lo_[ax] || k[ax] > hi_[ax]) return false;
    return true;
}

double LatticeField::at(const LatticeCoord& k) const {
    if (!contains(k)) return 0.0;
    const int row = grid_->dim() == 2 ? k[1] - lo_[1] : 0;
    return data_[static_cast<size_t>(row) * nx_ + (k[0] - lo_[0])];
}

double& LatticeField::ref(const LatticeCoord& k) {
    const int row = grid_->dim() == 2 ? k[1] - lo_[1] : 0;
    return data_[static_cast<size_t>(row) * nx_ + (k[0] - lo_[0])];
}

LatticeField& LatticeField::operator+=(const LatticeField& other) {
    if (lo_ != other.lo_ || hi_ != other.hi_)
        throw std::invalid_argument("LatticeField::operator+=: window mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

LatticeField& LatticeField::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

namespace {

template <typename Fn>
void for_each_coord(const LatticeField& f, Fn&& fn) {
    LatticeCoord k{0, 0};
    if (f.dim() == 1) {
        for (k[0] = f.lo()[0]; k[0] <= f.hi()[0]; ++k[0]) fn(k);
    } else {
        for (k[1] = f.lo()[1]; k[1] <= f.hi()[1]; ++k[1])
            for (k[0] = f.lo()[0]; k[0] <= f.hi()[0]; ++k[0]) fn(k);
    }
}

} // namespace

LatticeField scatter(const GridFunction& u) {
    const GridPtr& g = u.grid();
    LatticeCoord lo{0, 0};
    LatticeCoord hi{g->extent(0), g->dim() == 2 ? g->extent(1) : 0};
    LatticeField f(g, lo, hi);
    for (int i = 0; i < u.size(); ++i) f.ref(g->lattice_of(i)) = u[i];
    return f;
}

GridFunction gather(const LatticeField& f, const GridPtr& grid) {
    GridFunction u(grid);
    for (int i = 0; i < u.size(); ++i) u[i] = f.at(grid->lattice_of(i));
    return u;
}

LatticeField forward_diff(const LatticeField& f, int axis) {
    if (axis < 0 || axis >= f.dim())
        throw std::invalid_argument("forward_diff: axis out of range");
    LatticeCoord lo = f.lo();
    lo[axis] -= 1; // support of the quotient reaches one step back
    LatticeField out(f.grid(), lo, f.hi());
    const double inv_h = 1.0 / f.grid()->mesh();
    for_each_coord(out, [&](const LatticeCoord& k) {
        LatticeCoord kp = k;
        kp[axis] += 1;
        out.ref(k) = (f.at(kp) - f.at(k)) * inv_h;
    });
    return out;
}

LatticeField forward_diff(const GridFunction& u, int axis) {
    return forward_diff(scatter(u), axis);
}

LatticeField backward_diff(const LatticeField& f, int axis) {
    if (axis < 0 || axis >= f.dim())
        throw std::invalid_argument("backward_diff: axis out of range");
    LatticeCoord hi = f.hi();
    hi[axis] += 1;
    LatticeField out(f.grid(), f.lo(), hi);
    const double inv_h = 1.0 / f.grid()->mesh();
    for_each_coord(out, [&](const LatticeCoord& k) {
        LatticeCoord km = k;
        km[axis] -= 1;
        out.ref(k) = (f.at(k) - f.at(km)) * inv_h;
    });
    return out;
}

LatticeField backward_diff(const GridFunction& u, int axis) {
    return backward_diff(scatter(u), axis);
}

LatticeField diff_alpha(const LatticeField& f, const MultiIndex& alpha) {
    LatticeField out = f;
    for (int ax = 0; ax < f.dim(); ++ax)
        for (int rep = 0; rep < alpha.a[ax]; ++rep) out = forward_diff(out, ax);
    return out;
}

LatticeField diff_alpha(const GridFunction& u, const MultiIndex& alpha, SobolevOrder limit) {
    if (alpha.order() > limit.m)
        throw OrderTooHigh("diff_alpha: |alpha| exceeds the active Sobolev order");
    return diff_alpha(scatter(u), alpha);
}

double lattice_inner(const LatticeField& a, const LatticeField& b) {
    if (a.grid() != b.grid())
        throw GridMismatch("lattice_inner: fields on different grids");
    LatticeCoord lo{0, 0}, hi{0, 0};
    for (int ax = 0; ax < a.dim(); ++ax) {
        lo[ax] = std::max(a.lo()[ax], b.lo()[ax]);
        hi[ax] = std::min(a.hi()[ax], b.hi()[ax]);
        if (lo[ax] > hi[ax]) return 0.0;
    }
    double sum = 0.0;
    LatticeCoord k{0, 0};
    if (a.dim() == 1) {
        for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) sum += a.at(k) * b.at(k);
    } else {
        for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
            for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) sum += a.at(k) * b.at(k);
    }
    return sum * a.grid()->cell_volume();
}

double lattice_inner(const LatticeField& a, const GridFunction& u) {
    if (a.grid() != u.grid())
        throw GridMismatch("lattice_inner: field and function on different grids");
    double sum = 0.0;
    const GridPtr& g = u.grid();
    for (int i = 0; i < u.size(); ++i) sum += a.at(g->lattice_of(i)) * u[i];
    return sum * g->cell_volume();
}

double inner_H(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    double sum = 0.0;
    for (int i = 0; i < u.size(); ++i) sum += u[i] * v[i];
    return sum * u.grid()->cell_volume();
}

double inner_V(const GridFunction& u, const GridFunction& v, SobolevOrder m) {
    require_same_grid(u, v);
    double sum = inner_H(u, v);
    const LatticeField su = scatter(u);
    const LatticeField sv = scatter(v);
    for (const MultiIndex& alpha : multi_indices_up_to(u.grid()->dim(), m.m)) {
        if (alpha.order() == 0) continue;
        sum += lattice_inner(diff_alpha(su, alpha), diff_alpha(sv, alpha));
    }
    return sum;
}

double norm_H(const GridFunction& u) { return std::sqrt(inner_H(u, u)); }

double norm_V(const GridFunction& u, SobolevOrder m) { return std::sqrt(inner_V(u, u, m)); }

GridFunction central_diff_nodal(const GridFunction& u, int axis) {
    const GridPtr& g = u.grid();
    GridFunction out(g);
    const double inv_2h = 0.5 / g->mesh();
    for (int i = 0; i < u.size(); ++i) {
        LatticeCoord kp = g->lattice_of(i), km = g->lattice_of(i);
        kp[axis] += 1;
        km[axis] -= 1;
        out[i] = (u.at_lattice(kp) - u.at_lattice(km)) * inv_2h;
    }
    return out;
}

} // namespace itolab
