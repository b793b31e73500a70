#include "itolab/grid.hpp"

#include <cmath>
#include <sstream>

namespace itolab {

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
    std::vector<MultiIndex> out;
    if (dim == 1) {
        for (int a0 = 0; a0 <= max_order; ++a0) out.emplace_back(a0, 1);
    } else {
        for (int total = 0; total <= max_order; ++total)
            for (int a0 = total; a0 >= 0; --a0) out.emplace_back(a0, total - a0, 2);
    }
    return out;
}

std::shared_ptr<const Grid> Grid::build(const GridSpec& spec) {
    if (spec.dim < 1 || spec.dim > kMaxDim)
        throw std::invalid_argument("Grid::build: dim must be 1 or 2");
    if (!(spec.h > 0.0)) throw std::invalid_argument("Grid::build: mesh width must be > 0");

    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->dim_ = spec.dim;
    grid->lo_ = spec.lo;
    grid->hi_ = spec.hi;
    grid->h_ = spec.h;
    grid->volume_ = spec.dim == 1 ? spec.h : spec.h * spec.h;

    int total = 1;
    for (int ax = 0; ax < spec.dim; ++ax) {
        const double span = spec.hi[ax] - spec.lo[ax];
        if (!(span > 0.0)) throw std::invalid_argument("Grid::build: empty box");
        const int n = static_cast<int>(std::llround(span / spec.h));
        if (n < 2 || std::abs(n * spec.h - span) > 1e-9 * span)
            throw std::invalid_argument("Grid::build: box span must be an integer multiple (>= 2) of h");
        grid->extent_[ax] = n;
        total *= n + 1;
    }

    grid->node_index_.assign(total, -1);
    const int n0 = grid->extent_[0];
    const int n1 = spec.dim == 2 ? grid->extent_[1] : 0;
    for (int k1 = 0; k1 <= n1; ++k1) {
        for (int k0 = 0; k0 <= n0; ++k0) {
            // strictly inside the box; boundary lattice nodes are never dofs
            const bool inside = k0 > 0 && k0 < n0 && (spec.dim == 1 || (k1 > 0 && k1 < n1));
            if (!inside) continue;
            LatticeCoord k{k0, k1};
            if (spec.indicator && !spec.indicator(grid->position_at(k))) continue;
            grid->node_index_[grid->flat_lattice(k)] = static_cast<int>(grid->nodes_.size());
            grid->nodes_.push_back(k);
        }
    }
    if (grid->nodes_.empty())
        throw EmptyInterior("Grid::build: no interior node satisfies the domain indicator");
    return grid;
}

int Grid::flat_lattice(const LatticeCoord& k) const {
    return dim_ == 1 ? k[0] : k[1] * (extent_[0] + 1) + k[0];
}

bool Grid::is_interior(const LatticeCoord& k) const { return node_at(k) >= 0; }

int Grid::node_at(const LatticeCoord& k) const {
    for (int ax = 0; ax < dim_; ++ax)
        if (k[ax] < 0 || k[ax] > extent_[ax]) return -1;
    return node_index_[flat_lattice(k)];
}

Coord Grid::position_of(int node) const { return position_at(nodes_[node]); }

Coord Grid::position_at(const LatticeCoord& k) const {
    Coord x{0.0, 0.0};
    for (int ax = 0; ax < dim_; ++ax) x[ax] = lo_[ax] + k[ax] * h_;
    return x;
}

GridPtr build_grid(const GridSpec& spec) { return Grid::build(spec); }

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_->num_nodes())
        throw std::invalid_argument("GridFunction: value count does not match grid");
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(const Coord&)>& f) {
    GridFunction u(grid);
    for (int i = 0; i < u.size(); ++i) u[i] = f(grid->position_of(i));
    return u;
}

double GridFunction::at_lattice(const LatticeCoord& k) const {
    const int node = grid_->node_at(k);
    return node >= 0 ? values_[node] : 0.0;
}

bool GridFunction::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (int i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (int i = 0; i < size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridFunction& GridFunction::axpy(double s, const GridFunction& other) {
    require_same_grid(*this, other);
    for (int i = 0; i < size(); ++i) values_[i] += s * other.values_[i];
    return *this;
}

GridFunction GridFunction::positive_part() const {
    GridFunction out(grid_);
    for (int i = 0; i < size(); ++i) out[i] = values_[i] > 0.0 ? values_[i] : 0.0;
    return out;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid() != b.grid())
        throw GridMismatch("grid functions live on different grids");
}

} // namespace itolab
