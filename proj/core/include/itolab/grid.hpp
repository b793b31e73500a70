#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "itolab/errors.hpp"

namespace itolab {

inline constexpr int kMaxDim = 2;

using Coord = std::array<double, kMaxDim>;
using LatticeCoord = std::array<int, kMaxDim>;

/// Multi-index alpha = (alpha_1, ..., alpha_d) of a composed difference
/// operator; order() is |alpha|.
struct MultiIndex {
    std::array<int, kMaxDim> a{0, 0};
    int dim = 1;

    MultiIndex() = default;
    MultiIndex(int a0, int dim_) : a{a0, 0}, dim(dim_) {}
    MultiIndex(int a0, int a1, int dim_) : a{a0, a1}, dim(dim_) {}

    int order() const { return a[0] + a[1]; }
};

/// All multi-indices with |alpha| <= max_order in `dim` dimensions, the
/// |alpha| = 0 index first.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order);

/// Order m >= 1 of the discrete zero-trace Sobolev space carried by a grid.
struct SobolevOrder {
    int m;
    explicit SobolevOrder(int m_) : m(m_) {
        if (m < 1) throw std::invalid_argument("SobolevOrder: m must be >= 1");
    }
};

/// Descriptor for build_grid: an axis-aligned box, a mesh width, and an
/// optional indicator selecting the open set G inside the box. Lattice nodes
/// strictly inside the box whose indicator is true become the interior
/// degrees of freedom; everything else carries an implicit zero value.
struct GridSpec {
    int dim = 1;
    Coord lo{0.0, 0.0};
    Coord hi{1.0, 1.0};
    double h = 0.0;
    std::function<bool(const Coord&)> indicator; // empty = all of the box
};

/// Uniform lattice over a box with an interior-point mask.
///
/// Lattice coordinates k index the nodes x = lo + k*h componentwise with
/// k in [0, extent(axis)]. Interior nodes (the degrees of freedom) are
/// numbered 0..num_nodes()-1 in lexicographic scan order, last axis slowest.
/// Grids are immutable; share them via shared_ptr.
class Grid {
public:
    static std::shared_ptr<const Grid> build(const GridSpec& spec);

    int dim() const { return dim_; }
    double mesh() const { return h_; }
    double cell_volume() const { return volume_; }
    const Coord& lower() const { return lo_; }
    const Coord& upper() const { return hi_; }

    /// Largest lattice coordinate along an axis (nodes 0..extent inclusive).
    int extent(int axis) const { return extent_[axis]; }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }

    bool is_interior(const LatticeCoord& k) const;
    /// Interior node index for lattice coordinate k, or -1.
    int node_at(const LatticeCoord& k) const;
    const LatticeCoord& lattice_of(int node) const { return nodes_[node]; }
    Coord position_of(int node) const;
    Coord position_at(const LatticeCoord& k) const;

private:
    Grid() = default;

    int dim_ = 1;
    Coord lo_{0.0, 0.0};
    Coord hi_{1.0, 1.0};
    double h_ = 0.0;
    double volume_ = 0.0;
    std::array<int, kMaxDim> extent_{0, 0};
    std::vector<int> node_index_;        // per lattice node, -1 if not interior
    std::vector<LatticeCoord> nodes_;    // interior node -> lattice coordinate

    int flat_lattice(const LatticeCoord& k) const;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Build a grid from a descriptor. Throws EmptyInterior if no lattice node
/// qualifies.
GridPtr build_grid(const GridSpec& spec);

/// Nodal values on the interior nodes of a grid; evaluation anywhere else is
/// zero by convention (zero/Dirichlet extension).
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(GridPtr grid)
        : grid_(std::move(grid)), values_(grid_->num_nodes(), 0.0) {}
    GridFunction(GridPtr grid, std::vector<double> values);

    static GridFunction zeros(GridPtr grid) { return GridFunction(std::move(grid)); }
    /// Sample a function of position on the interior nodes.
    static GridFunction sample(GridPtr grid, const std::function<double(const Coord&)>& f);

    const GridPtr& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }

    double& operator[](int node) { return values_[node]; }
    double operator[](int node) const { return values_[node]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Value at a lattice coordinate: the nodal value on interior nodes and
    /// zero everywhere else.
    double at_lattice(const LatticeCoord& k) const;

    bool all_finite() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s);
    /// this += s * other
    GridFunction& axpy(double s, const GridFunction& other);

    /// Pointwise positive part max(u, 0).
    GridFunction positive_part() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

/// Throws GridMismatch unless both functions live on the same grid object.
void require_same_grid(const GridFunction& a, const GridFunction& b);

} // namespace itolab
