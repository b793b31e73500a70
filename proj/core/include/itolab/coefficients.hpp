#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "itolab/grid.hpp"

namespace itolab {

/// Deterministic coefficient field (t, x) -> value. An empty function is
/// treated as identically zero.
using ScalarField = std::function<double(double, const Coord&)>;

double eval_field(const ScalarField& f, double t, const Coord& x);

/// Parse a named built-in expression:
///   zero | constant:c | poly0:c0,c1,... | poly1:c0,c1,...
///   | sinprod:amp,k0[,k1]  (amp * sin(k0 pi x) [* sin(k1 pi y)])
ScalarField parse_field_expr(const std::string& expr);

/// Coefficients of the divergence-form equation
///
///   du = [ div(a grad u + a_lower u) + b . grad u + c u + f ] dt
///        + sum_k ( sigma^{.k} . grad u + nu^k u ) dw^k
///
/// in weak form. All fields are deterministic functions of (t, x); set
/// `time_dependent` when any of them varies in t so samplers know when a
/// cache is valid.
struct SPDECoefficients {
    int dim = 1;
    int channels = 0;
    std::array<std::array<ScalarField, kMaxDim>, kMaxDim> a{};  // a[i][j]
    std::array<ScalarField, kMaxDim> a_lower{};                 // a^i
    std::array<ScalarField, kMaxDim> b{};                       // b^i
    ScalarField c;
    ScalarField f;
    std::vector<std::array<ScalarField, kMaxDim>> sigma;        // sigma[k][i]
    std::vector<ScalarField> nu;                                // nu[k]
    double declared_bound = 1e6; // sup-norm bound all fields must respect
    bool time_dependent = false;

    void validate_shapes() const; // channel/dim consistency
};

struct AssumptionReport {
    double parabolicity_margin = 0.0;   // min over nodes of eig_min(2a - alpha)
    bool parabolicity_pass = false;
    double dissipativity_margin = 0.0;  // max over nodes of D_i eta^i + 2c + |nu|^2 - K
    double dissipativity_tolerance = 0.0;
    bool dissipativity_pass = false;
    double bound_max = 0.0;             // largest |field| seen
    bool bound_pass = false;
    double k_bound_max = 0.0;           // max of the K bound over nodes
};

/// Parabolicity: the symmetrized matrix 2a - alpha with
/// alpha^{ij} = sum_k sigma^{ik} sigma^{jk} must be positive semidefinite at
/// every node (degenerate margin 0 allowed).
AssumptionReport check_parabolicity(const SPDECoefficients& coeffs, const GridPtr& grid,
                                    double t = 0.0);

/// Dissipativity: with eta^i = a^i - b^i - (sigma^i, nu), require
/// D_i eta^i + 2c + |nu|^2 <= K pointwise, up to a discretization tolerance
/// proportional to h. D_i eta^i uses central differences of the sampled
/// field.
AssumptionReport check_dissipativity(const SPDECoefficients& coeffs, const GridPtr& grid,
                                     const ScalarField& k_bound, double t = 0.0,
                                     double tol_scale = 1.0);

/// Check every coefficient against the declared sup-norm bound at time t.
AssumptionReport check_boundedness(const SPDECoefficients& coeffs, const GridPtr& grid,
                                   double t = 0.0);

/// All three checks merged into one report.
AssumptionReport check_assumptions(const SPDECoefficients& coeffs, const GridPtr& grid,
                                   const ScalarField& k_bound, double t = 0.0);

} // namespace itolab
