#pragma once

#include <functional>
#include <string>

#include "itolab/grid.hpp"

namespace itolab {

/// Integrand r of the functional phi(u) = h^d sum r(u(x)) together with its
/// first two derivatives and the shared growth constant N:
///   |r(x)| <= N x^2, |r'(x)| <= N |x|, |r''| <= N, r(0) = r'(0) = 0.
/// For non-smooth members (the positive-part square) r'' is the
/// left-continuous modification, so r''(0) = 0.
struct FunctionalR {
    std::string name;
    std::function<double(double)> r;
    std::function<double(double)> r1; // r'
    std::function<double(double)> r2; // r'' (left-continuous)
    double growth = 0.0;              // the constant N
    bool smooth = false;              // true when r is C^2

    /// r(x) = x^2: phi is the squared H norm scaled by nothing.
    static FunctionalR quadratic();
    /// r(x) = (x^+)^2 with r'' = 2 * 1_{x > 0}.
    static FunctionalR positive_part_squared();
    /// Infinitely smooth member of the same class approximating (x^+)^2,
    /// with bounds uniform in eps.
    static FunctionalR mollified_positive_part(double eps);

    /// Check r(0) = r'(0) = 0 and the three growth bounds on sample points
    /// spanning [-10 N, 10 N]; returns the largest bound violation.
    double validate(int samples = 2001) const;
};

/// phi(u) = h^d sum_x r(u(x)).
double phi_value(const FunctionalR& r, const GridFunction& u);

/// Nodal gradient x -> r'(u(x)).
GridFunction phi_grad(const FunctionalR& r, const GridFunction& u);

/// Second directional derivative h^d sum r''(u(x)) xi(x)^2.
double phi_hess_dir(const FunctionalR& r, const GridFunction& u, const GridFunction& xi);

} // namespace itolab
