#include "itolab/coefficients.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace itolab {

double eval_field(const ScalarField& f, double t, const Coord& x) {
    return f ? f(t, x) : 0.0;
}

namespace {

std::vector<double> parse_numbers(const std::string& list, const std::string& expr) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in field expression '" + expr + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty parameter list in field expression '" + expr + "'");
    return out;
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

ScalarField parse_field_expr(const std::string& expr) {
    if (expr.empty() || expr == "zero") return ScalarField{};
    const auto colon = expr.find(':');
    const std::string head = expr.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : expr.substr(colon + 1);

    if (head == "constant") {
        const auto v = parse_numbers(args, expr);
        if (v.size() != 1) throw ConfigError("constant takes one parameter: " + expr);
        const double c = v[0];
        return [c](double, const Coord&) { return c; };
    }
    if (head == "poly0" || head == "poly1") {
        const int axis = head == "poly0" ? 0 : 1;
        const auto cs = parse_numbers(args, expr);
        return [cs, axis](double, const Coord& x) {
            double acc = 0.0;
            for (size_t i = cs.size(); i-- > 0;) acc = acc * x[axis] + cs[i];
            return acc;
        };
    }
    if (head == "sinprod") {
        const auto v = parse_numbers(args, expr);
        if (v.size() < 2 || v.size() > 3)
            throw ConfigError("sinprod takes amp,k0[,k1]: " + expr);
        const double amp = v[0], k0 = v[1];
        const double k1 = v.size() == 3 ? v[2] : 0.0;
        return [amp, k0, k1](double, const Coord& x) {
            double r = amp * std::sin(k0 * kPi * x[0]);
            if (k1 != 0.0) r *= std::sin(k1 * kPi * x[1]);
            return r;
        };
    }
    throw ConfigError("unknown field expression '" + expr + "'");
}

void SPDECoefficients::validate_shapes() const {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("SPDECoefficients: dim must be 1 or 2");
    if (channels < 0) throw std::invalid_argument("SPDECoefficients: channels must be >= 0");
    if (static_cast<int>(sigma.size()) != channels || static_cast<int>(nu.size()) != channels)
        throw std::invalid_argument("SPDECoefficients: sigma/nu size must equal channel count");
}

namespace {

// smallest eigenvalue of the symmetric part of a d x d matrix, d <= 2
double eig_min_sym(const std::array<std::array<double, kMaxDim>, kMaxDim>& m, int dim) {
    if (dim == 1) return m[0][0];
    const double p = m[0][0], r = m[1][1];
    const double q = 0.5 * (m[0][1] + m[1][0]);
    const double mid = 0.5 * (p + r);
    const double rad = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
    return mid - rad;
}

} // namespace

AssumptionReport check_parabolicity(const SPDECoefficients& coeffs, const GridPtr& grid,
                                    double t) {
    coeffs.validate_shapes();
    AssumptionReport rep;
    double margin = std::numeric_limits<double>::infinity();
    for (int node = 0; node < grid->num_nodes(); ++node) {
        const Coord x = grid->position_of(node);
        std::array<std::array<double, kMaxDim>, kMaxDim> m{};
        for (int i = 0; i < coeffs.dim; ++i)
            for (int j = 0; j < coeffs.dim; ++j) {
                double alpha_ij = 0.0;
                for (int k = 0; k < coeffs.channels; ++k)
                    alpha_ij += eval_field(coeffs.sigma[k][i], t, x) *
                                eval_field(coeffs.sigma[k][j], t, x);
                m[i][j] = 2.0 * eval_field(coeffs.a[i][j], t, x) - alpha_ij;
            }
        margin = std::min(margin, eig_min_sym(m, coeffs.dim));
    }
    rep.parabolicity_margin = margin;
    rep.parabolicity_pass = margin >= -1e-12;
    return rep;
}

AssumptionReport check_dissipativity(const SPDECoefficients& coeffs, const GridPtr& grid,
                                     const ScalarField& k_bound, double t, double tol_scale) {
    coeffs.validate_shapes();
    AssumptionReport rep;
    const double h = grid->mesh();
    auto eta = [&](int i, const Coord& x) {
        double v = eval_field(coeffs.a_lower[i], t, x) - eval_field(coeffs.b[i], t, x);
        for (int k = 0; k < coeffs.channels; ++k)
            v -= eval_field(coeffs.sigma[k][i], t, x) * eval_field(coeffs.nu[k], t, x);
        return v;
    };
    double margin = -std::numeric_limits<double>::infinity();
    double k_max = -std::numeric_limits<double>::infinity();
    for (int node = 0; node < grid->num_nodes(); ++node) {
        const Coord x = grid->position_of(node);
        double lhs = 0.0;
        for (int i = 0; i < coeffs.dim; ++i) {
            Coord xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            lhs += (eta(i, xp) - eta(i, xm)) / (2.0 * h);
        }
        lhs += 2.0 * eval_field(coeffs.c, t, x);
        for (int k = 0; k < coeffs.channels; ++k) {
            const double nu_k = eval_field(coeffs.nu[k], t, x);
            lhs += nu_k * nu_k;
        }
        const double k_here = eval_field(k_bound, t, x);
        k_max = std::max(k_max, k_here);
        margin = std::max(margin, lhs - k_here);
    }
    rep.dissipativity_margin = margin;
    rep.dissipativity_tolerance = tol_scale * h + 1e-9;
    rep.dissipativity_pass = margin <= rep.dissipativity_tolerance;
    rep.k_bound_max = k_max;
    return rep;
}

AssumptionReport check_boundedness(const SPDECoefficients& coeffs, const GridPtr& grid,
                                   double t) {
    coeffs.validate_shapes();
    AssumptionReport rep;
    double biggest = 0.0;
    auto scan = [&](const ScalarField& f) {
        if (!f) return;
        for (int node = 0; node < grid->num_nodes(); ++node)
            biggest = std::max(biggest, std::abs(f(t, grid->position_of(node))));
    };
    for (int i = 0; i < coeffs.dim; ++i) {
        for (int j = 0; j < coeffs.dim; ++j) scan(coeffs.a[i][j]);
        scan(coeffs.a_lower[i]);
        scan(coeffs.b[i]);
    }
    scan(coeffs.c);
    for (int k = 0; k < coeffs.channels; ++k) {
        for (int i = 0; i < coeffs.dim; ++i) scan(coeffs.sigma[k][i]);
        scan(coeffs.nu[k]);
    }
    rep.bound_max = biggest;
    rep.bound_pass = biggest <= coeffs.declared_bound;
    return rep;
}

AssumptionReport check_assumptions(const SPDECoefficients& coeffs, const GridPtr& grid,
                                   const ScalarField& k_bound, double t) {
    AssumptionReport rep = check_parabolicity(coeffs, grid, t);
    const AssumptionReport d = check_dissipativity(coeffs, grid, k_bound, t);
    const AssumptionReport b = check_boundedness(coeffs, grid, t);
    rep.dissipativity_margin = d.dissipativity_margin;
    rep.dissipativity_tolerance = d.dissipativity_tolerance;
    rep.dissipativity_pass = d.dissipativity_pass;
    rep.k_bound_max = d.k_bound_max;
    rep.bound_max = b.bound_max;
    rep.bound_pass = b.bound_pass;
    return rep;
}

} // namespace itolab
