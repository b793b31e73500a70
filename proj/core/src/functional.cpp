#include "itolab/functional.hpp"

#include <cmath>

namespace itolab {

FunctionalR FunctionalR::quadratic() {
    FunctionalR f;
    f.name = "quadratic";
    f.r = [](double x) { return x * x; };
    f.r1 = [](double x) { return 2.0 * x; };
    f.r2 = [](double) { return 2.0; };
    f.growth = 2.0;
    f.smooth = true;
    return f;
}

FunctionalR FunctionalR::positive_part_squared() {
    FunctionalR f;
    f.name = "positive-part-squared";
    f.r = [](double x) { return x > 0.0 ? x * x : 0.0; };
    f.r1 = [](double x) { return x > 0.0 ? 2.0 * x : 0.0; };
    f.r2 = [](double x) { return x > 0.0 ? 2.0 : 0.0; }; // left continuous at 0
    f.growth = 2.0;
    f.smooth = false;
    return f;
}

namespace {

// C^infinity step: 0 for y <= 0, 1 for y >= 1, strictly increasing between
double smooth_step(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / y);
    const double b = std::exp(-1.0 / (1.0 - y));
    return a / (a + b);
}

double simpson(const std::function<double(double)>& f, double a, double b) {
    const int n = 128;
    const double step = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * step);
    return acc * step / 3.0;
}

} // namespace

FunctionalR FunctionalR::mollified_positive_part(double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("mollified_positive_part: eps must be > 0");
    FunctionalR f;
    f.name = "mollified-positive-part";
    // r'' ramps 0 -> 2 across (0, eps); integrating twice keeps r' and r
    // below the sharp positive-part member, so N = 2 uniformly in eps.
    std::function<double(double)> r2 = [eps](double x) { return 2.0 * smooth_step(x / eps); };
    const double r1_at_eps = simpson(r2, 0.0, eps);
    std::function<double(double)> r1 = [eps, r2, r1_at_eps](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= eps) return r1_at_eps + 2.0 * (x - eps);
        return simpson(r2, 0.0, x);
    };
    const double r_at_eps = simpson(r1, 0.0, eps);
    std::function<double(double)> r = [eps, r1, r_at_eps, r1_at_eps](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= eps) {
            const double y = x - eps;
            return r_at_eps + r1_at_eps * y + y * y;
        }
        return simpson(r1, 0.0, x);
    };
    f.r2 = std::move(r2);
    f.r1 = std::move(r1);
    f.r = std::move(r);
    f.growth = 2.0;
    f.smooth = true;
    return f;
}

double FunctionalR::validate(int samples) const {
    double worst = std::max(std::abs(r(0.0)), std::abs(r1(0.0)));
    const double span = 10.0 * growth;
    for (int i = 0; i < samples; ++i) {
        const double x = -span + 2.0 * span * i / (samples - 1);
        worst = std::max(worst, std::abs(r(x)) - growth * x * x);
        worst = std::max(worst, std::abs(r1(x)) - growth * std::abs(x));
        worst = std::max(worst, std::abs(r2(x)) - growth);
    }
    return worst;
}

double phi_value(const FunctionalR& r, const GridFunction& u) {
    double sum = 0.0;
    for (int i = 0; i < u.size(); ++i) sum += r.r(u[i]);
    return sum * u.grid()->cell_volume();
}

GridFunction phi_grad(const FunctionalR& r, const GridFunction& u) {
    GridFunction out(u.grid());
    for (int i = 0; i < u.size(); ++i) out[i] = r.r1(u[i]);
    return out;
}

double phi_hess_dir(const FunctionalR& r, const GridFunction& u, const GridFunction& xi) {
    require_same_grid(u, xi);
    double sum = 0.0;
    for (int i = 0; i < u.size(); ++i) sum += r.r2(u[i]) * xi[i] * xi[i];
    return sum * u.grid()->cell_volume();
}

} // namespace itolab
