#include "itolab/stochastic.hpp"

#include <cmath>
#include <stdexcept>

#include "itolab/lattice.hpp"

namespace itolab {

void accumulate_ito(ItoAccumulator& acc, const GridFunction& h,
                    const std::vector<GridFunction>& sigma,
                    const std::vector<double>& dW, double dt) {
    if (sigma.size() != dW.size())
        throw std::invalid_argument("accumulate_ito: channel count mismatch");
    for (size_t k = 0; k < sigma.size(); ++k) {
        const double pairing = inner_H(h, sigma[k]);
        acc.integral += pairing * dW[k];
        acc.quadratic_variation += pairing * pairing * dt;
    }
    acc.steps += 1;
}

double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    out.n = static_cast<int>(xs.size());
    if (out.n == 0) return out;
    out.mean = compensated_sum(xs) / out.n;
    if (out.n < 2) return out;
    std::vector<double> sq(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = compensated_sum(sq) / (out.n - 1);
    out.stderr_ = std::sqrt(var / out.n);
    return out;
}

MomentCheckReport martingale_moment_check(const std::vector<ItoAccumulator>& paths) {
    if (paths.size() < 100)
        throw std::invalid_argument("martingale_moment_check: need at least 100 paths");
    MomentCheckReport rep;
    rep.paths = static_cast<int>(paths.size());

    std::vector<double> m(paths.size()), gap(paths.size());
    for (size_t i = 0; i < paths.size(); ++i) {
        m[i] = paths[i].integral;
        gap[i] = paths[i].integral * paths[i].integral - paths[i].quadratic_variation;
    }
    const MeanStderr sm = mean_stderr(m);
    const MeanStderr sg = mean_stderr(gap);
    rep.mean = sm.mean;
    rep.stderr_mean = sm.stderr_;
    rep.mean_qv_gap = sg.mean;
    rep.stderr_qv_gap = sg.stderr_;
    rep.mean_pass = std::abs(rep.mean) <= 3.0 * rep.stderr_mean;
    rep.qv_pass = std::abs(rep.mean_qv_gap) <= 3.0 * rep.stderr_qv_gap;
    return rep;
}

} // namespace itolab
