#pragma once

#include <vector>

#include "itolab/grid.hpp"
#include "itolab/noise.hpp"

namespace itolab {

/// Running scalar Ito integral sum_k int (h, sigma^k)_H dw^k together with
/// its quadratic variation compensator. Both start at zero.
struct ItoAccumulator {
    double integral = 0.0;
    double quadratic_variation = 0.0;
    int steps = 0;
};

/// Advance the accumulator by one step: the integral gains
/// sum_k (h, sigma^k)_H dW^k and the quadratic variation gains
/// sum_k (h, sigma^k)_H^2 dt.
void accumulate_ito(ItoAccumulator& acc, const GridFunction& h,
                    const std::vector<GridFunction>& sigma,
                    const std::vector<double>& dW, double dt);

struct MomentCheckReport {
    int paths = 0;
    double mean = 0.0;             // mean of M_T
    double stderr_mean = 0.0;
    double mean_qv_gap = 0.0;      // mean of M_T^2 - <M>_T
    double stderr_qv_gap = 0.0;
    bool mean_pass = false;        // |mean| <= 3 stderr
    bool qv_pass = false;          // |mean qv gap| <= 3 stderr
    bool pass() const { return mean_pass && qv_pass; }
};

/// Martingale moment check over terminal accumulators of N >= 100 paths:
/// the mean must vanish and the second moment must match the quadratic
/// variation, both within three standard errors.
MomentCheckReport martingale_moment_check(const std::vector<ItoAccumulator>& paths);

/// Compensated (Kahan) sum; used everywhere ensemble statistics must be
/// independent of reduction order.
double compensated_sum(const std::vector<double>& xs);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

} // namespace itolab
