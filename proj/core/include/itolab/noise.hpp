#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace itolab {

/// Deterministic source of Wiener increments for K channels.
///
/// Every increment is a pure function of (master seed, path, level, step,
/// channel) through a counter-based generator, so Monte Carlo results are
/// independent of scheduling and identical across reruns and worker counts.
///
/// Refinement halves the time step while keeping the underlying Brownian
/// path: the two child increments of a parent step are obtained by a
/// Brownian-bridge midpoint split. This gives common random numbers across
/// a dt ladder.
class NoiseDriver {
public:
    NoiseDriver(int channels, std::uint64_t master_seed, double dt_base, int level = 0);

    int channels() const { return channels_; }
    std::uint64_t master_seed() const { return seed_; }
    double dt() const { return dt_; }
    double dt_base() const { return dt_base_; }
    int level() const { return level_; }
    static std::string rng_id() { return "splitmix64-boxmuller-bridge-v1"; }

    /// One refinement level deeper on the same Brownian path (dt halved).
    NoiseDriver refined() const;
    NoiseDriver at_level(int level) const;

    /// The K increments of step `step` (at this driver's dt) for a path.
    std::vector<double> increments(std::uint64_t path, std::uint64_t step) const;

    /// Single-channel access used by the recursion and by tests.
    double increment(std::uint64_t path, std::uint64_t step, int channel) const;

    /// Standard normal variate addressed by the full counter; exposed for
    /// distribution tests.
    static double standard_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t level,
                                  std::uint64_t step, std::uint64_t channel);

private:
    int channels_;
    std::uint64_t seed_;
    double dt_base_;
    double dt_;
    int level_;
};

} // namespace itolab
