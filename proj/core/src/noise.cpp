#include "itolab/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace itolab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double to_unit_open(std::uint64_t x) {
    // (0, 1]: 53 mantissa bits, never zero so log() is safe
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

NoiseDriver::NoiseDriver(int channels, std::uint64_t master_seed, double dt_base, int level)
    : channels_(channels), seed_(master_seed), dt_base_(dt_base), level_(level) {
    if (channels_ < 0) throw std::invalid_argument("NoiseDriver: channels must be >= 0");
    if (!(dt_base_ > 0.0)) throw std::invalid_argument("NoiseDriver: dt must be > 0");
    if (level_ < 0 || level_ > 40) throw std::invalid_argument("NoiseDriver: bad level");
    dt_ = dt_base_ / static_cast<double>(1ULL << level_);
}

NoiseDriver NoiseDriver::refined() const {
    return NoiseDriver(channels_, seed_, dt_base_, level_ + 1);
}

NoiseDriver NoiseDriver::at_level(int level) const {
    return NoiseDriver(channels_, seed_, dt_base_, level);
}

double NoiseDriver::standard_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t level,
                                    std::uint64_t step, std::uint64_t channel) {
    std::uint64_t state = seed;
    (void)splitmix64(state);
    state ^= splitmix64(state) + 0x510e527fade682d1ULL * (path + 1);
    state ^= splitmix64(state) + 0x9b05688c2b3e6c1fULL * (level + 1);
    state ^= splitmix64(state) + 0x1f83d9abfb41bd6bULL * (step + 1);
    state ^= splitmix64(state) + 0x5be0cd19137e2179ULL * (channel + 1);
    const double u1 = to_unit_open(splitmix64(state));
    const double u2 = to_unit_open(splitmix64(state));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double NoiseDriver::increment(std::uint64_t path, std::uint64_t step, int channel) const {
    if (channel < 0 || channel >= channels_)
        throw std::invalid_argument("NoiseDriver::increment: bad channel");
    if (level_ == 0)
        return standard_normal(seed_, path, 0, step, channel) * std::sqrt(dt_);
    // bridge split of the parent increment: children w/2 +- xi, xi ~ N(0, dt/2)
    const NoiseDriver parent(channels_, seed_, dt_base_, level_ - 1);
    const double w = parent.increment(path, step / 2, channel);
    const double xi = standard_normal(seed_, path, level_, step / 2, channel) *
                      std::sqrt(0.5 * dt_);
    return step % 2 == 0 ? 0.5 * w + xi : 0.5 * w - xi;
}

std::vector<double> NoiseDriver::increments(std::uint64_t path, std::uint64_t step) const {
    std::vector<double> out(channels_);
    for (int k = 0; k < channels_; ++k) out[k] = increment(path, step, k);
    return out;
}

} // namespace itolab
