#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "itolab/coefficients.hpp"
#include "itolab/spde.hpp"

namespace itolab {

/// Plain-text run configuration: `[section]` headers and `key = value`
/// lines, '#' comments. Values are kept verbatim; typed accessors parse on
/// demand and throw ConfigError with the offending key.
class RunConfig {
public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;                       // throws if absent
    std::string get_or(const std::string& key, const std::string& def) const;
    void set(const std::string& key, const std::string& value);          // CLI overrides

    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double def) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int def) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    /// Canonical "key=value" serialization, sorted by key.
    std::string normalized() const;
    /// FNV-1a hash of the normalized text.
    std::uint64_t hash() const;

    // --- typed views of the standard sections ---
    GridSpec grid_spec() const;          // [grid]
    SobolevOrder sobolev_order() const;  // grid.m, default 1
    SPDECoefficients coefficients() const; // [problem]
    ScalarField initial_condition() const; // problem.u0
    ScalarField k_bound() const;           // run.k_bound

    double total_time() const;              // run.T
    std::vector<double> dt_list() const;    // run.dt_list, strictly decreasing
    std::uint64_t seed() const;             // run.seed, required
    int paths() const;                      // run.paths
    int workers() const;                    // run.workers, default 1
    Scheme scheme() const;                  // run.scheme, default semi-implicit
    std::vector<double> lambda_list() const;
    std::vector<double> n_list() const;
    int sample_count() const;               // run.samples, default 20
    CgOptions solver_options() const;       // run.solver_tol / run.solver_cap

    /// Shared invariants: seed present, dt list strictly decreasing,
    /// coefficient expressions resolvable.
    void validate() const;

private:
    std::map<std::string, std::string> kv_;
};

std::string format_hash(std::uint64_t h);

} // namespace itolab
