#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "itolab/grid.hpp"
#include "itolab/spde.hpp"

namespace itolab {

/// Deterministic CSV emitter: '#' comment preamble, one column-name row,
/// then data rows. Doubles print with 17 significant digits so identical
/// runs produce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& line);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

    static std::string num(double x);
    static std::string num(int x);
    static std::string num(std::uint64_t x);
    static std::string flag(bool b);

private:
    std::ofstream out_;
};

/// Standard preamble: tool line plus config hash, seed, rng and scheme ids.
void write_run_preamble(CsvWriter& csv, const std::string& subcommand,
                        std::uint64_t config_hash, std::uint64_t seed,
                        const std::string& rng_id, const std::string& scheme,
                        int paths, int workers);

/// (coordinates, value) rows for a grid function.
void write_grid_function_csv(CsvWriter& csv, const GridFunction& u);

/// (path, t, node, value) rows.
void write_trajectory_csv(CsvWriter& csv, const Trajectory& traj);

/// (path, t, norm_H, norm_V, norm_plus_H) rows.
void write_diagnostics_csv(CsvWriter& csv, const Trajectory& traj);

} // namespace itolab
