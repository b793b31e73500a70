#include "itolab/csvio.hpp"

#include <cstdio>

#include "itolab/config.hpp"

namespace itolab {

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::columns(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << "\n";
}

std::string CsvWriter::num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

std::string CsvWriter::num(int x) { return std::to_string(x); }

std::string CsvWriter::num(std::uint64_t x) { return std::to_string(x); }

std::string CsvWriter::flag(bool b) { return b ? "1" : "0"; }

void write_run_preamble(CsvWriter& csv, const std::string& subcommand,
                        std::uint64_t config_hash, std::uint64_t seed,
                        const std::string& rng_id, const std::string& scheme,
                        int paths, int workers) {
    csv.comment("itolab " + subcommand);
    csv.comment("config_hash=" + format_hash(config_hash) + " seed=" + std::to_string(seed) +
                " rng=" + rng_id + " scheme=" + scheme + " paths=" + std::to_string(paths) +
                " workers=" + std::to_string(workers));
}

void write_grid_function_csv(CsvWriter& csv, const GridFunction& u) {
    const GridPtr& g = u.grid();
    if (g->dim() == 1) {
        csv.columns({"x0", "value"});
        for (int i = 0; i < u.size(); ++i)
            csv.row({CsvWriter::num(g->position_of(i)[0]), CsvWriter::num(u[i])});
    } else {
        csv.columns({"x0", "x1", "value"});
        for (int i = 0; i < u.size(); ++i) {
            const Coord x = g->position_of(i);
            csv.row({CsvWriter::num(x[0]), CsvWriter::num(x[1]), CsvWriter::num(u[i])});
        }
    }
}

void write_trajectory_csv(CsvWriter& csv, const Trajectory& traj) {
    csv.columns({"path", "t", "node", "value"});
    for (size_t n = 0; n < traj.states.size(); ++n)
        for (int i = 0; i < traj.states[n].size(); ++i)
            csv.row({CsvWriter::num(traj.path), CsvWriter::num(traj.times[n]),
                     CsvWriter::num(i), CsvWriter::num(traj.states[n][i])});
}

void write_diagnostics_csv(CsvWriter& csv, const Trajectory& traj) {
    csv.columns({"path", "t", "norm_H", "norm_V", "norm_plus_H"});
    for (size_t n = 0; n < traj.diagnostics.size(); ++n)
        csv.row({CsvWriter::num(traj.path), CsvWriter::num(traj.times[n]),
                 CsvWriter::num(traj.diagnostics[n].norm_h),
                 CsvWriter::num(traj.diagnostics[n].norm_v),
                 CsvWriter::num(traj.diagnostics[n].norm_plus_h)});
}

} // namespace itolab
