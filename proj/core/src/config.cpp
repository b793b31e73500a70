#include "itolab/config.hpp"

#include <fstream>
#include <sstream>

namespace itolab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& def) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

void RunConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

double RunConfig::get_double(const std::string& key) const {
    try {
        size_t used = 0;
        const std::string v = get(key);
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number");
    }
}

double RunConfig::get_double_or(const std::string& key, double def) const {
    return has(key) ? get_double(key) : def;
}

int RunConfig::get_int(const std::string& key) const {
    const double x = get_double(key);
    const int i = static_cast<int>(x);
    if (x != i) throw ConfigError("config key '" + key + "' is not an integer");
    return i;
}

int RunConfig::get_int_or(const std::string& key, int def) const {
    return has(key) ? get_int(key) : def;
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    try {
        size_t used = 0;
        const std::string v = get(key);
        const std::uint64_t x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an unsigned integer");
    }
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': bad list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string RunConfig::normalized() const {
    std::string out;
    for (const auto& [key, value] : kv_) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : normalized()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

GridSpec RunConfig::grid_spec() const {
    GridSpec spec;
    spec.dim = get_int_or("grid.dim", 1);
    spec.h = get_double("grid.h");
    for (int ax = 0; ax < spec.dim; ++ax) {
        const std::string key = "grid.x" + std::to_string(ax);
        const std::string bounds = get_or(key, "0, 1");
        std::stringstream ss(bounds);
        std::string lo_s, hi_s;
        if (!std::getline(ss, lo_s, ',') || !std::getline(ss, hi_s))
            throw ConfigError("config key '" + key + "': expected 'lo, hi'");
        try {
            spec.lo[ax] = std::stod(trim(lo_s));
            spec.hi[ax] = std::stod(trim(hi_s));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': bad bounds");
        }
    }
    const std::string ind = get_or("grid.indicator", "all");
    if (ind != "all") {
        if (ind.rfind("disk:", 0) == 0) {
            std::vector<double> ps;
            std::stringstream ss(ind.substr(5));
            std::string item;
            while (std::getline(ss, item, ',')) ps.push_back(std::stod(trim(item)));
            if (ps.size() != 3) throw ConfigError("grid.indicator disk takes cx,cy,r");
            const double cx = ps[0], cy = ps[1], r2 = ps[2] * ps[2];
            spec.indicator = [cx, cy, r2](const Coord& x) {
                const double dx = x[0] - cx, dy = x[1] - cy;
                return dx * dx + dy * dy < r2;
            };
        } else {
            throw ConfigError("unknown grid.indicator '" + ind + "'");
        }
    }
    return spec;
}

SobolevOrder RunConfig::sobolev_order() const {
    const int m = get_int_or("grid.m", 1);
    if (m < 1) throw ConfigError("grid.m must be >= 1");
    return SobolevOrder(m);
}

SPDECoefficients RunConfig::coefficients() const {
    SPDECoefficients c;
    c.dim = get_int_or("grid.dim", 1);
    c.channels = get_int_or("problem.channels", 0);
    auto field = [this](const std::string& key) -> ScalarField {
        return parse_field_expr(get_or(key, "zero"));
    };
    for (int i = 0; i < c.dim; ++i) {
        for (int j = 0; j < c.dim; ++j)
            c.a[i][j] = field("problem.a_" + std::to_string(i) + std::to_string(j));
        c.a_lower[i] = field("problem.alower_" + std::to_string(i));
        c.b[i] = field("problem.b_" + std::to_string(i));
    }
    c.c = field("problem.c");
    c.f = field("problem.f");
    c.sigma.resize(c.channels);
    c.nu.resize(c.channels);
    for (int k = 0; k < c.channels; ++k) {
        for (int i = 0; i < c.dim; ++i)
            c.sigma[k][i] =
                field("problem.sigma_" + std::to_string(k) + "_" + std::to_string(i));
        c.nu[k] = field("problem.nu_" + std::to_string(k));
    }
    c.declared_bound = get_double_or("problem.bound", 1e6);
    return c;
}

ScalarField RunConfig::initial_condition() const {
    return parse_field_expr(get_or("problem.u0", "zero"));
}

ScalarField RunConfig::k_bound() const {
    return parse_field_expr(get_or("run.k_bound", "zero"));
}

double RunConfig::total_time() const { return get_double_or("run.T", 1.0); }

std::vector<double> RunConfig::dt_list() const {
    const std::vector<double> dts = get_list("run.dt_list");
    for (size_t i = 0; i + 1 < dts.size(); ++i)
        if (!(dts[i + 1] < dts[i]))
            throw ConfigError("run.dt_list must be strictly decreasing");
    for (double dt : dts)
        if (!(dt > 0.0)) throw ConfigError("run.dt_list entries must be positive");
    return dts;
}

std::uint64_t RunConfig::seed() const {
    if (!has("run.seed"))
        throw ConfigError("run.seed is required (wall-clock seeding is not supported)");
    return get_u64("run.seed");
}

int RunConfig::paths() const { return get_int_or("run.paths", 100); }

int RunConfig::workers() const {
    const int w = get_int_or("run.workers", 1);
    if (w < 1) throw ConfigError("run.workers must be >= 1");
    return w;
}

Scheme RunConfig::scheme() const {
    const std::string s = get_or("run.scheme", "semi-implicit");
    if (s == "semi-implicit") return Scheme::SemiImplicit;
    if (s == "explicit") return Scheme::Explicit;
    throw ConfigError("run.scheme must be 'semi-implicit' or 'explicit'");
}

std::vector<double> RunConfig::lambda_list() const {
    if (!has("run.lambda_list")) return {0.0, 1.0, 10.0, 100.0, 1000.0};
    return get_list("run.lambda_list");
}

std::vector<double> RunConfig::n_list() const {
    if (!has("run.n_list")) return {4.0, 16.0, 64.0, 256.0};
    return get_list("run.n_list");
}

int RunConfig::sample_count() const { return get_int_or("run.samples", 20); }

CgOptions RunConfig::solver_options() const {
    CgOptions opts;
    opts.rel_tol = get_double_or("run.solver_tol", 1e-10);
    opts.max_iterations = get_int_or("run.solver_cap", 0);
    if (!(opts.rel_tol > 0.0) || opts.rel_tol > 1e-6)
        throw ConfigError("run.solver_tol must lie in (0, 1e-6]");
    return opts;
}

void RunConfig::validate() const {
    (void)seed();
    if (has("run.dt_list")) (void)dt_list();
    (void)coefficients();   // resolves every field expression
    (void)initial_condition();
    (void)k_bound();
    (void)solver_options();
}

std::string format_hash(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace itolab
