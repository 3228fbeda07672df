#include "dwell/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "dwell/csv.hpp"
#include "dwell/errors.hpp"

namespace dwell {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    return x;
}

long to_long(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

} // namespace

std::vector<double> RunConfig::scan_points() const {
    if (!scan_x0_list.empty()) return scan_x0_list;
    std::vector<double> pts;
    if (scan_x0_step > 0.0 && scan_x0_start <= scan_x0_stop) {
        const int count = static_cast<int>(
            std::floor((scan_x0_stop - scan_x0_start) / scan_x0_step + 1e-9)) + 1;
        pts.reserve(count);
        for (int i = 0; i < count; ++i) pts.push_back(scan_x0_start + i * scan_x0_step);
    }
    return pts;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key on line " + std::to_string(lineno));
        if (!kv.emplace(key, val).second)
            throw ConfigError("config: duplicate key " + key);
    }

    RunConfig c;
    auto take_d = [&](const char* key, double& field) {
        auto it = kv.find(key);
        if (it != kv.end()) {
            field = to_double(key, it->second);
            kv.erase(it);
        }
    };
    auto take_i = [&](const char* key, int& field) {
        auto it = kv.find(key);
        if (it != kv.end()) {
            field = static_cast<int>(to_long(key, it->second));
            kv.erase(it);
        }
    };

    take_d("trap.U0", c.trap.U0);
    take_d("trap.sigma", c.trap.sigma);
    take_d("grid.x_min", c.grid.x_min);
    take_d("grid.x_max", c.grid.x_max);
    take_i("grid.n_points", c.grid.n_points);
    take_d("physics.Ng0", c.Ng0);
    take_i("physics.N", c.N);
    take_d("scan.x0_start", c.scan_x0_start);
    take_d("scan.x0_stop", c.scan_x0_stop);
    take_d("scan.x0_step", c.scan_x0_step);
    if (auto it = kv.find("scan.x0_list"); it != kv.end()) {
        c.scan_x0_list = to_list("scan.x0_list", it->second);
        kv.erase(it);
    }
    take_d("modes.overlap_threshold", c.modes_overlap_threshold);
    take_d("gpe.trace_x0_start", c.trace_x0_start);
    take_d("gpe.trace_x0_stop", c.trace_x0_stop);
    take_d("gpe.step_initial", c.arclength.initial_step);
    take_d("gpe.step_max", c.arclength.max_step);
    take_d("sweep.x0_start", c.sweep.x0_start);
    take_d("sweep.rate", c.sweep.rate);
    take_d("sweep.t_end", c.sweep.t_end);
    take_d("sweep.dt", c.sweep.dt);
    take_d("sweep.lattice_step", c.sweep_lattice_step);
    take_d("sweep.overlap_max", c.sweep_overlap_max);
    take_d("sweep.sample_interval", c.sweep_sample_interval);
    if (auto it = kv.find("run.seed"); it != kv.end()) {
        c.seed = static_cast<std::uint64_t>(to_long("run.seed", it->second));
        kv.erase(it);
    }

    if (!kv.empty())
        throw ConfigError("config: unknown key " + kv.begin()->first);

    // Fail-fast validation against the module invariants.
    if (!(c.trap.sigma > 0.0)) throw ConfigError("config: trap.sigma must be > 0");
    if (!(c.grid.x_min < c.grid.x_max)) throw ConfigError("config: grid.x_min must be < grid.x_max");
    if (c.grid.n_points < 3) throw ConfigError("config: grid.n_points must be >= 3");
    if (c.N < 1) throw ConfigError("config: physics.N must be >= 1");
    if (!(c.sweep.dt > 0.0)) throw ConfigError("config: sweep.dt must be > 0");
    if (!(c.sweep_lattice_step > 0.0)) throw ConfigError("config: sweep.lattice_step must be > 0");
    if (!(c.arclength.initial_step > 0.0)) throw ConfigError("config: gpe.step_initial must be > 0");
    if (!(c.arclength.max_step >= c.arclength.initial_step))
        throw ConfigError("config: gpe.step_max must be >= gpe.step_initial");
    if (!(c.sweep_sample_interval > 0.0))
        throw ConfigError("config: sweep.sample_interval must be > 0");
    if (!(c.modes_overlap_threshold > 0.0))
        throw ConfigError("config: modes.overlap_threshold must be > 0");
    if (!(c.sweep_overlap_max > 0.0))
        throw ConfigError("config: sweep.overlap_max must be > 0");
    return c;
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    auto d = [](double v) { return format_double(v); };
    e.emplace_back("trap.U0", d(c.trap.U0));
    e.emplace_back("trap.sigma", d(c.trap.sigma));
    e.emplace_back("grid.x_min", d(c.grid.x_min));
    e.emplace_back("grid.x_max", d(c.grid.x_max));
    e.emplace_back("grid.n_points", std::to_string(c.grid.n_points));
    e.emplace_back("physics.Ng0", d(c.Ng0));
    e.emplace_back("physics.N", std::to_string(c.N));
    if (!c.scan_x0_list.empty()) {
        std::string l;
        for (std::size_t i = 0; i < c.scan_x0_list.size(); ++i) {
            if (i) l += ',';
            l += d(c.scan_x0_list[i]);
        }
        e.emplace_back("scan.x0_list", l);
    } else {
        e.emplace_back("scan.x0_start", d(c.scan_x0_start));
        e.emplace_back("scan.x0_stop", d(c.scan_x0_stop));
        e.emplace_back("scan.x0_step", d(c.scan_x0_step));
    }
    e.emplace_back("modes.overlap_threshold", d(c.modes_overlap_threshold));
    e.emplace_back("gpe.trace_x0_start", d(c.trace_x0_start));
    e.emplace_back("gpe.trace_x0_stop", d(c.trace_x0_stop));
    e.emplace_back("gpe.step_initial", d(c.arclength.initial_step));
    e.emplace_back("gpe.step_max", d(c.arclength.max_step));
    e.emplace_back("sweep.x0_start", d(c.sweep.x0_start));
    e.emplace_back("sweep.rate", d(c.sweep.rate));
    e.emplace_back("sweep.t_end", d(c.sweep.t_end));
    e.emplace_back("sweep.dt", d(c.sweep.dt));
    e.emplace_back("sweep.lattice_step", d(c.sweep_lattice_step));
    e.emplace_back("sweep.overlap_max", d(c.sweep_overlap_max));
    e.emplace_back("sweep.sample_interval", d(c.sweep_sample_interval));
    e.emplace_back("run.seed", std::to_string(c.seed));
    return e;
}

} // namespace dwell
