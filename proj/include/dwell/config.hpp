#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dwell/gpe.hpp"
#include "dwell/grid.hpp"
#include "dwell/potential.hpp"
#include "dwell/sweep.hpp"

namespace dwell {

// Flat key=value configuration with dotted section prefixes (trap.U0=6.4).
// Unknown or duplicate keys are config errors; numeric fields are validated
// against their module invariants before any computation starts.
struct RunConfig {
    PotentialParams trap;  // trap.U0, trap.sigma; x0 is swept, not configured
    Grid grid;

    double Ng0 = 1.0;
    int N = 50;

    // scan section: either a range or an explicit comma-separated list.
    double scan_x0_start = -4.5;
    double scan_x0_stop = -2.9;
    double scan_x0_step = 0.005;
    std::vector<double> scan_x0_list;  // overrides the range when non-empty

    double modes_overlap_threshold = kOverlapWarnThreshold;

    // gpe-trace window; branches are seeded from the two lowest linear
    // levels at trace_x0_start.
    double trace_x0_start = -3.9;
    double trace_x0_stop = -3.0;
    ArclengthSettings arclength;

    SweepProtocol sweep;
    double sweep_lattice_step = 0.01;
    double sweep_overlap_max = 0.2;
    double sweep_sample_interval = 0.1;

    std::uint64_t seed = 0;

    std::vector<double> scan_points() const;  // resolved x0 list
};

RunConfig load_config(const std::string& path);

// Fully resolved key=value pairs, in a fixed order, for output file headers.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c);

} // namespace dwell
