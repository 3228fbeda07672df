// Command-line drivers for the double-well condensate pipelines: spectrum
// scans, GPE branch traces, classical two-mode roots, laser sweeps and mode
// reports. Every output file carries the fully resolved configuration in its
// header; identical (config, seed) reruns produce byte-identical files.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dwell/classical_two_mode.hpp"
#include "dwell/config.hpp"
#include "dwell/csv.hpp"
#include "dwell/errors.hpp"
#include "dwell/fock.hpp"
#include "dwell/gpe.hpp"
#include "dwell/sweep.hpp"

namespace {

using namespace dwell;

void write_config_header(CsvWriter& w, const RunConfig& c, const std::string& command) {
    w.comment("command: " + command);
    for (const auto& [k, v] : resolved_entries(c)) w.comment(k + " = " + v);
}

std::vector<double> scan_or_fail(const RunConfig& c) {
    auto pts = c.scan_points();
    if (pts.empty())
        throw ConfigError("scan: empty x0 list");
    return pts;
}

void write_classical_csv(const std::string& path, const RunConfig& c,
                         const std::string& command, const std::vector<double>& x0s) {
    CsvWriter w(path);
    write_config_header(w, c, command);
    w.comment("branch_id: index after sorting by energy at each x0; fold_flag marks merged roots");
    w.header({"x0", "theta", "mu", "energy_per_particle", "branch_id", "fold_flag"});
    const double g0 = c.Ng0 / c.N;
    for (double x0 : x0s) {
        PotentialParams p = c.trap;
        p.x0 = x0;
        const ModePoint mp = mode_point(p, c.grid);
        const TwoModeParams tp = attach_interaction(mp, g0, c.N, c.modes_overlap_threshold);
        const auto roots = classical_roots(tp);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const auto& r = roots[i];
            w.row({x0, r.theta, r.mu, r.energy / c.N, double(i), r.fold ? 1.0 : 0.0});
        }
    }
}

int cmd_scan_spectrum(const RunConfig& c, const std::string& out) {
    const auto x0s = scan_or_fail(c);
    const double g0 = c.Ng0 / c.N;
    const SpectrumScan scan =
        scan_spectrum(c.trap, c.grid, x0s, g0, c.N, c.modes_overlap_threshold);

    {
        CsvWriter w(out + "/spectrum_scan.csv");
        write_config_header(w, c, "scan-spectrum");
        w.comment("gap_below: distance to the previous level; 0 for level_index 0");
        w.header({"x0", "level_index", "energy_per_particle", "gap_below"});
        for (std::size_t col = 0; col < scan.x0_values.size(); ++col)
            for (std::size_t k = 0; k < scan.levels[col].size(); ++k)
                w.row({scan.x0_values[col], double(k), scan.levels[col][k],
                       k == 0 ? 0.0 : scan.gaps[col][k - 1]});
    }
    write_classical_csv(out + "/classical_roots.csv", c, "scan-spectrum", x0s);
    return 0;
}

int cmd_classical_roots(const RunConfig& c, const std::string& out) {
    write_classical_csv(out + "/classical_roots.csv", c, "classical-roots", scan_or_fail(c));
    return 0;
}

void write_branch_csv(const std::string& path, const RunConfig& c, const char* which,
                      const Branch& b) {
    CsvWriter w(path);
    write_config_header(w, c, "gpe-trace");
    w.comment(std::string("branch: ") + which);
    w.comment(b.closed ? "closed: yes" : "closed: no");
    std::string tp = "turning_points:";
    for (double t : b.turning_points) tp += " " + format_double(t);
    w.comment(tp);
    w.header({"x0", "mu", "energy_per_particle", "turning_point_flag"});
    for (const auto& pt : b.points)
        w.row({pt.x0, pt.solution.mu, pt.solution.energy_per_particle,
               pt.turning_point ? 1.0 : 0.0});
}

int cmd_gpe_trace(const RunConfig& c, const std::string& out) {
    if (!(c.trace_x0_start < c.trace_x0_stop))
        throw ConfigError("gpe-trace: need trace_x0_start < trace_x0_stop");

    PotentialParams p = c.trap;
    p.x0 = c.trace_x0_start;
    for (int level = 0; level < 2; ++level) {
        const GpeSolution seed = solve_from_linear_level(p, c.grid, c.Ng0, level);
        const Branch b =
            continue_branch(seed, c.trace_x0_start - 0.05, c.trace_x0_stop, c.arclength);
        write_branch_csv(out + (level == 0 ? "/gpe_branch_ground.csv" : "/gpe_branch_excited.csv"),
                         c, level == 0 ? "ground" : "excited", b);
    }

    // Classical branches on a uniform grid over the same window.
    std::vector<double> x0s;
    const double step = c.scan_x0_step > 0 ? c.scan_x0_step : 0.005;
    for (double x0 = c.trace_x0_start; x0 <= c.trace_x0_stop + 1e-12; x0 += step)
        x0s.push_back(x0);
    write_classical_csv(out + "/classical_branches.csv", c, "gpe-trace", x0s);
    return 0;
}

int cmd_modes_report(const RunConfig& c, const std::string& out) {
    const auto x0s = scan_or_fail(c);
    CsvWriter w(out + "/modes_report.csv");
    write_config_header(w, c, "modes-report");
    w.header({"x0", "E1", "E2", "Omega", "V1", "V2", "overlap"});
    for (double x0 : x0s) {
        PotentialParams p = c.trap;
        p.x0 = x0;
        const ModePoint mp = mode_point(p, c.grid);
        w.row({x0, mp.E1, mp.E2, mp.Omega, 1.0 / mp.inv_V1, 1.0 / mp.inv_V2, mp.overlap});
    }
    return 0;
}

int cmd_sweep(const RunConfig& c, const std::string& out, bool with_oracle) {
    const double g = std::abs(c.Ng0) / c.N;
    const double x0_target = c.sweep.x0_start + c.sweep.rate * c.sweep.t_end;
    const ModeTable table =
        build_mode_table(c.trap, c.grid, c.sweep.x0_start, x0_target,
                         c.sweep_lattice_step, c.sweep_overlap_max);

    const struct { double g0; const char* tag; } runs[] = {
        {0.0, "zero"}, {+g, "plus"}, {-g, "minus"}};

    for (const auto& run : runs) {
        const TwoModeParams p_init =
            attach_interaction(table.at(c.sweep.x0_start), run.g0, c.N, c.sweep_overlap_max);
        const FockVector psi0 = fock_ground_state(p_init);
        const SweepResult res =
            propagate(psi0, c.sweep, table, run.g0, c.N, c.sweep_sample_interval);

        const TwoModeParams p_final =
            attach_interaction(table.at(res.final_x0), run.g0, c.N, c.sweep_overlap_max);
        const std::string tag = "H(x0=" + format_double(res.final_x0) + ")";
        const OverlapDistribution dist = final_overlaps(res.final_state, p_final, tag);

        {
            CsvWriter w(out + "/trajectory_" + run.tag + ".csv");
            write_config_header(w, c, "sweep");
            w.comment("g0 = " + format_double(run.g0));
            w.comment(std::string("window_exit: ") + (res.truncated ? "yes" : "no") +
                      ", final_x0 = " + format_double(res.final_x0) +
                      ", final_t = " + format_double(res.final_time));
            w.comment("population columns: Fock index n = particles in mode 1 (left well)");
            std::vector<std::string> cols = {"t", "x0"};
            for (int n = 0; n <= c.N; ++n) cols.push_back("p" + std::to_string(n));
            w.header(cols);
            for (std::size_t i = 0; i < res.times.size(); ++i) {
                std::vector<double> row = {res.times[i], res.x0s[i]};
                row.insert(row.end(), res.populations[i].begin(), res.populations[i].end());
                w.row(row);
            }
        }
        {
            CsvWriter w(out + "/overlaps_" + run.tag + ".csv");
            write_config_header(w, c, "sweep");
            w.comment("g0 = " + format_double(run.g0));
            w.comment("basis_tag: " + dist.basis_tag);
            w.comment(std::string("window_exit: ") + (res.truncated ? "yes" : "no"));
            w.comment("norm_error = " + format_double(res.norm_error));
            w.header({"n", "probability"});
            for (std::size_t k = 0; k < dist.probabilities.size(); ++k)
                w.row({double(k), dist.probabilities[k]});
        }
        if (with_oracle && run.g0 == 0.0) {
            const SweepResult& r0 = res;
            const auto ab = propagate_two_level(c.sweep, table, r0.final_time);
            const auto pops = binomial_populations(ab, c.N);
            CsvWriter w(out + "/oracle_binomial.csv");
            write_config_header(w, c, "sweep");
            w.comment("independent 2x2 propagation; populations C(N,n)|a|^2n |b|^2(N-n)");
            w.header({"n", "probability"});
            for (std::size_t k = 0; k < pops.size(); ++k) w.row({double(k), pops[k]});
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-well condensate spectra: GPE loops, two-mode nets, laser sweeps"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    long seed_override = -1;
    bool oracle = false;

    app.add_option("--config", config_path, "key=value configuration file")->required();
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--seed", seed_override, "override run.seed");

    auto* scan = app.add_subcommand("scan-spectrum", "quantum two-mode levels over the x0 scan");
    auto* roots = app.add_subcommand("classical-roots", "classical two-mode roots over the x0 scan");
    auto* trace = app.add_subcommand("gpe-trace", "GPE branch continuation plus classical branches");
    auto* sweep = app.add_subcommand("sweep", "time-dependent sweep for g0 in {0, +g, -g}");
    sweep->add_flag("--oracle", oracle, "also write the 2x2 binomial oracle for g0 = 0");
    auto* modes = app.add_subcommand("modes-report", "E1, E2, Omega, V1, V2, overlap vs x0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        const RunConfig cfg = [&] {
            RunConfig c = load_config(config_path);
            if (seed_override >= 0) c.seed = static_cast<std::uint64_t>(seed_override);
            return c;
        }();
        std::filesystem::create_directories(out_dir);

        if (scan->parsed()) return cmd_scan_spectrum(cfg, out_dir);
        if (roots->parsed()) return cmd_classical_roots(cfg, out_dir);
        if (trace->parsed()) return cmd_gpe_trace(cfg, out_dir);
        if (sweep->parsed()) return cmd_sweep(cfg, out_dir, oracle);
        if (modes->parsed()) return cmd_modes_report(cfg, out_dir);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NoDoubleWell& e) {
        std::cerr << "solver error (NoDoubleWell): " << e.what() << "\n";
        return 3;
    } catch (const NoBoundMode& e) {
        std::cerr << "solver error (NoBoundMode): " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "solver error (ConvergenceFailure): " << e.what() << "\n";
        return 3;
    } catch (const NoConvergence& e) {
        std::cerr << "solver error (NoConvergence): " << e.what() << "\n";
        return 3;
    } catch (const SingularJacobian& e) {
        std::cerr << "solver error (SingularJacobian): " << e.what() << "\n";
        return 3;
    } catch (const StepCollapse& e) {
        std::cerr << "solver error (StepCollapse): " << e.what() << "\n";
        return 3;
    } catch (const DegenerateOmega& e) {
        std::cerr << "solver error (DegenerateOmega): " << e.what() << "\n";
        return 3;
    } catch (const GridMismatch& e) {
        std::cerr << "solver error (GridMismatch): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
