#include "musklab/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "musklab/field_io.hpp"
#include "musklab/random_field.hpp"

namespace musk {

namespace {

double param_or(const std::map<std::string, std::string>& kv, const std::string& key,
                double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

std::string snap_name(long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%08ld.musk", step);
    return buf;
}

}  // namespace

InterfaceField build_initial_field(const RunConfig& config) {
    const PeriodicGrid grid = PeriodicGrid::make(config.period, config.n);
    const auto params = parse_kv_list(config.initial_params);
    if (config.initial_kind == "mode") {
        const int k1 = static_cast<int>(param_or(params, "k", 1));
        const int k2 = static_cast<int>(param_or(params, "k2", 0));
        const double eps = param_or(params, "eps", 1e-3);
        return make_mode_field(grid, {k1, k2}, eps);
    }
    if (config.initial_kind == "random-lipschitz") {
        const double slope = param_or(params, "slope", 0.1);
        const int kmax = static_cast<int>(param_or(params, "kmax", 4));
        return make_random_lipschitz(grid, config.seed, slope, kmax);
    }
    // fixture-crossing: scaled touching pair; default scale forces a
    // modulus violation already at t = 0
    const Modulus m = Modulus::for_budget(config.L);
    const double xi = param_or(params, "xi", 1.0);
    const double p = m.profile(xi);
    const double scale = param_or(params, "scale", (m.j(0.0) + p) / p * 1.05);
    auto fixture = make_fixture_crossing(grid, m, xi, scale);
    return std::move(fixture.field);
}

RunSummary run_simulation(const RunConfig& config, const std::string& resume_snapshot,
                          bool write_outputs) {
    namespace fs = std::filesystem;
    const auto t_start = std::chrono::steady_clock::now();

    RunSummary out;
    const PeriodicGrid grid = PeriodicGrid::make(config.period, config.n);
    const Modulus modulus = Modulus::for_budget(config.L);
    const int threads = config.deterministic ? 1 : config.threads;

    InterfaceField field =
        resume_snapshot.empty() ? build_initial_field(config) : read_musk1(resume_snapshot);
    if (field.grid.n != grid.n || field.grid.period != grid.period)
        throw std::runtime_error("resume snapshot grid does not match the configuration");

    Stepper stepper(grid, config.quadrature);
    const double dt = stepper.dt_from_factor(config.dt_factor);
    out.dt = dt;

    if (write_outputs) fs::create_directories(config.output_dir);
    std::ofstream csv;
    if (write_outputs) {
        out.csv_path = (fs::path(config.output_dir) / "series.csv").string();
        csv.open(out.csv_path, std::ios::trunc);
        csv.precision(17);
        csv << "t,sup_norm,l2_norm,lipschitz,min_deficit\n";
    }

    auto checkpoint = [&](long step) -> bool {
        MonitorRow row;
        row.step = step;
        row.t = field.time;
        row.sup_norm = config.monitor_sup ? sup_norm(field.values) : 0.0;
        row.l2_norm = config.monitor_l2 ? l2_norm(field) : 0.0;
        row.lipschitz = config.monitor_lipschitz ? lipschitz_norm(field) : 0.0;
        row.min_deficit = 0.0;
        if (config.monitor_modulus) {
            DeficitResult d = modulus_monitor(field, field.time, modulus,
                                              config.monitor_radius_cap, threads,
                                              config.monitor_pair_samples, config.seed);
            row.min_deficit = d.min_deficit;
            row.p0i = d.p0i;
            row.p0j = d.p0j;
            row.p1i = d.p1i;
            row.p1j = d.p1j;
            if (d.min_deficit <= kCrossingThreshold && !out.log.crossing) {
                out.log.crossing = build_crossing_report(field, field.time, modulus, d);
                out.log.rows.push_back(row);
                if (csv.is_open())
                    csv << row.t << ',' << row.sup_norm << ',' << row.l2_norm << ','
                        << row.lipschitz << ',' << row.min_deficit << '\n';
                return false;  // no continuation past a crossing
            }
        }
        out.log.rows.push_back(row);
        if (csv.is_open())
            csv << row.t << ',' << row.sup_norm << ',' << row.l2_norm << ','
                << row.lipschitz << ',' << row.min_deficit << '\n';
        return true;
    };

    bool crossed = !checkpoint(0);
    bool blew_up = false;
    long step = 0;
    const double t_end = config.horizon;
    try {
        while (!crossed && !blew_up && field.time < t_end - 1e-12 * std::fmax(t_end, 1.0)) {
            stepper.step(field, dt, threads);
            ++step;
            out.max_error_budget = std::fmax(out.max_error_budget, stepper.last_error_budget());
            const bool at_checkpoint =
                step % config.checkpoint_every == 0 || field.time >= t_end - 1e-12;
            if (at_checkpoint && !checkpoint(step)) crossed = true;
            if (write_outputs && config.snapshot_every > 0 &&
                step % config.snapshot_every == 0) {
                const std::string name =
                    (fs::path(config.output_dir) / snap_name(step)).string();
                write_musk1(field, name);
                out.snapshots.push_back(name);
            }
        }
    } catch (const BlowupError&) {
        blew_up = true;
    }
    out.steps = step;

    if (write_outputs) {
        out.final_snapshot = (fs::path(config.output_dir) / "final.musk").string();
        write_musk1(field, out.final_snapshot);
    }

    if (out.log.crossing) {
        out.verdict =
            contradiction_chain(*out.log.crossing, field, modulus, config.quadrature);
    }

    if (blew_up) {
        out.exit_code = 2;
        out.status = "blow-up";
    } else if (out.log.crossing && config.monitor_modulus) {
        out.exit_code = 3;
        out.status = "monitor-failure";
        out.failed_monitor = "modulus";
    } else if (config.monitor_sup && !sup_norm_monotone(out.log.rows)) {
        out.exit_code = 3;
        out.status = "monitor-failure";
        out.failed_monitor = "sup_norm";
    } else if (config.monitor_l2 && !l2_monotone(out.log.rows)) {
        out.exit_code = 3;
        out.status = "monitor-failure";
        out.failed_monitor = "l2";
    } else {
        out.exit_code = 0;
        out.status = "clean";
    }

    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (write_outputs) {
        nlohmann::json j;
        j["config"] = config.to_map();
        j["status"] = out.status;
        j["exit_code"] = out.exit_code;
        j["dt"] = out.dt;
        j["steps"] = out.steps;
        j["wall_seconds"] = out.wall_seconds;
        j["max_error_budget"] = out.max_error_budget;
        j["snapshots"] = out.snapshots;
        j["final_snapshot"] = out.final_snapshot;
        if (!out.failed_monitor.empty()) j["failed_monitor"] = out.failed_monitor;
        if (!out.log.rows.empty()) {
            const MonitorRow& last = out.log.rows.back();
            j["final"] = {{"t", last.t},
                          {"sup_norm", last.sup_norm},
                          {"l2_norm", last.l2_norm},
                          {"lipschitz", last.lipschitz},
                          {"min_deficit", last.min_deficit}};
        }
        if (out.log.crossing) {
            const CrossingReport& c = *out.log.crossing;
            j["crossing"] = {{"t0", c.t0},
                             {"x0", {c.x0i, c.x0j}},
                             {"y0", {c.y0i, c.y0j}},
                             {"xi", c.xi},
                             {"deficit", c.deficit},
                             {"pair_order_margin", c.pair_order_margin},
                             {"x0_upper_margin", c.x0_upper_margin},
                             {"y0_lower_margin", c.y0_lower_margin},
                             {"side_conditions_ok", c.side_conditions_ok}};
            if (out.verdict) {
                const ContradictionVerdict& v = *out.verdict;
                j["crossing"]["verdict"] = {{"jprime", v.jprime},
                                            {"rate_diff", v.rate_diff},
                                            {"kernel_integral", v.kernel_integral},
                                            {"rearrangement", v.rearrangement},
                                            {"dissipation", v.dissipation},
                                            {"failing_link", v.failing_link}};
            }
        }
        out.summary_path = (fs::path(config.output_dir) / "summary.json").string();
        std::ofstream js(out.summary_path, std::ios::trunc);
        js << j.dump(2) << "\n";
    }
    return out;
}

}  // namespace musk
