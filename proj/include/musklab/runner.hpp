#pragma once

#include <optional>
#include <string>
#include <vector>

#include "musklab/config.hpp"
#include "musklab/dynamics.hpp"

namespace musk {

struct RunSummary {
    int exit_code = 0;   // 0 clean, 2 blow-up, 3 monitor assertion failed
    std::string status;  // clean | blow-up | monitor-failure
    std::string failed_monitor;
    MonitorLog log;
    std::optional<ContradictionVerdict> verdict;  // chain at a detected crossing
    std::vector<std::string> snapshots;
    std::string final_snapshot;
    std::string csv_path;
    std::string summary_path;
    double dt = 0.0;
    long steps = 0;
    double wall_seconds = 0.0;
    double max_error_budget = 0.0;
};

// Drives one run: initial data per config (or a resume snapshot), RK4 stepping
// with checkpointed monitors, crossing detection (the run stops there), and
// persistent outputs (MUSK1 snapshots, CSV series, JSON summary) under
// config.output_dir. write_outputs=false keeps everything in memory for tests.
RunSummary run_simulation(const RunConfig& config, const std::string& resume_snapshot = "",
                          bool write_outputs = true);

InterfaceField build_initial_field(const RunConfig& config);

}  // namespace musk
