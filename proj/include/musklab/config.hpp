#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "musklab/quadrature.hpp"

namespace musk {

// Flat key = value configuration ('#' comments). Unknown keys are rejected.
struct RunConfig {
    int n = 64;
    double period = 6.28318530717958647692;
    double L = 2.0;
    double dt_factor = 0.25;
    double horizon = 1.0;
    long checkpoint_every = 10;
    long snapshot_every = 0;  // 0: only the final snapshot
    std::uint64_t seed = 1;
    int threads = 0;
    bool deterministic = false;

    std::string initial_kind = "mode";  // mode | random-lipschitz | fixture-crossing
    std::string initial_params;        // comma-separated k=v list

    QuadratureSpec quadrature;

    bool monitor_modulus = true;
    bool monitor_sup = true;
    bool monitor_l2 = true;
    bool monitor_lipschitz = true;
    double monitor_radius_cap = 0.0;
    long monitor_pair_samples = 1000000;

    std::string output_dir = "out";

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);
    static RunConfig from_map(const std::map<std::string, std::string>& kv);

    // normalized key = value map; parsing it back reproduces this config
    std::map<std::string, std::string> to_map() const;
    std::string to_text() const;
};

// helper for initial.params style "k1=v1,k2=v2" lists
std::map<std::string, std::string> parse_kv_list(const std::string& text);

}  // namespace musk
