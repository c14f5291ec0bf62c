#include "musklab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace musk {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_flat(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config: empty key");
        if (!kv.emplace(key, val).second)
            throw std::runtime_error("config: duplicate key '" + key + "'");
    }
    return kv;
}

double to_double(const std::string& k, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw std::runtime_error("config: bad numeric value for '" + k + "': " + v);
    }
}

long to_long(const std::string& k, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw std::runtime_error("config: bad integer value for '" + k + "': " + v);
    }
}

bool to_bool(const std::string& k, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw std::runtime_error("config: bad boolean value for '" + k + "': " + v);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::map<std::string, std::string> parse_kv_list(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad params item (expected k=v): " + item);
        kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return kv;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) { return from_map(parse_flat(text)); }

RunConfig RunConfig::from_map(const std::map<std::string, std::string>& kv) {
    RunConfig c;
    for (const auto& [key, val] : kv) {
        if (key == "n") c.n = static_cast<int>(to_long(key, val));
        else if (key == "period") c.period = to_double(key, val);
        else if (key == "L") c.L = to_double(key, val);
        else if (key == "dt_factor") c.dt_factor = to_double(key, val);
        else if (key == "horizon") c.horizon = to_double(key, val);
        else if (key == "checkpoint_every") c.checkpoint_every = to_long(key, val);
        else if (key == "snapshot_every") c.snapshot_every = to_long(key, val);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "threads") c.threads = static_cast<int>(to_long(key, val));
        else if (key == "deterministic") c.deterministic = to_bool(key, val);
        else if (key == "initial.kind") c.initial_kind = val;
        else if (key == "initial.params") c.initial_params = val;
        else if (key == "quadrature.rho0") c.quadrature.rho0 = to_double(key, val);
        else if (key == "quadrature.outer") c.quadrature.outer = to_double(key, val);
        else if (key == "quadrature.rings") c.quadrature.rings = static_cast<int>(to_long(key, val));
        else if (key == "quadrature.sectors")
            c.quadrature.sectors = static_cast<int>(to_long(key, val));
        else if (key == "quadrature.interpolation") {
            if (val == "bicubic") c.quadrature.interpolation = Interpolation::bicubic;
            else if (val == "trigonometric")
                c.quadrature.interpolation = Interpolation::trigonometric;
            else throw std::runtime_error("config: unknown interpolation '" + val + "'");
        } else if (key == "quadrature.slope_cap") c.quadrature.slope_cap = to_double(key, val);
        else if (key == "monitors.modulus") c.monitor_modulus = to_bool(key, val);
        else if (key == "monitors.sup_norm") c.monitor_sup = to_bool(key, val);
        else if (key == "monitors.l2") c.monitor_l2 = to_bool(key, val);
        else if (key == "monitors.lipschitz") c.monitor_lipschitz = to_bool(key, val);
        else if (key == "monitors.radius_cap") c.monitor_radius_cap = to_double(key, val);
        else if (key == "monitors.pair_samples") c.monitor_pair_samples = to_long(key, val);
        else if (key == "output_dir") c.output_dir = val;
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    if (c.initial_kind != "mode" && c.initial_kind != "random-lipschitz" &&
        c.initial_kind != "fixture-crossing")
        throw std::runtime_error("config: unknown initial.kind '" + c.initial_kind + "'");
    return c;
}

std::map<std::string, std::string> RunConfig::to_map() const {
    std::map<std::string, std::string> kv;
    kv["n"] = std::to_string(n);
    kv["period"] = fmt(period);
    kv["L"] = fmt(L);
    kv["dt_factor"] = fmt(dt_factor);
    kv["horizon"] = fmt(horizon);
    kv["checkpoint_every"] = std::to_string(checkpoint_every);
    kv["snapshot_every"] = std::to_string(snapshot_every);
    kv["seed"] = std::to_string(seed);
    kv["threads"] = std::to_string(threads);
    kv["deterministic"] = deterministic ? "true" : "false";
    kv["initial.kind"] = initial_kind;
    if (!initial_params.empty()) kv["initial.params"] = initial_params;
    kv["quadrature.rho0"] = fmt(quadrature.rho0);
    kv["quadrature.outer"] = fmt(quadrature.outer);
    kv["quadrature.rings"] = std::to_string(quadrature.rings);
    kv["quadrature.sectors"] = std::to_string(quadrature.sectors);
    kv["quadrature.interpolation"] =
        quadrature.interpolation == Interpolation::bicubic ? "bicubic" : "trigonometric";
    kv["quadrature.slope_cap"] = fmt(quadrature.slope_cap);
    kv["monitors.modulus"] = monitor_modulus ? "true" : "false";
    kv["monitors.sup_norm"] = monitor_sup ? "true" : "false";
    kv["monitors.l2"] = monitor_l2 ? "true" : "false";
    kv["monitors.lipschitz"] = monitor_lipschitz ? "true" : "false";
    kv["monitors.radius_cap"] = fmt(monitor_radius_cap);
    kv["monitors.pair_samples"] = std::to_string(monitor_pair_samples);
    kv["output_dir"] = output_dir;
    return kv;
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : to_map()) os << k << " = " << v << "\n";
    return os.str();
}

}  // namespace musk
