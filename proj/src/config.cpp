#include "plasmon/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "plasmon/materials.hpp"

namespace plasmon::config {

using nlohmann::json;

namespace {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <typename T>
void maybe(const json& j, const char* key, T& out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: parse error: ") + e.what());
    }

    RunConfig cfg;
    maybe(j, "lambda0_nm", cfg.lambda0_nm);
    if (j.contains("material")) {
        const auto& m = j.at("material");
        const std::string type = m.value("type", "constant");
        if (type == "constant") {
            cfg.material.is_table = false;
            cfg.material.eps_constant = {m.value("eps_re", -5.65), m.value("eps_im", 0.65)};
        } else if (type == "table") {
            cfg.material.is_table = true;
            cfg.material.table_path = m.at("path").get<std::string>();
        } else {
            throw std::runtime_error("config: material.type must be constant or table");
        }
    }
    maybe(j, "eps2", cfg.eps2);
    maybe(j, "z0_nm", cfg.z0_nm);
    maybe(j, "r12_nm", cfg.r12_nm);
    maybe(j, "gamma_hz", cfg.gamma_hz);
    maybe(j, "gamma12_over_gamma", cfg.gamma12_over_gamma);
    if (j.contains("omega12_over_gamma")) {
        const auto& w = j.at("omega12_over_gamma");
        cfg.omega12_over_gamma.clear();
        if (w.is_array()) {
            for (const auto& v : w) cfg.omega12_over_gamma.push_back(v.get<double>());
        } else {
            cfg.omega12_over_gamma.push_back(w.get<double>());
        }
    }
    if (j.contains("omega_drive_over_gamma")) {
        cfg.omega_drive_over_gamma =
            j.at("omega_drive_over_gamma").get<std::vector<double>>();
    }
    maybe(j, "detuning_over_gamma", cfg.detuning_over_gamma);
    maybe(j, "run_mode", cfg.run_mode);
    maybe(j, "initial_state", cfg.initial_state);
    maybe(j, "tau_max_over_gamma", cfg.tau_max_over_gamma);
    maybe(j, "n_tau", cfg.n_tau);
    maybe(j, "denominator", cfg.denominator);
    maybe(j, "detector_k", cfg.detector_k);
    maybe(j, "theta0_rad", cfg.theta0_rad);
    maybe(j, "theta_min", cfg.theta_min);
    maybe(j, "theta_max", cfg.theta_max);
    maybe(j, "n_theta", cfg.n_theta);
    maybe(j, "n_modes", cfg.n_modes);
    maybe(j, "n_points", cfg.n_points);
    maybe(j, "z_extent_nm", cfg.z_extent_nm);
    maybe(j, "t_max_over_gamma", cfg.t_max_over_gamma);
    maybe(j, "n_t", cfg.n_t);
    maybe(j, "output_dir", cfg.output_dir);

    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg)
{
    auto fail = [](const std::string& field) {
        throw std::runtime_error("config: invalid field: " + field);
    };
    if (!(cfg.lambda0_nm > 0.0)) fail("lambda0_nm");
    if (!(cfg.eps2 > 0.0)) fail("eps2");
    if (!(cfg.z0_nm > 0.0)) fail("z0_nm");
    if (!(cfg.r12_nm > 0.0)) fail("r12_nm");
    if (!(cfg.gamma_hz > 0.0)) fail("gamma_hz");
    if (cfg.gamma12_over_gamma < 0.0 || cfg.gamma12_over_gamma > 1.0) {
        fail("gamma12_over_gamma");
    }
    if (cfg.omega12_over_gamma.empty()) fail("omega12_over_gamma");
    for (double w : cfg.omega12_over_gamma) {
        if (!std::isfinite(w)) fail("omega12_over_gamma");
    }
    if (cfg.omega_drive_over_gamma.size() != 2) fail("omega_drive_over_gamma");
    if (cfg.run_mode != "driven" && cfg.run_mode != "pulsed") fail("run_mode");
    if (cfg.initial_state != "ee" && cfg.initial_state != "gg") fail("initial_state");
    if (!(cfg.tau_max_over_gamma > 0.0)) fail("tau_max_over_gamma");
    if (cfg.n_tau < 2) fail("n_tau");
    if (cfg.denominator != "product" && cfg.denominator != "literal") fail("denominator");
    if (cfg.detector_k != "free_space" && cfg.detector_k != "sp") fail("detector_k");
    if (!(cfg.theta_max > cfg.theta_min)) fail("theta_max");
    if (cfg.n_theta < 3) fail("n_theta");
    if (cfg.n_modes < 2) fail("n_modes");
    if (cfg.n_points < 2 * cfg.n_modes) fail("n_points");
    if (cfg.n_t < 2) fail("n_t");
    if (!(cfg.t_max_over_gamma > 0.0)) fail("t_max_over_gamma");
    if (cfg.material.is_table) {
        std::ifstream probe(cfg.material.table_path);
        if (!probe) fail("material.path");
    }
}

RunConfig preset(const std::string& name)
{
    RunConfig cfg;  // defaults already carry the silver/air parameter set
    if (name == "fig2") {
        cfg.output_dir = "out_fig2";
    } else if (name == "fig3") {
        cfg.output_dir = "out_fig3";
    } else if (name == "fig4") {
        cfg.omega12_over_gamma = {0.1, 0.5, 1.0, 2.0, 5.0};
        cfg.run_mode = "driven";
        cfg.output_dir = "out_fig4";
    } else if (name == "fig5") {
        cfg.omega12_over_gamma = {1.0};
        cfg.run_mode = "pulsed";
        cfg.initial_state = "ee";
        cfg.output_dir = "out_fig5";
    } else {
        throw std::runtime_error("config: unknown preset: " + name);
    }
    validate(cfg);
    return cfg;
}

std::string canonical_string(const RunConfig& cfg)
{
    std::ostringstream ss;
    ss << "lambda0_nm=" << fmt(cfg.lambda0_nm)
       << ";material=" << (cfg.material.is_table ? "table:" + cfg.material.table_path
                                                 : "constant:" +
                                                       fmt(cfg.material.eps_constant.real()) +
                                                       "," +
                                                       fmt(cfg.material.eps_constant.imag()))
       << ";eps2=" << fmt(cfg.eps2) << ";z0_nm=" << fmt(cfg.z0_nm)
       << ";r12_nm=" << fmt(cfg.r12_nm) << ";gamma_hz=" << fmt(cfg.gamma_hz)
       << ";gamma12=" << fmt(cfg.gamma12_over_gamma) << ";omega12=";
    for (double w : cfg.omega12_over_gamma) ss << fmt(w) << ",";
    ss << ";drive=";
    for (double w : cfg.omega_drive_over_gamma) ss << fmt(w) << ",";
    ss << ";detuning=" << fmt(cfg.detuning_over_gamma) << ";mode=" << cfg.run_mode
       << ";init=" << cfg.initial_state << ";tau_max=" << fmt(cfg.tau_max_over_gamma)
       << ";n_tau=" << cfg.n_tau << ";denom=" << cfg.denominator
       << ";k=" << cfg.detector_k << ";theta0=" << fmt(cfg.theta0_rad)
       << ";theta=" << fmt(cfg.theta_min) << "," << fmt(cfg.theta_max) << ","
       << cfg.n_theta << ";M=" << cfg.n_modes << ";n_points=" << cfg.n_points
       << ";z_extent=" << fmt(cfg.z_extent_nm) << ";t_max=" << fmt(cfg.t_max_over_gamma)
       << ";n_t=" << cfg.n_t;
    return ss.str();
}

std::string config_hash(const RunConfig& cfg)
{
    // FNV-1a 64-bit over the canonical string.
    const std::string s = canonical_string(cfg);
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

complex_t resolve_eps1(const RunConfig& cfg)
{
    if (!cfg.material.is_table) {
        return cfg.material.eps_constant;
    }
    const auto table = materials::load_table(cfg.material.table_path);
    return materials::permittivity_at(table, cfg.lambda0_nm);
}

}  // namespace plasmon::config
