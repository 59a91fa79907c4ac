#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon::config {

struct MaterialSpec {
    bool is_table = false;
    complex_t eps_constant{-5.65, 0.65};
    std::string table_path;
};

// One run of the pipeline. All rates are ratios to the single-emitter gamma
// so the outputs are independent of the absolute rate convention.
struct RunConfig {
    double lambda0_nm = 450.0;
    MaterialSpec material;
    double eps2 = 1.0;
    double z0_nm = 20.0;
    double r12_nm = 40.0;
    double gamma_hz = 2.9e10;
    double gamma12_over_gamma = 1.0;
    std::vector<double> omega12_over_gamma{1.0};  // >1 entry means a sweep
    std::vector<double> omega_drive_over_gamma{1.0, 1.0};
    double detuning_over_gamma = 0.0;
    std::string run_mode = "driven";  // "driven" | "pulsed"
    std::string initial_state = "ee";
    double tau_max_over_gamma = 20.0;
    int n_tau = 401;
    std::string denominator = "product";  // "product" | "literal"
    std::string detector_k = "free_space";  // "free_space" | "sp"
    double theta0_rad = -1.0;  // <0 -> take the far-field lobe angle
    double theta_min = -1.5;
    double theta_max = 1.5;
    int n_theta = 2001;
    int n_modes = 40;
    int n_points = 4000;
    double z_extent_nm = 0.0;  // 0 -> auto
    double t_max_over_gamma = 6.0;
    int n_t = 301;
    std::string output_dir = "out";
};

RunConfig load(const std::string& path);
void validate(const RunConfig& cfg);

// fig2: radiative-mode transmissivities; fig3: far-field lobes;
// fig4: g2 sweep over omega12; fig5: joint-state populations.
RunConfig preset(const std::string& name);

// Canonical serialization; also the input of the output-file config hash.
std::string canonical_string(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

complex_t resolve_eps1(const RunConfig& cfg);

}  // namespace plasmon::config
