#pragma once

#include <string>
#include <vector>

#include "plasmon/config.hpp"
#include "plasmon/correlations.hpp"
#include "plasmon/dynamics.hpp"
#include "plasmon/scattering.hpp"
#include "plasmon/spmode.hpp"

namespace plasmon::runner {

inline constexpr const char* kVersion = "0.1.0";

// One row of the comparison report: a published reference value next to
// what this code computes for the same quantity.
struct Claim {
    std::string id;
    double reference = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    std::string status;  // "match" | "deviation" | "informational"
    std::string note;
};

struct Report {
    std::vector<Claim> claims;
};

spmode::SPModeSolution dispersion_for(const config::RunConfig& cfg);

// Emitter pair in gamma units; omega12 in units of gamma. Pulsed mode has
// the drive off during evolution.
dynamics::EmitterSystem emitter_system(const config::RunConfig& cfg, double omega12,
                                       bool driven);

// Detector directions at +-theta0; theta0 from config or from the far-field
// lobe finder when unset.
correlations::DetectorGeometry detector_geometry(const config::RunConfig& cfg,
                                                 const spmode::SPModeSolution& sol);

double resolve_theta0(const config::RunConfig& cfg, const spmode::SPModeSolution& sol);

void run_dispersion(const config::RunConfig& cfg);
void run_farfield(const config::RunConfig& cfg);
void run_transmission(const config::RunConfig& cfg);
void run_populations(const config::RunConfig& cfg);
void run_g2(const config::RunConfig& cfg);
void run_sweep(const config::RunConfig& cfg);

// Runs all presets into out_dir and writes report.json / report.txt.
Report run_report(const std::string& out_dir);

}  // namespace plasmon::runner
