#pragma once

#include "plasmon/types.hpp"

namespace plasmon::spmode {

// Bound TM mode of a metal (z<0, eps1) / dielectric (z>0, eps2) interface.
// Lengths in nm, wavevectors in rad/nm. The mode goes as e^{i k_x x},
// e^{+i k_z2 z} for z>0 and e^{-i k_z1 z} for z<0, with Im(k_z_j) >= 0 so
// the field decays into both half-spaces.
struct SPModeSolution {
    complex_t eps1;
    complex_t eps2;
    double lambda0_nm = 0.0;
    double k0 = 0.0;
    complex_t n_eff;  // k_x / k0
    complex_t k_x;
    complex_t k_z1;
    complex_t k_z2;
    double lambda_sp_nm = 0.0;
    double L_prop_nm = 0.0;  // +inf for a lossless mode
    double delta_metal_nm = 0.0;
    double delta_diel_nm = 0.0;
};

// TM field components at a point, up to the overall amplitude E0.
struct FieldPoint {
    complex_t E_x;
    complex_t E_y;
    complex_t E_z;
    complex_t H_y;
};

// Parametric decay-rate budget of an emitter at height z0 above the interface.
struct DecayBudget {
    double gamma_rad = 0.0;
    double gamma_non_rad = 0.0;
    double gamma_sp = 0.0;
    double gamma_total = 0.0;
    double z0_nm = 0.0;
};

struct DecayCoefficients {
    double c_rad = 0.0;     // Hz, z-independent free-space channel
    double c_nr = 0.0;      // Hz nm^3, quenching ~ z^-3
    double c_sp = 0.0;      // Hz at z0 = 0, falls as e^{-2 z0 / delta_diel}
};

// n_eff = sqrt(eps1 eps2 / (eps1 + eps2)), branch with Im(n_eff) >= 0.
SPModeSolution solve_dispersion(complex_t eps1, complex_t eps2, double lambda0_nm);

FieldPoint field_at(const SPModeSolution& sol, double x_nm, double z_nm,
                    complex_t E0 = {1.0, 0.0});

DecayBudget decay_budget(double z0_nm, const DecayCoefficients& c,
                         const SPModeSolution& sol);

}  // namespace plasmon::spmode
