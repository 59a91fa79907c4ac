#pragma once

#include <vector>

#include "plasmon/spmode.hpp"
#include "plasmon/types.hpp"

namespace plasmon::scattering {

struct AngularSpectrum {
    RealVector theta_rad;
    RealVector intensity;        // normalized so max = 1
    std::vector<double> lobes;   // strict local maxima, ascending
};

struct RadiativeModeSet {
    std::vector<double> q_over_k0;       // transverse wavenumbers / k0, in [0,1]
    std::vector<complex_t> amplitudes;   // T_m
    std::vector<double> flux_weights;
    double total_transmissivity = 0.0;
    double residual = 0.0;               // relative matching residual
};

// Which field component of the SP profile feeds the end-facet integral.
enum class ProfileComponent { H_y, E_z };

struct ModeMatchOptions {
    int n_modes = 40;
    double z_extent_nm = 0.0;   // 0 -> 6 decay lengths each side
    int n_points = 400;
};

// I(theta) ~ (cos^2 theta / lambda_SP) |int dz profile(z) e^{i k0 z sin theta}|^2,
// z-integral in closed form (two one-sided exponentials), max-normalized.
AngularSpectrum farfield(const spmode::SPModeSolution& sol, const RealVector& theta_grid,
                         ProfileComponent component = ProfileComponent::H_y);

// The same integral by adaptive quadrature, for cross-checking.
complex_t farfield_integral_quadrature(const spmode::SPModeSolution& sol, double theta,
                                       ProfileComponent component = ProfileComponent::H_y);
complex_t farfield_integral_closed_form(const spmode::SPModeSolution& sol, double theta,
                                        ProfileComponent component = ProfileComponent::H_y);

// Strict local maxima refined by parabolic interpolation, ascending.
std::vector<double> find_lobes(const RealVector& theta_rad, const RealVector& intensity);

// Least-squares expansion of the facet profile into equally spaced
// propagating plane-wave modes phi_m(z) = e^{i q_m z}, q_m = m k0/(M-1),
// collocated at n_points equally spaced z in [-z_extent, z_extent].
RadiativeModeSet mode_match(const spmode::SPModeSolution& sol, const ModeMatchOptions& opts);

// Lower-level entry used by mode_match and the tests: profile samples at
// the collocation points plus the incident flux computed from them.
RadiativeModeSet mode_match_profile(const ComplexVector& profile, double k0,
                                    double incident_flux, double z_extent_nm,
                                    int n_modes);

}  // namespace plasmon::scattering
