#pragma once

#include <vector>

#include "plasmon/dynamics.hpp"
#include "plasmon/types.hpp"

namespace plasmon::correlations {

// Two far-field detectors looking back at the end of the interface.
// Directions are unit vectors; k is the wavenumber entering the phase
// factors (free-space 2 pi / lambda0 by default).
struct DetectorGeometry {
    Vec3 r1_hat;
    Vec3 r2_hat;
    double k = 0.0;                     // rad/nm
    std::vector<Vec3> positions_nm;     // emitter positions

    // Detectors in the x-z plane at +-theta0 from the +x axis.
    static DetectorGeometry symmetric(double theta0_rad, double k,
                                      std::vector<Vec3> positions_nm);
};

enum class DenominatorMode { product, literal };

struct CorrelationSeries {
    RealVector gamma_tau;
    RealVector g2;
    std::vector<complex_t> numerator;
    RealVector denominator;
};

// <S_p^+(0) S_q^+(tau) S_r^-(tau) S_s^-(0)> on the tau grid via the quantum
// regression theorem: Tr[S_q^+ S_r^- e^{L tau}(S_s^- rho_ref S_p^+)].
std::vector<complex_t> two_time(const dynamics::EmitterSystem& sys,
                                const ComplexMatrix& rho_ref, int p, int q, int r,
                                int s, const RealVector& tau_grid);

// I(R_hat) = sum_mn <S_m^+ S_n^-> e^{i k R_hat.(r_m - r_n)}
double intensity(const dynamics::EmitterSystem& sys, const ComplexMatrix& rho,
                 const DetectorGeometry& geom, int detector_index);

CorrelationSeries g2(const dynamics::EmitterSystem& sys, const DetectorGeometry& geom,
                     const RealVector& tau_grid,
                     DenominatorMode mode = DenominatorMode::product,
                     std::optional<ComplexMatrix> rho_ss = std::nullopt);

struct SweepEntry {
    double omega12_over_gamma;
    CorrelationSeries series;
};

std::vector<SweepEntry> g2_sweep(const dynamics::EmitterSystem& sys_base,
                                 const std::vector<double>& omega12_values,
                                 const DetectorGeometry& geom,
                                 const RealVector& tau_grid,
                                 DenominatorMode mode = DenominatorMode::product);

}  // namespace plasmon::correlations
