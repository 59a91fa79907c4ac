#pragma once

#include <optional>
#include <vector>

#include "plasmon/numerics.hpp"
#include "plasmon/types.hpp"

namespace plasmon::dynamics {

// N two-level emitters near the interface, in the frame rotating at the
// drive frequency. All energies are angular frequencies; rates and
// frequencies are usually expressed in units of the single-emitter gamma.
//
// Basis ordering: lexicographic tensor order, emitter 1 leftmost,
// |e> before |g>. For N=2: |ee>, |eg>, |ge>, |gg>.
struct EmitterSystem {
    int n_emitters = 2;
    std::vector<Vec3> positions_nm;          // one per emitter
    double omega0 = 0.0;                     // transition frequency, rad/s
    double detuning = 0.0;                   // omega0 - omega_drive
    std::vector<complex_t> rabi;             // drive Rabi frequency per emitter
    Eigen::MatrixXd omega12;                 // symmetric, zero diagonal
    Eigen::MatrixXd gamma;                   // symmetric PSD decay matrix
};

struct PopulationTrajectory {
    RealVector gamma_t;
    RealVector p_ee, p_eg, p_ge, p_gg;
};

// Raising/lowering operator of one emitter embedded in the N-emitter space.
ComplexMatrix raising_op(int n_emitters, int which);
ComplexMatrix lowering_op(int n_emitters, int which);

ComplexMatrix ground_state(int n_emitters);       // |g...g><g...g|
ComplexMatrix all_excited_state(int n_emitters);  // |e...e><e...e|

void validate(const EmitterSystem& sys);

// H = (Delta/2) sum_i (S_i^+ S_i^- - S_i^- S_i^+)
//   + sum_{i<j} Omega12_ij (S_i^+ S_j^- + S_j^+ S_i^-)
//   + (1/2) sum_i (Omega_i S_i^+ + conj(Omega_i) S_i^-)
ComplexMatrix build_hamiltonian(const EmitterSystem& sys);

// L(rho) = -i[H, rho]
//          - sum_ij gamma_ij (S_i^+ S_j^- rho + rho S_i^+ S_j^- - 2 S_j^- rho S_i^+),
// column-stacking vectorization.
ComplexMatrix build_liouvillian(const EmitterSystem& sys);

enum class Propagator { adaptive, exponential };

// Master-equation evolution sampled on t_grid (units of 1/gamma when the
// system matrices are in gamma units). Checks trace/Hermiticity/positivity
// of every output state.
numerics::ODESolution evolve(const EmitterSystem& sys, const ComplexMatrix& rho0,
                             const RealVector& t_grid,
                             Propagator prop = Propagator::adaptive);

// Kernel of the Liouvillian, Hermitized and trace-normalized. When the
// kernel is degenerate (exact Dicke point gamma_12 = gamma has a dark
// singlet), falls back to long-time propagation of rho0_hint
// (default |g...g><g...g|).
ComplexMatrix steady_state(const EmitterSystem& sys,
                           std::optional<ComplexMatrix> rho0_hint = std::nullopt);

PopulationTrajectory populations(const numerics::ODESolution& traj);

}  // namespace plasmon::dynamics
