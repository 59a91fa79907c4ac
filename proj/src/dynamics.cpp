#include "plasmon/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace plasmon::dynamics {

using numerics::kron;
using numerics::unvec;
using numerics::vec;

namespace {

ComplexMatrix embed(int n_emitters, int which, const ComplexMatrix& op)
{
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < n_emitters; ++i) {
        out = kron(out, i == which ? op : ComplexMatrix::Identity(2, 2));
    }
    return out;
}

void check_state(const ComplexMatrix& rho, double t)
{
    const double tr_err = std::abs(rho.trace() - complex_t{1.0, 0.0});
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (tr_err > 1e-8 || herm_err > 1e-9) {
        throw std::runtime_error(
            "evolve: density matrix invariant violated at t = " + std::to_string(t));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ((rho + rho.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-7) {
        throw std::runtime_error(
            "evolve: negative eigenvalue at t = " + std::to_string(t));
    }
}

}  // namespace

ComplexMatrix raising_op(int n_emitters, int which)
{
    if (which < 0 || which >= n_emitters) {
        throw std::out_of_range("raising_op: emitter index");
    }
    ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
    sp(0, 1) = 1.0;  // |e><g|
    return embed(n_emitters, which, sp);
}

ComplexMatrix lowering_op(int n_emitters, int which)
{
    if (which < 0 || which >= n_emitters) {
        throw std::out_of_range("lowering_op: emitter index");
    }
    ComplexMatrix sm = ComplexMatrix::Zero(2, 2);
    sm(1, 0) = 1.0;  // |g><e|
    return embed(n_emitters, which, sm);
}

ComplexMatrix ground_state(int n_emitters)
{
    const Eigen::Index dim = Eigen::Index(1) << n_emitters;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(dim - 1, dim - 1) = 1.0;
    return rho;
}

ComplexMatrix all_excited_state(int n_emitters)
{
    const Eigen::Index dim = Eigen::Index(1) << n_emitters;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return rho;
}

void validate(const EmitterSystem& sys)
{
    const int n = sys.n_emitters;
    if (n < 1) throw std::invalid_argument("EmitterSystem: need >= 1 emitter");
    if (static_cast<int>(sys.rabi.size()) != n) {
        throw std::invalid_argument("EmitterSystem: rabi size mismatch");
    }
    if (sys.omega12.rows() != n || sys.omega12.cols() != n ||
        sys.gamma.rows() != n || sys.gamma.cols() != n) {
        throw std::invalid_argument("EmitterSystem: matrix size mismatch");
    }
    if ((sys.omega12 - sys.omega12.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        sys.omega12.diagonal().cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("EmitterSystem: omega12 must be symmetric, zero diagonal");
    }
    if ((sys.gamma - sys.gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("EmitterSystem: gamma must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.gamma, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, sys.gamma.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
        throw std::invalid_argument("EmitterSystem: gamma matrix not PSD");
    }
    if (!sys.positions_nm.empty()) {
        if (static_cast<int>(sys.positions_nm.size()) != n) {
            throw std::invalid_argument("EmitterSystem: positions size mismatch");
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if ((sys.positions_nm[i] - sys.positions_nm[j]).norm() < 1e-12) {
                    throw std::invalid_argument("EmitterSystem: coincident positions");
                }
            }
        }
    }
}

ComplexMatrix build_hamiltonian(const EmitterSystem& sys)
{
    validate(sys);
    const int n = sys.n_emitters;
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix sp = raising_op(n, i);
        const ComplexMatrix sm = lowering_op(n, i);
        h += (sys.detuning / 2.0) * (sp * sm - sm * sp);
        h += 0.5 * (sys.rabi[i] * sp + std::conj(sys.rabi[i]) * sm);
        for (int j = i + 1; j < n; ++j) {
            const ComplexMatrix spj = raising_op(n, j);
            const ComplexMatrix smj = lowering_op(n, j);
            h += sys.omega12(i, j) * (sp * smj + spj * sm);
        }
    }
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
        throw std::runtime_error("build_hamiltonian: non-Hermitian result");
    }
    return h;
}

ComplexMatrix build_liouvillian(const EmitterSystem& sys)
{
    const ComplexMatrix h = build_hamiltonian(sys);
    const int n = sys.n_emitters;
    const Eigen::Index dim = h.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    // vec(A rho B) = kron(B^T, A) vec(rho)
    ComplexMatrix L = -iu * (kron(id, h) - kron(h.transpose(), id));
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix spi = raising_op(n, i);
        for (int j = 0; j < n; ++j) {
            const double g = sys.gamma(i, j);
            if (g == 0.0) continue;
            const ComplexMatrix smj = lowering_op(n, j);
            const ComplexMatrix pm = spi * smj;
            L -= g * (kron(id, pm) + kron(pm.transpose(), id) -
                      2.0 * kron(spi.transpose(), smj));
        }
    }
    return L;
}

numerics::ODESolution evolve(const EmitterSystem& sys, const ComplexMatrix& rho0,
                             const RealVector& t_grid, Propagator prop)
{
    const ComplexMatrix L = build_liouvillian(sys);
    const Eigen::Index dim = Eigen::Index(1) << sys.n_emitters;
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw std::invalid_argument("evolve: rho0 dimension mismatch");
    }
    check_state(rho0, t_grid.size() ? t_grid[0] : 0.0);

    numerics::ODESolution sol;
    if (prop == Propagator::adaptive) {
        auto rhs = [&L, dim](double, const ComplexMatrix& rho) {
            return unvec(ComplexVector(L * vec(rho)), dim, dim);
        };
        sol = numerics::integrate(rhs, rho0, t_grid);
    } else {
        sol.t = t_grid;
        ComplexVector v = vec(rho0);
        sol.states.push_back(rho0);
        for (Eigen::Index g = 1; g < t_grid.size(); ++g) {
            v = numerics::expm_action(L, v, t_grid[g] - t_grid[g - 1]);
            sol.states.push_back(unvec(v, dim, dim));
        }
    }
    for (size_t i = 0; i < sol.states.size(); ++i) {
        check_state(sol.states[i], sol.t[static_cast<Eigen::Index>(i)]);
    }
    return sol;
}

ComplexMatrix steady_state(const EmitterSystem& sys, std::optional<ComplexMatrix> rho0_hint)
{
    const ComplexMatrix L = build_liouvillian(sys);
    const Eigen::Index dim = Eigen::Index(1) << sys.n_emitters;

    ComplexMatrix rho;
    try {
        const ComplexVector v = numerics::null_vector(L);
        rho = unvec(v, dim, dim);
    } catch (const numerics::DegenerateNullSpace&) {
        // Multiple stationary states; the physical one is selected by the
        // initial condition. Propagate for a long time instead.
        ComplexMatrix rho0 = rho0_hint.value_or(ground_state(sys.n_emitters));
        ComplexVector v = vec(rho0);
        v = numerics::expm_action(L, v, 400.0);
        rho = unvec(v, dim, dim);
    }

    rho = ((rho + rho.adjoint()) / 2.0).eval();
    const complex_t tr = rho.trace();
    if (std::abs(tr) < 1e-12) {
        throw std::runtime_error("steady_state: trace-normalization failure");
    }
    rho /= tr;

    const double resid = (L * vec(rho)).norm();
    const double scale = L.norm();
    if (resid > 1e-9 * std::max(scale, 1.0)) {
        throw std::runtime_error("steady_state: residual " + std::to_string(resid) +
                                 " exceeds tolerance");
    }
    return rho;
}

PopulationTrajectory populations(const numerics::ODESolution& traj)
{
    if (traj.states.empty() || traj.states[0].rows() != 4) {
        throw std::invalid_argument("populations: expected a 2-emitter trajectory");
    }
    PopulationTrajectory p;
    const Eigen::Index n = traj.t.size();
    p.gamma_t = traj.t;
    p.p_ee.resize(n);
    p.p_eg.resize(n);
    p.p_ge.resize(n);
    p.p_gg.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& rho = traj.states[static_cast<size_t>(i)];
        p.p_ee[i] = rho(0, 0).real();
        p.p_eg[i] = rho(1, 1).real();
        p.p_ge[i] = rho(2, 2).real();
        p.p_gg[i] = rho(3, 3).real();
    }
    return p;
}

}  // namespace plasmon::dynamics
