#include "plasmon/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace plasmon::correlations {

using dynamics::lowering_op;
using dynamics::raising_op;
using numerics::unvec;
using numerics::vec;

DetectorGeometry DetectorGeometry::symmetric(double theta0_rad, double k,
                                             std::vector<Vec3> positions_nm)
{
    DetectorGeometry g;
    g.r1_hat = Vec3(std::cos(theta0_rad), 0.0, std::sin(theta0_rad));
    g.r2_hat = Vec3(std::cos(theta0_rad), 0.0, -std::sin(theta0_rad));
    g.k = k;
    g.positions_nm = std::move(positions_nm);
    return g;
}

std::vector<complex_t> two_time(const dynamics::EmitterSystem& sys,
                                const ComplexMatrix& rho_ref, int p, int q, int r,
                                int s, const RealVector& tau_grid)
{
    const int n = sys.n_emitters;
    if (p < 0 || p >= n || q < 0 || q >= n || r < 0 || r >= n || s < 0 || s >= n) {
        throw std::out_of_range("two_time: emitter index");
    }
    const ComplexMatrix L = dynamics::build_liouvillian(sys);
    const ComplexMatrix chi0 = lowering_op(n, s) * rho_ref * raising_op(n, p);
    const ComplexMatrix obs = raising_op(n, q) * lowering_op(n, r);
    const Eigen::Index dim = chi0.rows();

    std::vector<complex_t> out;
    out.reserve(static_cast<size_t>(tau_grid.size()));
    ComplexVector v = vec(chi0);
    double tau_prev = 0.0;
    for (Eigen::Index i = 0; i < tau_grid.size(); ++i) {
        const double tau = tau_grid[i];
        if (tau < tau_prev) throw std::invalid_argument("two_time: tau grid decreasing");
        if (tau > tau_prev) {
            v = numerics::expm_action(L, v, tau - tau_prev);
            tau_prev = tau;
        }
        out.push_back((obs * unvec(v, dim, dim)).trace());
    }
    return out;
}

namespace {

complex_t coherence_sum(const dynamics::EmitterSystem& sys, const ComplexMatrix& rho,
                        const Vec3& r_hat, double k,
                        const std::vector<Vec3>& pos)
{
    const int n = sys.n_emitters;
    complex_t acc = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            const complex_t corr =
                (raising_op(n, m) * lowering_op(n, nn) * rho).trace();
            const double phase = k * r_hat.dot(pos[static_cast<size_t>(m)] -
                                               pos[static_cast<size_t>(nn)]);
            acc += corr * std::exp(iu * phase);
        }
    }
    return acc;
}

}  // namespace

double intensity(const dynamics::EmitterSystem& sys, const ComplexMatrix& rho,
                 const DetectorGeometry& geom, int detector_index)
{
    if (geom.positions_nm.size() != static_cast<size_t>(sys.n_emitters)) {
        throw std::invalid_argument("intensity: geometry/emitter count mismatch");
    }
    const Vec3& r_hat = detector_index == 0 ? geom.r1_hat : geom.r2_hat;
    const complex_t val = coherence_sum(sys, rho, r_hat, geom.k, geom.positions_nm);
    if (std::abs(val.imag()) > 1e-10 * std::max(std::abs(val), 1.0)) {
        throw std::runtime_error("intensity: imaginary residue too large");
    }
    return val.real();
}

CorrelationSeries g2(const dynamics::EmitterSystem& sys, const DetectorGeometry& geom,
                     const RealVector& tau_grid, DenominatorMode mode,
                     std::optional<ComplexMatrix> rho_ss)
{
    const int n = sys.n_emitters;
    if (geom.positions_nm.size() != static_cast<size_t>(n)) {
        throw std::invalid_argument("g2: geometry/emitter count mismatch");
    }
    const ComplexMatrix rho = rho_ss ? *rho_ss : dynamics::steady_state(sys);

    const double i1 = intensity(sys, rho, geom, 0);
    const double i2 = intensity(sys, rho, geom, 1);
    const double denom = mode == DenominatorMode::product ? i1 * i2 : i1 * i1;
    if (std::abs(denom) < 1e-14) {
        throw std::runtime_error("g2: zero denominator (no steady-state excitation)");
    }

    const Eigen::Index nt = tau_grid.size();
    CorrelationSeries series;
    series.gamma_tau = tau_grid;
    series.numerator.assign(static_cast<size_t>(nt), complex_t{0.0, 0.0});
    series.denominator = RealVector::Constant(nt, denom);

    const auto& pos = geom.positions_nm;
    for (int p = 0; p < n; ++p) {
        for (int s = 0; s < n; ++s) {
            std::vector<std::vector<complex_t>> cached(
                static_cast<size_t>(n) * n);
            for (int q = 0; q < n; ++q) {
                for (int r = 0; r < n; ++r) {
                    cached[static_cast<size_t>(q) * n + r] =
                        two_time(sys, rho, p, q, r, s, tau_grid);
                }
            }
            for (int q = 0; q < n; ++q) {
                for (int r = 0; r < n; ++r) {
                    const double phase =
                        geom.k * (geom.r1_hat.dot(pos[static_cast<size_t>(p)] -
                                                  pos[static_cast<size_t>(s)]) +
                                  geom.r2_hat.dot(pos[static_cast<size_t>(q)] -
                                                  pos[static_cast<size_t>(r)]));
                    const complex_t ph = std::exp(iu * phase);
                    const auto& g = cached[static_cast<size_t>(q) * n + r];
                    for (Eigen::Index i = 0; i < nt; ++i) {
                        series.numerator[static_cast<size_t>(i)] +=
                            ph * g[static_cast<size_t>(i)];
                    }
                }
            }
        }
    }

    series.g2.resize(nt);
    for (Eigen::Index i = 0; i < nt; ++i) {
        const complex_t num = series.numerator[static_cast<size_t>(i)];
        if (std::abs(num.imag()) > 1e-10 * std::max(std::abs(num), 1.0)) {
            throw std::runtime_error("g2: numerator imaginary residue too large");
        }
        series.g2[i] = num.real() / denom;
    }
    return series;
}

std::vector<SweepEntry> g2_sweep(const dynamics::EmitterSystem& sys_base,
                                 const std::vector<double>& omega12_values,
                                 const DetectorGeometry& geom,
                                 const RealVector& tau_grid, DenominatorMode mode)
{
    std::vector<SweepEntry> out;
    out.reserve(omega12_values.size());
    for (double w : omega12_values) {
        if (!std::isfinite(w)) {
            throw std::invalid_argument("g2_sweep: non-finite omega12");
        }
        dynamics::EmitterSystem sys = sys_base;
        for (int i = 0; i < sys.n_emitters; ++i) {
            for (int j = 0; j < sys.n_emitters; ++j) {
                if (i != j) sys.omega12(i, j) = w;
            }
        }
        out.push_back({w, g2(sys, geom, tau_grid, mode)});
    }
    return out;
}

}  // namespace plasmon::correlations
