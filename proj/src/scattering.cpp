#include "plasmon/scattering.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/SVD>

namespace plasmon::scattering {

namespace {

// Per-medium amplitudes of the facet profile, continuous where the field is.
struct Profile {
    complex_t amp_metal;   // coefficient of e^{-i k_z1 z}, z < 0
    complex_t amp_diel;    // coefficient of e^{+i k_z2 z}, z > 0
};

Profile facet_profile(const spmode::SPModeSolution& sol, ProfileComponent component)
{
    Profile p;
    if (component == ProfileComponent::H_y) {
        p.amp_diel = -sol.eps2 * sol.k0 / sol.k_z2;
        p.amp_metal = sol.eps1 * sol.k0 / sol.k_z1;
    } else {
        p.amp_diel = -sol.k_x / sol.k_z2;
        p.amp_metal = sol.k_x / sol.k_z1;
    }
    return p;
}

complex_t profile_value(const Profile& p, const spmode::SPModeSolution& sol, double z)
{
    if (z >= 0.0) {
        return p.amp_diel * std::exp(iu * sol.k_z2 * z);
    }
    return p.amp_metal * std::exp(-iu * sol.k_z1 * z);
}

complex_t adaptive_simpson(const std::function<complex_t(double)>& f, double a,
                           double b, double tol, int depth, complex_t fa, complex_t fm,
                           complex_t fb, complex_t whole)
{
    const double m = 0.5 * (a + b);
    const complex_t flm = f(0.5 * (a + m));
    const complex_t frm = f(0.5 * (m + b));
    const complex_t left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const complex_t right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const complex_t s2 = left + right;
    if (depth <= 0 || std::abs(s2 - whole) <= 15.0 * tol) {
        return s2 + (s2 - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, tol / 2.0, depth - 1, fa, flm, fm, left) +
           adaptive_simpson(f, m, b, tol / 2.0, depth - 1, fm, frm, fb, right);
}

complex_t integrate_adaptive(const std::function<complex_t(double)>& f, double a,
                             double b, double tol)
{
    const complex_t fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const complex_t whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, tol, 48, fa, fm, fb, whole);
}

}  // namespace

complex_t farfield_integral_closed_form(const spmode::SPModeSolution& sol, double theta,
                                        ProfileComponent component)
{
    const Profile p = facet_profile(sol, component);
    if (sol.k_z1.imag() <= 0.0 || sol.k_z2.imag() <= 0.0) {
        throw std::runtime_error("farfield: non-decaying profile");
    }
    const double ks = sol.k0 * std::sin(theta);
    // int_0^inf e^{i(k_z2 + ks) z} dz + int_-inf^0 e^{i(ks - k_z1) z} dz
    return iu * (p.amp_diel / (sol.k_z2 + ks) + p.amp_metal / (sol.k_z1 - ks));
}

complex_t farfield_integral_quadrature(const spmode::SPModeSolution& sol, double theta,
                                       ProfileComponent component)
{
    const Profile p = facet_profile(sol, component);
    if (sol.k_z1.imag() <= 0.0 || sol.k_z2.imag() <= 0.0) {
        throw std::runtime_error("farfield: non-decaying profile");
    }
    const double ks = sol.k0 * std::sin(theta);
    auto f = [&](double z) {
        return profile_value(p, sol, z) * std::exp(iu * (ks * z));
    };
    const double z_up = 45.0 / sol.k_z2.imag();
    const double z_dn = 45.0 / sol.k_z1.imag();
    const double scale = std::abs(p.amp_diel) / sol.k_z2.imag();
    return integrate_adaptive(f, -z_dn, 0.0, 1e-12 * scale) +
           integrate_adaptive(f, 0.0, z_up, 1e-12 * scale);
}

AngularSpectrum farfield(const spmode::SPModeSolution& sol, const RealVector& theta_grid,
                         ProfileComponent component)
{
    AngularSpectrum spec;
    spec.theta_rad = theta_grid;
    spec.intensity.resize(theta_grid.size());
    for (Eigen::Index i = 0; i < theta_grid.size(); ++i) {
        const double th = theta_grid[i];
        const complex_t F = farfield_integral_closed_form(sol, th, component);
        const double c = std::cos(th);
        spec.intensity[i] = c * c / sol.lambda_sp_nm * std::norm(F);
    }
    const double peak = spec.intensity.maxCoeff();
    if (peak > 0.0) spec.intensity /= peak;
    spec.lobes = find_lobes(spec.theta_rad, spec.intensity);
    return spec;
}

std::vector<double> find_lobes(const RealVector& theta_rad, const RealVector& intensity)
{
    if (theta_rad.size() < 3) {
        throw std::invalid_argument("find_lobes: need at least 3 grid points");
    }
    std::vector<double> lobes;
    for (Eigen::Index i = 1; i + 1 < intensity.size(); ++i) {
        const double y0 = intensity[i - 1], y1 = intensity[i], y2 = intensity[i + 1];
        if (y1 > y0 && y1 > y2) {
            const double denom = y0 - 2.0 * y1 + y2;
            double th = theta_rad[i];
            if (denom < 0.0) {
                const double delta = 0.5 * (y0 - y2) / denom;
                th += delta * (theta_rad[i + 1] - theta_rad[i]);
            }
            lobes.push_back(th);
        }
    }
    return lobes;
}

RadiativeModeSet mode_match_profile(const ComplexVector& profile, double k0,
                                    double incident_flux, double z_extent_nm,
                                    int n_modes)
{
    const int n_points = static_cast<int>(profile.size());
    if (n_modes < 2) throw std::invalid_argument("mode_match: need M >= 2");
    if (n_points < 2 * n_modes) {
        throw std::invalid_argument("mode_match: need n_points >= 2M");
    }
    const double two_z = 2.0 * z_extent_nm;

    ComplexMatrix A(n_points, n_modes);
    std::vector<double> q(static_cast<size_t>(n_modes));
    for (int m = 0; m < n_modes; ++m) {
        q[static_cast<size_t>(m)] = static_cast<double>(m) * k0 / (n_modes - 1);
    }
    for (int i = 0; i < n_points; ++i) {
        const double z = -z_extent_nm + two_z * i / (n_points - 1);
        for (int m = 0; m < n_modes; ++m) {
            A(i, m) = std::exp(iu * (q[static_cast<size_t>(m)] * z));
        }
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12) {
        throw std::runtime_error("mode_match: ill-conditioned collocation system");
    }
    const ComplexVector T = svd.solve(profile);
    const double resid = (A * T - profile).norm() / profile.norm();

    RadiativeModeSet set;
    set.q_over_k0.resize(static_cast<size_t>(n_modes));
    set.amplitudes.resize(static_cast<size_t>(n_modes));
    set.flux_weights.resize(static_cast<size_t>(n_modes));
    set.residual = resid;
    double transmitted = 0.0;
    for (int m = 0; m < n_modes; ++m) {
        const double qm = q[static_cast<size_t>(m)];
        const double kxm2 = k0 * k0 - qm * qm;
        double w = (kxm2 > 0.0 ? std::sqrt(kxm2) : 0.0) * two_z;
        if (m == 0 || m == n_modes - 1) w *= 0.5;  // trapezoid endpoints
        set.q_over_k0[static_cast<size_t>(m)] = qm / k0;
        set.amplitudes[static_cast<size_t>(m)] = T(m);
        set.flux_weights[static_cast<size_t>(m)] = w / incident_flux;
        transmitted += w * std::norm(T(m));
    }
    set.total_transmissivity = transmitted / incident_flux;
    return set;
}

RadiativeModeSet mode_match(const spmode::SPModeSolution& sol, const ModeMatchOptions& opts)
{
    if (opts.n_modes < 2) throw std::invalid_argument("mode_match: need M >= 2");
    const Profile p = facet_profile(sol, ProfileComponent::H_y);

    // Default extent makes the mode spacing k0/(M-1) match the orthogonality
    // spacing pi/z_extent of the collocation window, and always covers at
    // least six decay lengths on each side.
    double z_ext = opts.z_extent_nm;
    if (z_ext <= 0.0) {
        z_ext = std::max(pi * (opts.n_modes - 1) / sol.k0,
                         6.0 * std::max(sol.delta_diel_nm, sol.delta_metal_nm));
    }
    if (z_ext < 6.0 * std::max(sol.delta_diel_nm, sol.delta_metal_nm)) {
        throw std::invalid_argument("mode_match: z_extent below 6 decay lengths");
    }

    ComplexVector h(opts.n_points);
    for (int i = 0; i < opts.n_points; ++i) {
        const double z = -z_ext + 2.0 * z_ext * i / (opts.n_points - 1);
        h(i) = profile_value(p, sol, z);
    }

    // Incident x-flux of the SP profile, per medium, in closed form:
    // Re(k_x / eps_j) |amp_j|^2 * delta_j / 2.
    const double flux_diel = (sol.k_x / sol.eps2).real() * std::norm(p.amp_diel) *
                             sol.delta_diel_nm / 2.0;
    const double flux_metal = (sol.k_x / sol.eps1).real() * std::norm(p.amp_metal) *
                              sol.delta_metal_nm / 2.0;
    const double incident = flux_diel + flux_metal;
    if (incident <= 0.0) {
        throw std::runtime_error("mode_match: non-positive incident flux");
    }
    return mode_match_profile(h, sol.k0, incident, z_ext, opts.n_modes);
}

}  // namespace plasmon::scattering
