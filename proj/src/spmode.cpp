#include "plasmon/spmode.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace plasmon::spmode {

namespace {

// Principal square root flipped onto the Im >= 0 branch.
complex_t sqrt_upper(complex_t z)
{
    complex_t r = std::sqrt(z);
    if (r.imag() < 0.0) r = -r;
    return r;
}

}  // namespace

SPModeSolution solve_dispersion(complex_t eps1, complex_t eps2, double lambda0_nm)
{
    if (!std::isfinite(eps1.real()) || !std::isfinite(eps1.imag()) ||
        !std::isfinite(eps2.real()) || !std::isfinite(eps2.imag()) ||
        !std::isfinite(lambda0_nm) || lambda0_nm <= 0.0) {
        throw std::invalid_argument("solve_dispersion: non-finite input");
    }
    const complex_t denom = eps1 + eps2;
    if (std::abs(denom) < 1e-14 * (std::abs(eps1) + std::abs(eps2))) {
        throw std::invalid_argument("solve_dispersion: eps1 + eps2 pole");
    }

    SPModeSolution sol;
    sol.eps1 = eps1;
    sol.eps2 = eps2;
    sol.lambda0_nm = lambda0_nm;
    sol.k0 = 2.0 * pi / lambda0_nm;

    sol.n_eff = sqrt_upper(eps1 * eps2 / denom);
    sol.k_x = sol.n_eff * sol.k0;
    sol.k_z1 = sqrt_upper(eps1 * sol.k0 * sol.k0 - sol.k_x * sol.k_x);
    sol.k_z2 = sqrt_upper(eps2 * sol.k0 * sol.k0 - sol.k_x * sol.k_x);

    sol.lambda_sp_nm = lambda0_nm / sol.n_eff.real();
    const double im_kx = sol.k_x.imag();
    sol.L_prop_nm = im_kx > 0.0 ? 1.0 / (2.0 * im_kx)
                                : std::numeric_limits<double>::infinity();
    sol.delta_metal_nm = sol.k_z1.imag() > 0.0
                             ? 1.0 / sol.k_z1.imag()
                             : std::numeric_limits<double>::infinity();
    sol.delta_diel_nm = sol.k_z2.imag() > 0.0
                            ? 1.0 / sol.k_z2.imag()
                            : std::numeric_limits<double>::infinity();
    return sol;
}

FieldPoint field_at(const SPModeSolution& sol, double x_nm, double z_nm, complex_t E0)
{
    FieldPoint f;
    f.E_y = 0.0;
    const complex_t phase_x = std::exp(iu * sol.k_x * x_nm);
    if (z_nm >= 0.0) {
        // z-wavevector is +k_z2, amplitude ratio from k.E = 0.
        const complex_t amp = E0 * phase_x * std::exp(iu * sol.k_z2 * z_nm);
        f.E_x = amp;
        f.E_z = -(sol.k_x / sol.k_z2) * amp;
        f.H_y = -(sol.eps2 * sol.k0 / sol.k_z2) * amp;
    } else {
        // z-wavevector is -k_z1, decaying into the metal.
        const complex_t amp = E0 * phase_x * std::exp(-iu * sol.k_z1 * z_nm);
        f.E_x = amp;
        f.E_z = (sol.k_x / sol.k_z1) * amp;
        f.H_y = (sol.eps1 * sol.k0 / sol.k_z1) * amp;
    }
    return f;
}

DecayBudget decay_budget(double z0_nm, const DecayCoefficients& c,
                         const SPModeSolution& sol)
{
    if (!(z0_nm > 0.0)) {
        throw std::invalid_argument("decay_budget: z0 must be positive");
    }
    if (c.c_rad < 0.0 || c.c_nr < 0.0 || c.c_sp < 0.0) {
        throw std::invalid_argument("decay_budget: negative coefficient");
    }
    DecayBudget b;
    b.z0_nm = z0_nm;
    b.gamma_rad = c.c_rad;
    b.gamma_non_rad = c.c_nr / (z0_nm * z0_nm * z0_nm);
    b.gamma_sp = c.c_sp * std::exp(-2.0 * z0_nm / sol.delta_diel_nm);
    b.gamma_total = b.gamma_rad + b.gamma_non_rad + b.gamma_sp;
    return b;
}

}  // namespace plasmon::spmode
