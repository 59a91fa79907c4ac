#include "plasmon/numerics.hpp"

#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace plasmon::numerics {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: dimension mismatch");
    }
    return a * b;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector vec(const ComplexMatrix& m)
{
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols)
{
    if (v.size() != rows * cols) {
        throw std::invalid_argument("unvec: size mismatch");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexVector expm_action(const ComplexMatrix& L, const ComplexVector& v, double t)
{
    if (L.rows() != L.cols()) {
        throw std::invalid_argument("expm_action: L must be square");
    }
    if (L.rows() != v.size()) {
        throw std::invalid_argument("expm_action: vector size mismatch");
    }
    if (!L.allFinite() || !v.allFinite() || !std::isfinite(t)) {
        throw std::invalid_argument("expm_action: non-finite input");
    }
    if (t == 0.0) {
        return v;
    }
    ComplexMatrix Lt = L * t;
    return Lt.exp() * v;
}

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

ODESolution integrate(const RhsFn& rhs, const ComplexMatrix& rho0,
                      const RealVector& t_grid, const OdeOptions& opts)
{
    if (t_grid.size() < 1) {
        throw std::invalid_argument("integrate: empty time grid");
    }
    for (Eigen::Index i = 1; i < t_grid.size(); ++i) {
        if (t_grid[i] <= t_grid[i - 1]) {
            throw std::invalid_argument("integrate: time grid not strictly increasing");
        }
    }

    ODESolution sol;
    sol.t = t_grid;
    sol.states.reserve(static_cast<size_t>(t_grid.size()));

    double t = t_grid[0];
    ComplexMatrix y = rho0;
    sol.states.push_back(y);

    double h = opts.h_initial;
    ComplexMatrix k1 = rhs(t, y);

    for (Eigen::Index g = 1; g < t_grid.size(); ++g) {
        const double t_target = t_grid[g];
        while (t < t_target) {
            bool clipped = false;
            if (t + h >= t_target) {
                h = t_target - t;
                clipped = true;
            }
            ComplexMatrix k2 = rhs(t + c2 * h, y + h * (a21 * k1));
            ComplexMatrix k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
            ComplexMatrix k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            ComplexMatrix k5 =
                rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            ComplexMatrix k6 = rhs(
                t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            ComplexMatrix y5 =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            ComplexMatrix k7 = rhs(t + h, y5);
            ComplexMatrix err_m =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double err = err_m.cwiseAbs().maxCoeff();

            if (err <= opts.abs_tol) {
                t += h;
                y = std::move(y5);
                k1 = std::move(k7);  // FSAL
                sol.max_local_error = std::max(sol.max_local_error, err);
            }

            const double safety =
                0.9 * std::pow(opts.abs_tol / std::max(err, 1e-300), 0.2);
            h = h * std::clamp(safety, 0.2, 5.0);
            if (clipped && err <= opts.abs_tol) {
                break;
            }
            if (h < opts.h_min) {
                throw std::runtime_error("integrate: step underflow (stiffness failure)");
            }
        }
        sol.states.push_back(y);
    }
    return sol;
}

ComplexVector null_vector(const ComplexMatrix& L, double rel_tol)
{
    if (L.rows() != L.cols()) {
        throw std::invalid_argument("null_vector: L must be square");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(L, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index n = sv.size();
    const double smax = sv(0);
    if (sv(n - 1) > rel_tol * smax) {
        throw std::runtime_error("null_vector: no near-null direction");
    }
    if (n >= 2 && sv(n - 2) <= rel_tol * smax) {
        throw DegenerateNullSpace("null_vector: null space dimension > 1");
    }
    return svd.matrixV().col(n - 1);
}

}  // namespace plasmon::numerics
