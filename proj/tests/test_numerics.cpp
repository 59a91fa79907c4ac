#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plasmon/numerics.hpp"

using namespace plasmon;
using namespace plasmon::numerics;

namespace {

std::mt19937 rng(12345);

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, double scale = 1.0)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = scale * complex_t{d(rng), d(rng)};
        }
    }
    return m;
}

// Naive triple-loop product, the reference for matmul.
ComplexMatrix matmul_oracle(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out = ComplexMatrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            for (Eigen::Index k = 0; k < a.cols(); ++k) {
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

// Classic fixed-step RK4 on dv/dt = L v.
ComplexVector rk4_linear(const ComplexMatrix& L, ComplexVector v, double t, double h)
{
    const int n = static_cast<int>(std::round(t / h));
    for (int i = 0; i < n; ++i) {
        const ComplexVector k1 = L * v;
        const ComplexVector k2 = L * (v + 0.5 * h * k1);
        const ComplexVector k3 = L * (v + 0.5 * h * k2);
        const ComplexVector k4 = L * (v + h * k3);
        v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
}

ComplexMatrix sigma_plus()
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("matmul identity")
{
    const ComplexMatrix m = random_matrix(2, 2);
    CHECK((matmul(ComplexMatrix::Identity(2, 2), m) - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matmul two-level algebra")
{
    const ComplexMatrix p = sigma_plus();
    const ComplexMatrix prod = matmul(p, p.adjoint());
    CHECK(prod(0, 0) == complex_t{1.0, 0.0});
    CHECK(prod(1, 1) == complex_t{0.0, 0.0});
    CHECK(std::abs(prod(0, 1)) == 0.0);
}

TEST_CASE("matmul vs triple-loop oracle")
{
    const ComplexMatrix a = random_matrix(4, 4);
    const ComplexMatrix b = random_matrix(4, 4);
    CHECK((matmul(a, b) - matmul_oracle(a, b)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("matmul dimension mismatch")
{
    CHECK_THROWS_AS(matmul(random_matrix(2, 3), random_matrix(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("matmul associativity")
{
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_matrix(3, 3);
        const ComplexMatrix b = random_matrix(3, 3);
        const ComplexMatrix c = random_matrix(3, 3);
        const ComplexMatrix lhs = matmul(matmul(a, b), c);
        const ComplexMatrix rhs = matmul(a, matmul(b, c));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <
              1e-12 * lhs.cwiseAbs().maxCoeff() + 1e-14);
    }
}

TEST_CASE("kron identities")
{
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    // S_1^+ in the two-emitter ordering |ee>, |eg>, |ge>, |gg>
    const ComplexMatrix s1p = kron(sigma_plus(), i2);
    CHECK(s1p(0, 2) == complex_t{1.0, 0.0});
    CHECK(s1p(1, 3) == complex_t{1.0, 0.0});
    CHECK(s1p.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("kron mixed-product identity")
{
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_matrix(2, 2), b = random_matrix(2, 2);
        const ComplexMatrix c = random_matrix(2, 2), d = random_matrix(2, 2);
        const ComplexMatrix lhs = matmul(kron(a, b), kron(c, d));
        const ComplexMatrix rhs = kron(matmul(a, c), matmul(b, d));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("vec column stacking convention")
{
    const ComplexMatrix a = random_matrix(3, 3);
    const ComplexMatrix b = random_matrix(3, 3);
    const ComplexMatrix rho = random_matrix(3, 3);
    const ComplexVector lhs = vec((a * rho * b).eval());
    const ComplexVector rhs = kron(b.transpose(), a) * vec(rho);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("expm_action trivial cases")
{
    const ComplexVector v = ComplexVector::Ones(3);
    const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    CHECK((expm_action(zero, v, 2.0) - v).cwiseAbs().maxCoeff() < 1e-15);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = -1.0;
    d(1, 1) = -2.0;
    const ComplexVector out = expm_action(d, ComplexVector::Ones(2), 1.0);
    CHECK(std::abs(out(0) - std::exp(-1.0)) < 1e-14);
    CHECK(std::abs(out(1) - std::exp(-2.0)) < 1e-14);
}

TEST_CASE("expm_action vs fixed-step RK4 oracle")
{
    const ComplexMatrix L = random_matrix(16, 16);
    const ComplexVector v = vec(random_matrix(4, 4));
    const ComplexVector ref = rk4_linear(L, v, 0.3, 1e-4);
    const ComplexVector got = expm_action(L, v, 0.3);
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("expm_action semigroup property")
{
    const ComplexMatrix L = random_matrix(8, 8);
    const ComplexVector v = ComplexVector::Random(8);
    const ComplexVector one_step = expm_action(L, v, 0.7);
    const ComplexVector two_step = expm_action(L, expm_action(L, v, 0.3), 0.4);
    CHECK((one_step - two_step).cwiseAbs().maxCoeff() <
          1e-9 * one_step.cwiseAbs().maxCoeff() + 1e-12);
}

TEST_CASE("expm_action errors")
{
    CHECK_THROWS(expm_action(random_matrix(2, 3), ComplexVector::Ones(3), 1.0));
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(expm_action(bad, ComplexVector::Ones(2), 1.0));
}

TEST_CASE("integrate constant solution")
{
    const ComplexMatrix rho0 = random_matrix(2, 2);
    RealVector grid(3);
    grid << 0.0, 0.5, 1.0;
    auto sol = integrate([](double, const ComplexMatrix& m) {
        return ComplexMatrix::Zero(m.rows(), m.cols()).eval();
    }, rho0, grid);
    REQUIRE(sol.states.size() == 3);
    CHECK((sol.states[2] - rho0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("integrate exponential decay")
{
    // Single-emitter excited population: dP/dt = -2 P.
    ComplexMatrix p0(1, 1);
    p0(0, 0) = 1.0;
    RealVector grid(21);
    for (int i = 0; i < 21; ++i) grid[i] = 0.25 * i;
    auto sol = integrate([](double, const ComplexMatrix& m) {
        return (-2.0 * m).eval();
    }, p0, grid);
    for (int i = 0; i < 21; ++i) {
        CHECK(std::abs(sol.states[static_cast<size_t>(i)](0, 0) -
                       std::exp(-2.0 * grid[i])) < 1e-9);
    }
}

TEST_CASE("integrate self-convergence against expm_action")
{
    const ComplexMatrix L = random_matrix(9, 9);
    const ComplexMatrix rho0 = random_matrix(3, 3);
    RealVector grid(2);
    grid << 0.0, 0.8;
    const ComplexVector exact = expm_action(L, vec(rho0), 0.8);

    double prev_err = -1.0;
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        OdeOptions opts;
        opts.abs_tol = tol;
        auto sol = integrate([&L](double, const ComplexMatrix& m) {
            return unvec(ComplexVector(L * vec(m)), m.rows(), m.cols());
        }, rho0, grid, opts);
        const double err = (vec(sol.states[1]) - exact).cwiseAbs().maxCoeff();
        if (prev_err >= 0.0) CHECK(err <= prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-8);
}

TEST_CASE("integrate rejects bad grid")
{
    ComplexMatrix m(1, 1);
    m(0, 0) = 1.0;
    RealVector grid(2);
    grid << 1.0, 0.5;
    CHECK_THROWS(integrate([](double, const ComplexMatrix& x) { return x; }, m, grid));
}

TEST_CASE("null_vector diagonal case")
{
    ComplexMatrix L = ComplexMatrix::Zero(2, 2);
    L(1, 1) = -1.0;
    const ComplexVector v = null_vector(L);
    CHECK(std::abs(std::abs(v(0)) - 1.0) < 1e-12);
    CHECK(std::abs(v(1)) < 1e-12);
}

TEST_CASE("null_vector errors")
{
    CHECK_THROWS_AS(null_vector(ComplexMatrix::Identity(3, 3)), std::runtime_error);
    CHECK_THROWS_AS(null_vector(ComplexMatrix::Zero(3, 3)), DegenerateNullSpace);
}
