#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon::numerics {

// Adaptive integration output: one state per requested grid point.
struct ODESolution {
    RealVector t;
    std::vector<ComplexMatrix> states;
    double max_local_error = 0.0;
};

struct OdeOptions {
    double abs_tol = 1e-10;
    double h_initial = 1e-3;
    double h_min = 1e-14;
};

class DegenerateNullSpace : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorization, so vec(A rho B) = kron(B^T, A) vec(rho).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

// e^{L t} v by scaling-and-squaring of the dense exponential.
ComplexVector expm_action(const ComplexMatrix& L, const ComplexVector& v, double t);

using RhsFn = std::function<ComplexMatrix(double, const ComplexMatrix&)>;

// Embedded Dormand-Prince 5(4) with step control; lands exactly on t_grid.
ODESolution integrate(const RhsFn& rhs, const ComplexMatrix& rho0,
                      const RealVector& t_grid, const OdeOptions& opts = {});

// Unit-norm near-null vector of L from an SVD. Throws if the smallest
// singular value is not small, or DegenerateNullSpace if two are.
ComplexVector null_vector(const ComplexMatrix& L, double rel_tol = 1e-10);

}  // namespace plasmon::numerics
