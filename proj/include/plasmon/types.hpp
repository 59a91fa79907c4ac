#pragma once

#include <complex>
#include <Eigen/Dense>

namespace plasmon {

using scalar_t = double;
using complex_t = std::complex<scalar_t>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr complex_t iu{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

}  // namespace plasmon
