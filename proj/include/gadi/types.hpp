#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace gadi {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using DenseComplexMatrix = Eigen::MatrixXcd;
using DenseRealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace gadi
