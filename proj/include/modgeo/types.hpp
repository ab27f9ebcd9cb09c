#pragma once

#include <Eigen/Dense>
#include <complex>

namespace modgeo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Frobenius norm of the difference, scaled by 1 + norm of the first argument.
/// Used throughout as the generic "relative residual" between two matrices.
inline double rel_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).norm() / (1.0 + a.norm());
}

}  // namespace modgeo
