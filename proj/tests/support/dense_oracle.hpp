// Brute force route through explicit n^2 x n^2 matrices acting on vectorized
// operators. Column major stacking throughout: vec(AXB) = (B^T kron A) vec(X).
// The modular objects become ordinary dense matrices here, so powers and
// unitaries can be checked against the structured implementation.
#pragma once

#include <Eigen/Eigenvalues>

#include "modgeo/types.hpp"

namespace dense {

inline modgeo::CVector vec(const modgeo::CMatrix& x) {
    return Eigen::Map<const modgeo::CVector>(x.data(), x.size());
}

inline modgeo::CMatrix unvec(const modgeo::CVector& v, int n) {
    return Eigen::Map<const modgeo::CMatrix>(v.data(), n, n);
}

inline modgeo::CMatrix kron(const modgeo::CMatrix& a, const modgeo::CMatrix& b) {
    modgeo::CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline modgeo::CMatrix left_mult_dense(const modgeo::CMatrix& a) {
    Eigen::Index n = a.rows();
    return kron(modgeo::CMatrix::Identity(n, n), a);
}

inline modgeo::CMatrix right_mult_dense(const modgeo::CMatrix& b) {
    Eigen::Index n = b.rows();
    return kron(b.transpose(), modgeo::CMatrix::Identity(n, n));
}

// Complex power of a Hermitian positive definite dense matrix.
inline modgeo::CMatrix hermitian_power(const modgeo::CMatrix& m, modgeo::Complex z) {
    Eigen::SelfAdjointEigenSolver<modgeo::CMatrix> es(0.5 * (m + m.adjoint()));
    modgeo::CVector powered(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < powered.size(); ++i)
        powered[i] = std::pow(modgeo::Complex(es.eigenvalues()[i], 0.0), z);
    return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().adjoint();
}

// X -> rho^z X rho^{-z} as a dense matrix.
inline modgeo::CMatrix delta_power_dense(const modgeo::CMatrix& rho, modgeo::Complex z) {
    return kron(hermitian_power(rho, -z).transpose(), hermitian_power(rho, z));
}

// X -> P X rho^{-1} as a dense matrix; its powers drive the relative objects.
inline modgeo::CMatrix relative_operator_dense(const modgeo::CMatrix& p,
                                               const modgeo::CMatrix& rho) {
    return kron(hermitian_power(rho, -1.0).transpose(), p);
}

// The conjugation and the closure act antilinearly, so they stay functions.
inline modgeo::CVector conjugation_dense(const modgeo::CVector& v, int n) {
    return vec(modgeo::CMatrix(unvec(v, n).adjoint()));
}

inline modgeo::CVector s_operator_dense(const modgeo::CMatrix& rho, const modgeo::CVector& v,
                                        int n) {
    modgeo::CMatrix x = unvec(v, n);
    return vec(modgeo::CMatrix(hermitian_power(rho, -0.5) * x.adjoint() *
                               hermitian_power(rho, 0.5)));
}

}  // namespace dense
