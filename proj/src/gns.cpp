#include "modgeo/gns.hpp"

#include <sstream>

namespace modgeo {

HsMap left_mult(const CMatrix& m) {
    return HsMap{m, CMatrix::Identity(m.cols(), m.cols())};
}

HsMap right_mult(const CMatrix& m) {
    return HsMap{CMatrix::Identity(m.rows(), m.rows()), m};
}

DensityMatrix::DensityMatrix(const CMatrix& entries) : mat_(entries) {
    if (mat_.rows() != mat_.cols()) throw NotDensity("density matrix must be square");
    if (!is_hermitian(mat_)) throw NotDensity("density matrix must be Hermitian");
    double trace = mat_.trace().real();
    if (std::abs(trace - 1.0) > kTolTrace) {
        std::ostringstream msg;
        msg << "density matrix trace " << trace << " deviates from 1 beyond " << kTolTrace;
        throw NotDensity(msg.str());
    }
    eig_ = herm_eig(mat_);
    if (eig_.values.minCoeff() < kEpsFaithful) {
        std::ostringstream msg;
        msg << "density matrix not faithful: min eigenvalue " << eig_.values.minCoeff()
            << " below " << kEpsFaithful;
        throw NotFaithful(msg.str());
    }
}

GnsSpace::GnsSpace(DensityMatrix rho0) : rho0_(std::move(rho0)) {
    sqrt_rho0_ = apply_fn(rho0_.eig(), sqrt_fn().f);
    inv_sqrt_rho0_ = apply_fn(rho0_.eig(), power_fn(-0.5).f);
    log_rho0_ = apply_fn(rho0_.eig(), log_fn().f);
}

CMatrix GnsSpace::rho0_power(Complex z) const {
    return apply_fn(rho0_.eig(), power_fn(z).f);
}

void GnsSpace::check_dim(const CMatrix& m, const char* where) const {
    if (m.rows() != dim() || m.cols() != dim()) {
        std::ostringstream msg;
        msg << where << ": expected " << dim() << "x" << dim() << ", got " << m.rows() << "x"
            << m.cols();
        throw DimensionMismatch(msg.str());
    }
}

HsVector GnsSpace::act_left(const CMatrix& a, const HsVector& x) const {
    check_dim(a, "act_left");
    check_dim(x, "act_left");
    return a * x;
}

HsVector GnsSpace::act_right(const CMatrix& b, const HsVector& x) const {
    check_dim(b, "act_right");
    check_dim(x, "act_right");
    return x * b;
}

HsVector GnsSpace::delta_power(Complex z, const HsVector& x) const {
    check_dim(x, "delta_power");
    return rho0_power(z) * x * rho0_power(-z);
}

HsVector GnsSpace::modular_J(const HsVector& x) const {
    check_dim(x, "modular_J");
    return x.adjoint();
}

HsVector GnsSpace::modular_S(const HsVector& x) const {
    check_dim(x, "modular_S");
    return inv_sqrt_rho0_ * x.adjoint() * sqrt_rho0_;
}

HsVector GnsSpace::modular_S_adjoint(const HsVector& x) const {
    check_dim(x, "modular_S_adjoint");
    return sqrt_rho0_ * x.adjoint() * inv_sqrt_rho0_;
}

CMatrix GnsSpace::modular_flow(double t, const CMatrix& a) const {
    check_dim(a, "modular_flow");
    CMatrix u = imaginary_power(rho0_.eig(), -t);
    return u * a * u.adjoint();
}

Complex GnsSpace::expectation(const CMatrix& a) const {
    check_dim(a, "expectation");
    return (rho0_.matrix() * a).trace();
}

}  // namespace modgeo
