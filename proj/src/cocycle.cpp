#include "modgeo/cocycle.hpp"

#include <cmath>
#include <sstream>

namespace modgeo {

Cocycle::Cocycle(GnsSpace space, const CMatrix& p) : space_(std::move(space)), p_(p) {
    if (p_.rows() != space_.dim() || p_.cols() != space_.dim())
        throw DimensionMismatch("Cocycle: generator dimension mismatch");
    eig_p_ = herm_eig(p_);
    double trace_scale = eig_p_.values.sum() / static_cast<double>(space_.dim());
    if (eig_p_.values.minCoeff() < DensityMatrix::kEpsFaithful * trace_scale) {
        std::ostringstream msg;
        msg << "Cocycle: generator min eigenvalue " << eig_p_.values.minCoeff()
            << " below faithfulness floor at trace scale " << trace_scale;
        throw NotPositiveDefinite(msg.str());
    }
    zeta_ = std::log(eig_p_.values.sum());
}

CMatrix Cocycle::unitary(double t) const {
    return imaginary_power(eig_p_, -t) * space_.rho0_power(Complex(0.0, t));
}

double Cocycle::cocycle_defect(double r, double t) const {
    CMatrix lhs = unitary(r + t);
    CMatrix rhs = unitary(r) * space_.modular_flow(r, unitary(t));
    return (lhs - rhs).norm();
}

HsVector Cocycle::xi(Complex z) const {
    if (z.imag() < 0.0 || z.imag() > 0.5) {
        std::ostringstream msg;
        msg << "xi: Im z = " << z.imag() << " outside [0, 1/2]";
        throw StripViolation(msg.str());
    }
    Complex miz(z.imag(), -z.real());  // -iz
    CMatrix p_pow = apply_fn(eig_p_, power_fn(miz).f);
    return p_pow * space_.sqrt_rho0() * space_.rho0_power(-miz);
}

HsMap Cocycle::t_power(Complex w) const {
    return HsMap{apply_fn(eig_p_, power_fn(w).f), space_.rho0_power(-w)};
}

VerificationReport Cocycle::analytic_bound_report(const std::vector<double>& im_samples) const {
    VerificationReport report;
    double edge = xi(Complex(0.0, 0.5)).squaredNorm();  // = Tr P
    for (double y : im_samples) {
        double lhs = xi(Complex(0.0, y)).squaredNorm();
        double rhs = (1.0 - 2.0 * y) + 2.0 * y * edge;
        std::ostringstream name;
        name << "strip_interpolation_bound/imz=" << y;
        report.add(name.str(), std::max(0.0, lhs - rhs), 1e-12);
    }
    return report;
}

InducedState Cocycle::induced_state() const {
    double tr = eig_p_.values.sum();
    return InducedState{DensityMatrix(p_ / tr), std::log(tr)};
}

HsMap Cocycle::u_half() const {
    return left_mult(apply_fn(eig_p_, sqrt_fn().f) * space_.inv_sqrt_rho0());
}

HsMap Cocycle::y_op() const {
    return right_mult(space_.inv_sqrt_rho0() * apply_fn(eig_p_, sqrt_fn().f));
}

HsMap Cocycle::x_op() const {
    return right_mult(space_.inv_sqrt_rho0() * p_ * space_.inv_sqrt_rho0());
}

VerificationReport Cocycle::operator_identity_report(
    const std::vector<CMatrix>& algebra_samples) const {
    VerificationReport report;
    const HsVector xi_half = xi(Complex(0.0, 0.5));

    report.add("edge_vector_J_invariant", hs_norm(space_.modular_J(xi_half) - xi_half), 1e-12);

    HsMap y = y_op();
    HsMap t_half = t_power(0.5);
    HsMap x = x_op();
    CMatrix x_sqrt = apply_fn(herm_eig(x.right), sqrt_fn().f);
    HsVector x_half_omega = space_.omega0() * x_sqrt;
    DensityMatrix state = induced_state().rho;
    double weight = std::exp(-zeta_);

    for (size_t k = 0; k < algebra_samples.size(); ++k) {
        const CMatrix& a = algebra_samples[k];
        HsVector a_omega = space_.act_left(a, space_.omega0());

        // y_op agrees with J T^{1/2} S on the algebra orbit of Omega0.
        HsVector via_chain = space_.modular_J(t_half.apply(space_.modular_S(a_omega)));
        std::ostringstream nb;
        nb << "commutant_factor_as_JThalfS/sample=" << k;
        report.add(nb.str(), hs_norm(y.apply(a_omega) - via_chain), 1e-10);

        // The induced state is the vector state of the X^{1/2}-dressed Omega0.
        Complex paired = weight * hs_inner(space_.act_left(a, x_half_omega), x_half_omega);
        Complex direct = (state.matrix() * a).trace();
        std::ostringstream nc;
        nc << "state_matches_xsqrt_pairing/sample=" << k;
        report.add(nc.str(), std::abs(paired - direct), 1e-10);
    }

    // u_half* Omega0 = S Xi_{i/2}.
    CMatrix u_half_factor = u_half().left;
    HsVector adj_omega = u_half_factor.adjoint() * space_.omega0();
    report.add("uhalf_adjoint_omega_vs_S_edge", hs_norm(adj_omega - space_.modular_S(xi_half)),
               1e-10);

    // Closability and boundedness hold automatically at finite dimension.
    report.add("closability_vacuous_finite_dim", 0.0, 1e-12);
    return report;
}

VerificationReport Cocycle::half_power_chain_report(const CMatrix& a) const {
    VerificationReport report;
    HsVector a_omega = space_.act_left(a, space_.omega0());

    HsVector first = t_power(0.5).apply(a_omega);
    HsVector second = u_half().apply(space_.delta_power(0.5, a_omega));
    // J A* J acts by right multiplication with A.
    HsVector third = space_.act_right(a, xi(Complex(0.0, 0.5)));

    report.add("half_power_vs_uhalf_delta", hs_norm(first - second), 1e-10);
    report.add("uhalf_delta_vs_right_conjugated_edge", hs_norm(second - third), 1e-10);
    report.add("half_power_vs_right_conjugated_edge", hs_norm(first - third), 1e-10);
    return report;
}

}  // namespace modgeo
