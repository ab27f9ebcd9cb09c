#pragma once

// Cocycles of the modular flow, stored by their positive generator. A
// cocycle (U_t)_t with U_{r+t} = U_r sigma_r(U_t) is encoded by a Hermitian
// positive-definite matrix P through the positive map T X = P X rho0^{-1};
// then U_t = P^{-it} rho0^{it} acts by left multiplication. The map T admits
// imaginary powers T^{-iz} Omega0 that extend analytically to the strip
// 0 <= Im z <= 1/2, whose top edge value P^{1/2} carries the state induced by
// the cocycle together with its normalization zeta = log Tr P.

#include <vector>

#include "modgeo/gns.hpp"
#include "modgeo/report.hpp"

namespace modgeo {

struct InducedState {
    DensityMatrix rho;
    double zeta;
};

class Cocycle {
  public:
    /// Builds the cocycle with generator P over the given representation
    /// space. P must be Hermitian with min eigenvalue >= kEpsFaithful times
    /// its mean eigenvalue.
    Cocycle(GnsSpace space, const CMatrix& p);

    const GnsSpace& space() const { return space_; }
    const CMatrix& generator() const { return p_; }
    double zeta() const { return zeta_; }

    /// U_t = P^{-it} rho0^{it} (unitary, left-multiplication factor).
    CMatrix unitary(double t) const;

    /// ||U_{r+t} - U_r sigma_r(U_t)||_F.
    double cocycle_defect(double r, double t) const;

    /// T^{-iz} Omega0 = P^{-iz} rho0^{1/2} rho0^{iz} on the closed strip
    /// 0 <= Im z <= 1/2. Throws StripViolation outside.
    HsVector xi(Complex z) const;

    /// T^w as a factored map X -> P^w X rho0^{-w}.
    HsMap t_power(Complex w) const;

    /// Checks the interpolation bound ||T^{-iz} Omega0||^2 <=
    /// (1 - 2 Im z) + 2 Im z ||T^{1/2} Omega0||^2 at each strip sample,
    /// with equality at both edges. One report entry per sample; the recorded
    /// residual is the bound violation clamped at zero.
    VerificationReport analytic_bound_report(const std::vector<double>& im_samples) const;

    /// The state paired against the cocycle vector e^{-zeta/2} P^{1/2}:
    /// density P / Tr P with zeta = log Tr P.
    InducedState induced_state() const;

    /// Extension of T^{1/2} restricted to the commutant orbit of Omega0:
    /// left multiplication by P^{1/2} rho0^{-1/2}.
    HsMap u_half() const;

    /// Closure of the commutant-affiliated factor: right multiplication by
    /// rho0^{-1/2} P^{1/2}. Satisfies y_op = J o u_half o J.
    HsMap y_op() const;

    /// The positive square Y*Y: right multiplication by
    /// rho0^{-1/2} P rho0^{-1/2}. Also equals S* o T o S.
    HsMap x_op() const;

    /// Residual checks of the operator identities tying u_half, y_op, x_op
    /// and the strip-edge vector together:
    ///   (a) J-invariance of the edge vector P^{1/2},
    ///   (b) y_op == J T^{1/2} S on each A Omega0,
    ///   (c) the induced state equals the X^{1/2}-conjugated vector pairing,
    ///   (d) u_half adjoint applied to Omega0 equals S applied to the edge
    ///       vector.
    /// Domain and closability statements are vacuous at finite dimension and
    /// reported as such.
    VerificationReport operator_identity_report(const std::vector<CMatrix>& algebra_samples) const;

    /// Residuals of the chain T^{1/2}(A Omega0) = U_half Delta^{1/2}(A Omega0)
    /// = (J A* J) Xi_{i/2}.
    VerificationReport half_power_chain_report(const CMatrix& a) const;

  private:
    GnsSpace space_;
    CMatrix p_;
    HermitianEigen eig_p_;
    double zeta_;
};

}  // namespace modgeo
