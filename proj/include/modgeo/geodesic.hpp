#pragma once

// Log-affine geodesics between faithful density matrices. The arc through
// rho0 with Hermitian generator h is
//
//   P_s   = exp(log rho0 + s h),   rho_s = P_s / Tr P_s,
//   zeta(s) = log Tr P_s,          Phi(s) = zeta(s) + phi0,
//
// so that P_0 = rho0 exactly and rho_1 is the second endpoint when h is
// chosen as log rho1 - log rho0. The relative operator of the pair
// (rho_s, rho0) factors as X -> rho_s X rho0^{-1}; its unnormalized version
// X -> P_s X rho0^{-1} is the one whose half-power derivative defines the
// left logarithmic multiplier below. Nothing here materializes an n^2 x n^2
// operator; all functions of the factored maps act through the two factors.

#include <optional>
#include <utility>
#include <vector>

#include "modgeo/cocycle.hpp"
#include "modgeo/gns.hpp"
#include "modgeo/report.hpp"

namespace modgeo {

/// A parametric family exp(-sum_j theta^j H_j)/Z(theta) of faithful states.
struct ExpFamily {
    int dim;
    std::vector<CMatrix> generators;

    ExpFamily(int dim_, std::vector<CMatrix> generators_);
};

struct ExpFamilyState {
    DensityMatrix rho;
    double log_z;
};

/// exp(-sum theta^j H_j)/Z with the exponent shifted by its top eigenvalue
/// before exponentiation; log Z is adjusted by the shift.
ExpFamilyState expfam_state(const ExpFamily& fam, const RVector& theta);

struct PathState {
    DensityMatrix rho;
    double zeta;
    bool outside_unit_interval;
};

/// Derivative data of the arc at a fixed parameter value. `hl` multiplies on
/// the left in the defining relation d/ds P_s^{1/2} = (1/2) hl P_s^{1/2};
/// `lsym` and `lright`/`lleft` solve the symmetrized and one-sided versions
/// for dP_s/ds. All are left-multiplication factors of maps on the
/// Hilbert-Schmidt space; the right factor rho0^{-1} of the relative operator
/// drops out of every one of these equations.
struct LogDerivatives {
    double s = 0.0;
    CMatrix hl;               // generally non-Hermitian
    CMatrix lsym;             // Hermitian
    CMatrix lright;
    CMatrix lleft;
    double zeta_prime = 0.0;
    double residual_hl = 0.0;
    double residual_sym = 0.0;
    double residual_right = 0.0;
    double residual_left = 0.0;
    double residual_defining = 0.0;  // max of the four above
    double residual_selfadjoint = 0.0;  // ||hl - hl*|| / ||hl||
    // Composite-Simpson value of int_0^1 P^{u/2} (h - zeta') P^{-u/2} du at
    // 129 nodes, which reproduces hl - zeta' I; the disagreement is recorded
    // relative to 1 + ||hl||. The variant with second exponent (1-u)/2
    // reproduces the half-power derivative shifted by the same gauge.
    CMatrix quad_hl;
    double quad_disagreement = 0.0;
    double quad_variant_disagreement = 0.0;
};

struct TangentConventionReport {
    double primary = 0.0;           // Tr(rho_s' A), the exact derivative
    Complex modular_full{0.0, 0.0};  // vector formula with the full multiplier
    Complex modular_half{0.0, 0.0};  // same with half the multiplier
    double mismatch_full = 0.0;      // |Re modular_full - primary|
    double mismatch_half = 0.0;
    double imag_full = 0.0;          // |Im modular_full|
    bool full_matches = false;
};

struct XOperatorResult {
    CMatrix factor;  // right-multiplication factor rho0^{-1/2} rho_s rho0^{-1/2}
    double residual_pairing;
    double residual_composition;
};

/// ||log a - log b - ds * h||_F, the defect of log-affinity between two
/// positive matrices a distance ds apart along a candidate arc.
double log_affinity_residual(const CMatrix& a, const CMatrix& b, double ds, const CMatrix& h);

/// (1-s) rho0 + s rho1; the mixture family used as a negative control.
CMatrix convex_mixture(const DensityMatrix& rho0, const DensityMatrix& rho1, double s);

class GeodesicPath {
  public:
    /// Arc through the base state of `space` with Hermitian generator h.
    GeodesicPath(GnsSpace space, const CMatrix& h, double phi0 = 0.0);

    /// Arc from rho0 to rho1: h = log rho1 - log rho0.
    static GeodesicPath connect(const DensityMatrix& rho0, const DensityMatrix& rho1);

    /// Arc between the parameter points theta and eta of an exponential
    /// family: h = -sum_j (eta^j - theta^j) H_j.
    static GeodesicPath from_expfam(const ExpFamily& fam, const RVector& theta,
                                    const RVector& eta);

    const GnsSpace& space() const { return space_; }
    const CMatrix& generator() const { return h_; }
    double phi0() const { return phi0_; }
    int dim() const { return space_.dim(); }

    /// Normalized state and normalization at parameter s. Values outside
    /// [0,1] are accepted (the arc extends analytically) and flagged.
    PathState state(double s) const;

    double zeta(double s) const;
    double phi(double s) const { return zeta(s) + phi0_; }

    /// Cocycle with generator rho_s over the base space.
    Cocycle cocycle_at(double s) const;

    /// Factored relative operator X -> rho_s X rho0^{-1}; at s = 0 this is
    /// the modular operator of the base state.
    HsMap relative_operator(double s) const;

    /// Left-multiplication unitary e^{it(phi(s)-phi(0))} exp(-it(log rho0 + s h)) rho0^{it};
    /// agrees with cocycle_at(s).unitary(t) computed through the state route.
    CMatrix synthesized_unitary(double s, double t) const;

    /// Log-affinity residuals over sample parameter pairs, evaluated through
    /// re-diagonalized states (not the defining exponent), so the check
    /// exercises the log/exp round trip.
    VerificationReport affinity_report(const std::vector<std::pair<double, double>>& pairs) const;

    /// All logarithmic-derivative data at s, including the Simpson
    /// cross-check of the conjugation integral. Throws QuadratureDivergence
    /// if refinement of the integral does not stabilize to 1e-8.
    LogDerivatives log_derivatives(double s) const;

    /// d/ds of the state vector rho_s^{1/2}, computed exactly.
    CMatrix state_vector_derivative(double s) const;

    /// Exact tangent functional f_s(A) = Tr(rho_s' A); vanishes on identity.
    double tangent_functional(double s, const CMatrix& a) const;

    /// Exact value side by side with the two vector-formula conventions.
    TangentConventionReport tangent_convention_report(double s, const CMatrix& a) const;

    /// Compares the arc rescaled by lambda with this arc at lambda * s, and
    /// appends the rescaled arc's own affinity residuals.
    VerificationReport rescale_report(double lambda, const std::vector<double>& s_values) const;

    /// Right-multiplication factor rho0^{-1/2} rho_s rho0^{-1/2} with its
    /// consistency residuals (state pairing, and equality with the map
    /// conjugated by the closure operator).
    XOperatorResult x_operator(double s) const;

  private:
    struct ArcPoint {
        HermitianEigen eig_p;  // eigenvectors of log rho0 + s h; values exp'd
        double trace_p;
        double zeta;
    };
    ArcPoint arc_point(double s) const;
    CMatrix arc_exponent(double s) const { return space_.log_rho0() + s * h_; }

    GnsSpace space_;
    CMatrix h_;
    double phi0_;
};

}  // namespace modgeo
