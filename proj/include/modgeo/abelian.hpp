#pragma once

// The commutative case on finite measure spaces. States are carried by
// amplitudes psi with sum_i w_i |psi_i|^2 = 1; probabilities p_i = w_i|psi_i|^2.
// A real vector h generates the geodesic
//
//   Omega_s = e^{-zeta(s)/2} e^{-s h/2} psi,   zeta(s) = log sum w e^{-s h} |psi|^2,
//
// so probabilities flow as p_s ∝ p_0 e^{-s h}. A 1-D grid mode approximates
// the finiteness condition for densities on the line by a doubling sequence
// of truncated sums.

#include <functional>
#include <utility>

#include "modgeo/gns.hpp"

namespace modgeo {

struct FiniteMeasureSpace {
    RVector weights;

    explicit FiniteMeasureSpace(RVector weights_);
    int size() const { return static_cast<int>(weights.size()); }
};

struct ClassicalAmplitude {
    FiniteMeasureSpace space;
    CVector psi;

    static constexpr double kTolNorm = 1e-12;
    static constexpr double kAmpFloor = 1e-12;

    ClassicalAmplitude(FiniteMeasureSpace space_, CVector psi_);
};

/// A tangent-direction candidate k at scale t; the generator is h = t k.
struct ClassicalGenerator {
    RVector k;
    double t;

    ClassicalGenerator(RVector k_, double t_);
    RVector h() const { return t * k; }
};

struct TangentCheckReport {
    double value = 0.0;        // sum w (e^{|t k|} - 1) |psi|^2
    double value_plus = 0.0;   // sum w e^{+t k} |psi|^2
    double value_minus = 0.0;  // sum w e^{-t k} |psi|^2
    bool finite = true;
    bool divergence_flag = false;
};

struct ClassicalPathPoint {
    ClassicalAmplitude omega;
    double zeta;
};

/// p_i = w_i |psi_i|^2.
RVector classical_state(const ClassicalAmplitude& amp);

/// Membership check for the exponential tangent direction k at scale t:
/// evaluates the defining sum and both one-sided exponential moments. On a
/// finite space the values are always finite unless the floating point
/// computation overflows, which sets both flags. Throws ZeroScale at t = 0.
TangentCheckReport exp_tangent_check(const ClassicalAmplitude& amp, const RVector& k, double t);

/// 1-D grid mode: density(x) stands for |psi(x)|^2 against dx-weighted
/// counting measure. Sums are taken over nested windows [-R, R] with R
/// doubling from r0 to rmax; divergence_flag is set when the sequence fails
/// to stabilize to 1e-9 relative (or overflows).
struct GridSpec {
    std::function<double(double)> k;
    std::function<double(double)> density;
    double dx = 1e-2;
    double r0 = 2.0;
    double rmax = 64.0;
};

TangentCheckReport exp_tangent_check_grid(const GridSpec& grid, double t);

/// Geodesic point at parameter s. Requires both exponential moments of h to
/// be finite at full scale (throws TangentConditionFailed otherwise).
ClassicalPathPoint classical_geodesic(const ClassicalAmplitude& amp, const RVector& h, double s);

/// Diagonal-matrix images of the endpoints: rho0 = diag(p_0) and rho1 =
/// diag(p_1) with weights folded into the probabilities.
std::pair<DensityMatrix, DensityMatrix> embed_diagonal(const ClassicalAmplitude& amp,
                                                       const RVector& h);

}  // namespace modgeo
