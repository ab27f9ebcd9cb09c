#include "modgeo/abelian.hpp"

#include <cmath>
#include <sstream>

namespace modgeo {

FiniteMeasureSpace::FiniteMeasureSpace(RVector weights_) : weights(std::move(weights_)) {
    if (weights.size() == 0) throw Error("FiniteMeasureSpace: needs at least one atom");
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] <= 0.0)
            throw Error("FiniteMeasureSpace: weights must be positive and finite");
    }
}

ClassicalAmplitude::ClassicalAmplitude(FiniteMeasureSpace space_, CVector psi_)
    : space(std::move(space_)), psi(std::move(psi_)) {
    if (psi.size() != space.weights.size())
        throw DimensionMismatch("ClassicalAmplitude: amplitude length mismatch");
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        double a = std::abs(psi[i]);
        if (a < kAmpFloor) {
            std::ostringstream msg;
            msg << "ClassicalAmplitude: component " << i << " has modulus " << a;
            throw VanishingAmplitude(msg.str());
        }
        norm2 += space.weights[i] * a * a;
    }
    if (std::abs(norm2 - 1.0) > kTolNorm) {
        std::ostringstream msg;
        msg << "ClassicalAmplitude: weighted norm " << norm2 << " deviates from 1";
        throw NotNormalized(msg.str());
    }
}

ClassicalGenerator::ClassicalGenerator(RVector k_, double t_) : k(std::move(k_)), t(t_) {
    for (Eigen::Index i = 0; i < k.size(); ++i)
        if (!std::isfinite(k[i])) throw Error("ClassicalGenerator: entries must be finite");
}

RVector classical_state(const ClassicalAmplitude& amp) {
    return amp.space.weights.array() * amp.psi.array().abs2();
}

TangentCheckReport exp_tangent_check(const ClassicalAmplitude& amp, const RVector& k, double t) {
    if (t == 0.0) throw ZeroScale("exp_tangent_check: scale t must be nonzero");
    if (k.size() != amp.psi.size())
        throw DimensionMismatch("exp_tangent_check: direction length mismatch");
    RVector p = classical_state(amp);
    TangentCheckReport report;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        report.value += p[i] * (std::exp(std::abs(t * k[i])) - 1.0);
        report.value_plus += p[i] * std::exp(t * k[i]);
        report.value_minus += p[i] * std::exp(-t * k[i]);
    }
    report.finite = std::isfinite(report.value) && std::isfinite(report.value_plus) &&
                    std::isfinite(report.value_minus);
    report.divergence_flag = !report.finite;
    return report;
}

TangentCheckReport exp_tangent_check_grid(const GridSpec& grid, double t) {
    if (t == 0.0) throw ZeroScale("exp_tangent_check_grid: scale t must be nonzero");
    TangentCheckReport report;
    TangentCheckReport prev;
    bool have_prev = false;
    bool stabilized = false;
    for (double r = grid.r0; r <= grid.rmax; r *= 2.0) {
        TangentCheckReport window;
        long half = static_cast<long>(std::floor(r / grid.dx));
        for (long m = -half; m <= half; ++m) {
            double x = m * grid.dx;
            double mass = grid.density(x) * grid.dx;
            double kx = grid.k(x);
            window.value += mass * (std::exp(std::abs(t * kx)) - 1.0);
            window.value_plus += mass * std::exp(t * kx);
            window.value_minus += mass * std::exp(-t * kx);
        }
        window.finite = std::isfinite(window.value) && std::isfinite(window.value_plus) &&
                        std::isfinite(window.value_minus);
        if (!window.finite) {
            report = window;
            report.divergence_flag = true;
            return report;
        }
        if (have_prev) {
            double step = std::abs(window.value - prev.value) +
                          std::abs(window.value_plus - prev.value_plus) +
                          std::abs(window.value_minus - prev.value_minus);
            stabilized = step <= 1e-9 * (1.0 + std::abs(window.value) +
                                         std::abs(window.value_plus) +
                                         std::abs(window.value_minus));
        }
        prev = window;
        have_prev = true;
        report = window;
        if (stabilized) break;
    }
    report.divergence_flag = !stabilized;
    return report;
}

ClassicalPathPoint classical_geodesic(const ClassicalAmplitude& amp, const RVector& h, double s) {
    if (h.size() != amp.psi.size())
        throw DimensionMismatch("classical_geodesic: generator length mismatch");
    TangentCheckReport cond = exp_tangent_check(amp, h, 1.0);
    if (!cond.finite) {
        throw TangentConditionFailed(
            "classical_geodesic: exponential moments of the generator overflow");
    }
    RVector p = classical_state(amp);
    double z = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) z += p[i] * std::exp(-s * h[i]);
    if (!std::isfinite(z) || z <= 0.0)
        throw TangentConditionFailed("classical_geodesic: normalization not finite");
    double zeta = std::log(z);
    CVector omega(amp.psi.size());
    for (Eigen::Index i = 0; i < omega.size(); ++i)
        omega[i] = std::exp(-0.5 * (zeta + s * h[i])) * amp.psi[i];
    return ClassicalPathPoint{ClassicalAmplitude(amp.space, omega), zeta};
}

std::pair<DensityMatrix, DensityMatrix> embed_diagonal(const ClassicalAmplitude& amp,
                                                       const RVector& h) {
    RVector p0 = classical_state(amp);
    RVector p1 = classical_state(classical_geodesic(amp, h, 1.0).omega);
    const Eigen::Index m = p0.size();
    CMatrix rho0 = CMatrix::Zero(m, m);
    CMatrix rho1 = CMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        rho0(i, i) = p0[i];
        rho1(i, i) = p1[i];
    }
    return {DensityMatrix(rho0), DensityMatrix(rho1)};
}

}  // namespace modgeo
