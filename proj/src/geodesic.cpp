#include "modgeo/geodesic.hpp"

#include <cmath>
#include <sstream>

namespace modgeo {

namespace {

// Entrywise table of int_0^1 r_ij^{u/2} du (and the variant with the second
// factor lambda_j^{(1-u)/2}) by composite Simpson on `nodes` points, where
// r_ij = lambda_i / lambda_j. Returns V (B o C) V* for integrand factor B in
// the eigenbasis.
CMatrix conjugation_integral(const HermitianEigen& eig_p, const CMatrix& integrand,
                             int nodes, bool variant_second_exponent) {
    const Eigen::Index n = eig_p.values.size();
    CMatrix b = eig_p.vectors.adjoint() * integrand * eig_p.vectors;
    RMatrix table(n, n);
    const int intervals = nodes - 1;
    const double du = 1.0 / intervals;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double log_ratio = std::log(eig_p.values[i]) - std::log(eig_p.values[j]);
            double log_base = variant_second_exponent ? 0.5 * std::log(eig_p.values[j]) : 0.0;
            auto f = [&](double u) { return std::exp(0.5 * u * log_ratio + log_base); };
            double acc = f(0.0) + f(1.0);
            for (int k = 1; k < intervals; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(k * du);
            table(i, j) = acc * du / 3.0;
        }
    }
    return eig_p.vectors * b.cwiseProduct(table.cast<Complex>()) * eig_p.vectors.adjoint();
}

}  // namespace

ExpFamily::ExpFamily(int dim_, std::vector<CMatrix> generators_)
    : dim(dim_), generators(std::move(generators_)) {
    if (generators.empty()) throw Error("ExpFamily: needs at least one generator");
    for (const auto& g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            throw DimensionMismatch("ExpFamily: generator dimension mismatch");
        if (!is_hermitian(g)) throw NotHermitian("ExpFamily: generator not Hermitian");
    }
}

ExpFamilyState expfam_state(const ExpFamily& fam, const RVector& theta) {
    if (theta.size() != static_cast<Eigen::Index>(fam.generators.size()))
        throw DimensionMismatch("expfam_state: parameter length mismatch");
    CMatrix m = CMatrix::Zero(fam.dim, fam.dim);
    for (size_t j = 0; j < fam.generators.size(); ++j) m -= theta[j] * fam.generators[j];
    HermitianEigen eig = herm_eig(m);
    double shift = eig.values.maxCoeff();
    RVector w = (eig.values.array() - shift).exp();
    double z_shifted = w.sum();
    CVector probs = (w / z_shifted).cast<Complex>();
    return ExpFamilyState{DensityMatrix(assemble(eig, probs)), shift + std::log(z_shifted)};
}

double log_affinity_residual(const CMatrix& a, const CMatrix& b, double ds, const CMatrix& h) {
    CMatrix log_a = apply_fn(a, log_fn().f);
    CMatrix log_b = apply_fn(b, log_fn().f);
    return (log_a - log_b - ds * h).norm();
}

CMatrix convex_mixture(const DensityMatrix& rho0, const DensityMatrix& rho1, double s) {
    return (1.0 - s) * rho0.matrix() + s * rho1.matrix();
}

GeodesicPath::GeodesicPath(GnsSpace space, const CMatrix& h, double phi0)
    : space_(std::move(space)), h_(h), phi0_(phi0) {
    if (h_.rows() != space_.dim() || h_.cols() != space_.dim())
        throw DimensionMismatch("GeodesicPath: generator dimension mismatch");
    if (!is_hermitian(h_)) throw NotHermitian("GeodesicPath: generator not Hermitian");
}

GeodesicPath GeodesicPath::connect(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("connect: endpoint dimensions differ");
    GnsSpace space(rho0);
    CMatrix h = apply_fn(rho1.eig(), log_fn().f) - space.log_rho0();
    return GeodesicPath(std::move(space), h);
}

GeodesicPath GeodesicPath::from_expfam(const ExpFamily& fam, const RVector& theta,
                                       const RVector& eta) {
    if (theta.size() != eta.size())
        throw DimensionMismatch("from_expfam: parameter lengths differ");
    ExpFamilyState base = expfam_state(fam, theta);
    CMatrix h = CMatrix::Zero(fam.dim, fam.dim);
    for (size_t j = 0; j < fam.generators.size(); ++j)
        h -= (eta[j] - theta[j]) * fam.generators[j];
    return GeodesicPath(GnsSpace(base.rho), h);
}

GeodesicPath::ArcPoint GeodesicPath::arc_point(double s) const {
    HermitianEigen eig = herm_eig(arc_exponent(s));
    eig.values = eig.values.array().exp();
    double trace = eig.values.sum();
    return ArcPoint{std::move(eig), trace, std::log(trace)};
}

PathState GeodesicPath::state(double s) const {
    ArcPoint pt = arc_point(s);
    CVector probs = (pt.eig_p.values / pt.trace_p).cast<Complex>();
    return PathState{DensityMatrix(assemble(pt.eig_p, probs)), pt.zeta,
                     s < 0.0 || s > 1.0};
}

double GeodesicPath::zeta(double s) const { return arc_point(s).zeta; }

Cocycle GeodesicPath::cocycle_at(double s) const {
    return Cocycle(space_, state(s).rho.matrix());
}

HsMap GeodesicPath::relative_operator(double s) const {
    return HsMap{state(s).rho.matrix(), space_.rho0_power(-1.0)};
}

CMatrix GeodesicPath::synthesized_unitary(double s, double t) const {
    HermitianEigen eig = herm_eig(arc_exponent(s));
    const Eigen::Index n = eig.values.size();
    CVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = std::exp(Complex(0.0, -t * eig.values[i]));
    double phase = t * (phi(s) - phi(0.0));
    return std::exp(Complex(0.0, phase)) * assemble(eig, w) *
           space_.rho0_power(Complex(0.0, 1.0) * t);
}

VerificationReport GeodesicPath::affinity_report(
    const std::vector<std::pair<double, double>>& pairs) const {
    VerificationReport report;
    for (const auto& [s, r] : pairs) {
        PathState ps = state(s);
        PathState pr = state(r);
        // log P_s measured from the re-diagonalized state: log rho_s + zeta(s).
        CMatrix log_ps = apply_fn(ps.rho.eig(), log_fn().f) +
                         ps.zeta * CMatrix::Identity(dim(), dim());
        CMatrix log_pr = apply_fn(pr.rho.eig(), log_fn().f) +
                         pr.zeta * CMatrix::Identity(dim(), dim());
        std::ostringstream name;
        name << "log_affinity/s=" << s << ",r=" << r;
        report.add(name.str(), (log_ps - log_pr - (s - r) * h_).norm(), 1e-10);
    }
    return report;
}

LogDerivatives GeodesicPath::log_derivatives(double s) const {
    LogDerivatives out;
    out.s = s;

    HermitianEigen eig_k = herm_eig(arc_exponent(s));
    CMatrix p_prime = frechet_fn(eig_k, h_, exp_fn());
    HermitianEigen eig_p{eig_k.values.array().exp(), eig_k.vectors};
    double trace_p = eig_p.values.sum();

    CMatrix p_sqrt = apply_fn(eig_p, sqrt_fn().f);
    CMatrix p_inv_sqrt = apply_fn(eig_p, power_fn(-0.5).f);
    CMatrix p_inv = apply_fn(eig_p, power_fn(-1.0).f);
    CMatrix dsqrt = frechet_fn(eig_p, p_prime, sqrt_fn());

    out.zeta_prime = p_prime.trace().real() / trace_p;
    out.hl = 2.0 * dsqrt * p_inv_sqrt;
    out.lsym = sym_solve(eig_p, p_prime);
    out.lright = p_inv * p_prime;
    out.lleft = p_prime * p_inv;

    double scale_sqrt = 1.0 + dsqrt.norm();
    double scale_prime = 1.0 + p_prime.norm();
    out.residual_hl = (dsqrt - 0.5 * out.hl * p_sqrt).norm() / scale_sqrt;
    CMatrix p = assemble(eig_p, eig_p.values.cast<Complex>());
    out.residual_sym = (p_prime - 0.5 * (out.lsym * p + p * out.lsym)).norm() / scale_prime;
    out.residual_right = (p_prime - p * out.lright).norm() / scale_prime;
    out.residual_left = (p_prime - out.lleft * p).norm() / scale_prime;
    out.residual_defining = std::max({out.residual_hl, out.residual_sym, out.residual_right,
                                      out.residual_left});
    double hl_norm = out.hl.norm();
    out.residual_selfadjoint =
        hl_norm > 0.0 ? (out.hl - out.hl.adjoint()).norm() / hl_norm : 0.0;

    CMatrix identity = CMatrix::Identity(dim(), dim());
    CMatrix h_gauged = h_ - out.zeta_prime * identity;
    out.quad_hl = conjugation_integral(eig_p, h_gauged, 129, false);

    // Refine until two successive Simpson levels agree; the stored value
    // stays at 129 nodes.
    CMatrix prev = out.quad_hl;
    bool stable = false;
    for (int nodes = 257; nodes <= 4097; nodes = 2 * nodes - 1) {
        CMatrix next = conjugation_integral(eig_p, h_gauged, nodes, false);
        if ((next - prev).norm() <= 1e-8 * (1.0 + next.norm())) {
            stable = true;
            break;
        }
        prev = next;
    }
    if (!stable) {
        std::ostringstream msg;
        msg << "log_derivatives: conjugation integral not stable to 1e-8 at s = " << s;
        throw QuadratureDivergence(msg.str());
    }

    CMatrix hl_gauged = out.hl - out.zeta_prime * identity;
    out.quad_disagreement = (out.quad_hl - hl_gauged).norm() / (1.0 + out.hl.norm());

    CMatrix quad_variant = 0.5 * conjugation_integral(eig_p, h_gauged, 129, true);
    CMatrix dsqrt_gauged = dsqrt - 0.5 * out.zeta_prime * p_sqrt;
    out.quad_variant_disagreement = (quad_variant - dsqrt_gauged).norm() / scale_sqrt;
    return out;
}

CMatrix GeodesicPath::state_vector_derivative(double s) const {
    HermitianEigen eig_k = herm_eig(arc_exponent(s));
    CMatrix p_prime = frechet_fn(eig_k, h_, exp_fn());
    RVector p_values = eig_k.values.array().exp();
    double trace = p_values.sum();
    double zeta_prime = p_prime.trace().real() / trace;
    HermitianEigen eig_rho{p_values / trace, eig_k.vectors};
    CMatrix rho_prime =
        p_prime / trace - zeta_prime * assemble(eig_rho, eig_rho.values.cast<Complex>());
    return frechet_fn(eig_rho, rho_prime, sqrt_fn());
}

double GeodesicPath::tangent_functional(double s, const CMatrix& a) const {
    if (a.rows() != dim() || a.cols() != dim())
        throw DimensionMismatch("tangent_functional: observable dimension mismatch");
    HermitianEigen eig_k = herm_eig(arc_exponent(s));
    CMatrix p_prime = frechet_fn(eig_k, h_, exp_fn());
    RVector p_values = eig_k.values.array().exp();
    double trace = p_values.sum();
    double zeta_prime = p_prime.trace().real() / trace;
    CMatrix p = assemble({eig_k.values, eig_k.vectors}, p_values.cast<Complex>());
    CMatrix rho_prime = (p_prime - zeta_prime * p) / trace;
    return (rho_prime * a).trace().real();
}

TangentConventionReport GeodesicPath::tangent_convention_report(double s, const CMatrix& a) const {
    TangentConventionReport out;
    out.primary = tangent_functional(s, a);

    LogDerivatives d = log_derivatives(s);
    PathState ps = state(s);
    CMatrix omega = apply_fn(ps.rho.eig(), sqrt_fn().f);
    Complex state_value = (ps.rho.matrix() * a).trace();

    auto vector_formula = [&](const CMatrix& g) {
        // (1/2)[(JGJ)A + A(JGJ)] applied to Omega_s gives A Omega_s g* for a
        // left-multiplication G; both terms coincide.
        CMatrix dressed = a * omega * g.adjoint();
        return hs_inner(dressed, omega) - state_value * d.zeta_prime;
    };
    out.modular_full = vector_formula(d.hl);
    out.modular_half = vector_formula(0.5 * d.hl);
    out.mismatch_full = std::abs(out.modular_full.real() - out.primary);
    out.mismatch_half = std::abs(out.modular_half.real() - out.primary);
    out.imag_full = std::abs(out.modular_full.imag());
    out.full_matches = out.mismatch_full < out.mismatch_half;
    return out;
}

VerificationReport GeodesicPath::rescale_report(double lambda,
                                                const std::vector<double>& s_values) const {
    VerificationReport report;
    GeodesicPath rescaled(space_, lambda * h_, phi0_);
    for (double s : s_values) {
        PathState a = rescaled.state(s);
        PathState b = state(lambda * s);
        std::ostringstream name;
        name << "rescaled_state_match/s=" << s;
        report.add(name.str(), (a.rho.matrix() - b.rho.matrix()).norm(), 1e-10);
        std::ostringstream zname;
        zname << "rescaled_zeta_match/s=" << s;
        report.add(zname.str(), std::abs(a.zeta - b.zeta), 1e-10);
    }
    std::vector<std::pair<double, double>> pairs;
    for (size_t i = 0; i + 1 < s_values.size(); ++i)
        pairs.emplace_back(s_values[i], s_values[i + 1]);
    if (pairs.empty()) pairs.emplace_back(0.0, 1.0);
    report.merge(rescaled.affinity_report(pairs), "rescaled_");
    return report;
}

XOperatorResult GeodesicPath::x_operator(double s) const {
    PathState ps = state(s);
    CMatrix factor = space_.inv_sqrt_rho0() * ps.rho.matrix() * space_.inv_sqrt_rho0();

    // Pairing: (A X^{1/2} Omega0, X^{1/2} Omega0) = Tr rho_s A on a Hermitian
    // basis element; use a probe spanning set of matrix units.
    CMatrix x_sqrt = apply_fn(herm_eig(factor), sqrt_fn().f);
    HsVector dressed = space_.omega0() * x_sqrt;
    double residual_pairing = 0.0;
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CMatrix a = CMatrix::Zero(n, n);
            a(i, j) = 1.0;
            Complex lhs = hs_inner(space_.act_left(a, dressed), dressed);
            Complex rhs = (ps.rho.matrix() * a).trace();
            residual_pairing = std::max(residual_pairing, std::abs(lhs - rhs));
        }
    }

    // S* T_s S composed explicitly equals right multiplication by the factor.
    HsMap t_s = relative_operator(s);
    double residual_composition = 0.0;
    for (int k = 0; k < n; ++k) {
        CMatrix probe = CMatrix::Zero(n, n);
        probe(k, (k + 1) % n) = Complex(0.7, -0.3);
        probe(0, k) += Complex(0.2, 0.4);
        HsVector via_maps = space_.modular_S_adjoint(t_s.apply(space_.modular_S(probe)));
        residual_composition =
            std::max(residual_composition, hs_norm(via_maps - probe * factor));
    }
    return XOperatorResult{factor, residual_pairing, residual_composition};
}

}  // namespace modgeo
