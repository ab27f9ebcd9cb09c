#include "modgeo/matfun.hpp"

#include <cmath>
#include <sstream>

namespace modgeo {

ScalarFn exp_fn() {
    return {[](double x) { return Complex(std::exp(x), 0.0); },
            [](double x) { return Complex(std::exp(x), 0.0); }};
}

ScalarFn log_fn() {
    return {[](double x) { return Complex(std::log(x), 0.0); },
            [](double x) { return Complex(1.0 / x, 0.0); }};
}

ScalarFn sqrt_fn() {
    return {[](double x) { return Complex(std::sqrt(x), 0.0); },
            [](double x) { return Complex(0.5 / std::sqrt(x), 0.0); }};
}

ScalarFn power_fn(Complex z) {
    auto pw = [](double x, Complex w) -> Complex {
        if (x <= 0.0) return Complex(std::nan(""), 0.0);
        return std::exp(w * std::log(x));
    };
    return {[=](double x) { return pw(x, z); },
            [=](double x) { return z * pw(x, z - 1.0); }};
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol * (1.0 + a.norm());
}

HermitianEigen herm_eig(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("herm_eig: matrix is not square");
    if (!is_hermitian(a)) {
        std::ostringstream msg;
        msg << "herm_eig: matrix is not Hermitian, defect " << (a - a.adjoint()).norm();
        throw NotHermitian(msg.str());
    }
    CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed to converge");

    HermitianEigen eig{solver.eigenvalues(), solver.eigenvectors()};
    const Eigen::Index n = eig.vectors.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        // Phase each column so its first component with significant modulus is
        // real positive; ties in the eigensolver output become reproducible.
        double peak = eig.vectors.col(k).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex v = eig.vectors(i, k);
            if (std::abs(v) > 1e-12 * peak) {
                eig.vectors.col(k) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return eig;
}

CMatrix assemble(const HermitianEigen& eig, const CVector& diag_values) {
    return eig.vectors * diag_values.asDiagonal() * eig.vectors.adjoint();
}

CMatrix apply_fn(const HermitianEigen& eig, const std::function<Complex(double)>& f) {
    const Eigen::Index n = eig.values.size();
    CVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w[i] = f(eig.values[i]);
        if (!std::isfinite(w[i].real()) || !std::isfinite(w[i].imag())) {
            std::ostringstream msg;
            msg << "apply_fn: function not finite at eigenvalue " << eig.values[i];
            throw SpectrumOutOfDomain(msg.str());
        }
    }
    return assemble(eig, w);
}

CMatrix apply_fn(const CMatrix& a, const std::function<Complex(double)>& f) {
    return apply_fn(herm_eig(a), f);
}

CMatrix imaginary_power(const HermitianEigen& eig, double t) {
    if (eig.values.size() > 0 && eig.values.minCoeff() <= 0.0) {
        std::ostringstream msg;
        msg << "imaginary_power: matrix not positive definite, min eigenvalue "
            << eig.values.minCoeff();
        throw NotPositiveDefinite(msg.str());
    }
    const Eigen::Index n = eig.values.size();
    CVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w[i] = std::exp(Complex(0.0, t * std::log(eig.values[i])));
    }
    return assemble(eig, w);
}

CMatrix imaginary_power(const CMatrix& a, double t) {
    return imaginary_power(herm_eig(a), t);
}

CMatrix frechet_fn(const HermitianEigen& eig, const CMatrix& e, const ScalarFn& fn) {
    const Eigen::Index n = eig.values.size();
    if (e.rows() != n || e.cols() != n)
        throw DimensionMismatch("frechet_fn: direction dimension mismatch");

    CVector fv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        fv[i] = fn.f(eig.values[i]);
        if (!std::isfinite(fv[i].real()) || !std::isfinite(fv[i].imag()))
            throw SpectrumOutOfDomain("frechet_fn: function not finite on spectrum");
    }

    // Loewner matrix of first divided differences; df on coincident pairs.
    CMatrix dd(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double ai = eig.values[i], aj = eig.values[j];
            double scale = 1.0 + std::max(std::abs(ai), std::abs(aj));
            if (std::abs(ai - aj) <= kTolEigCoincide * scale) {
                dd(i, j) = fn.df(0.5 * (ai + aj));
                if (!std::isfinite(dd(i, j).real()) || !std::isfinite(dd(i, j).imag()))
                    throw SpectrumOutOfDomain("frechet_fn: derivative not finite on spectrum");
            } else {
                dd(i, j) = (fv[i] - fv[j]) / (ai - aj);
            }
        }
    }
    CMatrix e_basis = eig.vectors.adjoint() * e * eig.vectors;
    return eig.vectors * dd.cwiseProduct(e_basis) * eig.vectors.adjoint();
}

CMatrix frechet_fn(const CMatrix& a, const CMatrix& e, const ScalarFn& fn) {
    return frechet_fn(herm_eig(a), e, fn);
}

CMatrix sym_solve(const HermitianEigen& eig_t, const CMatrix& r) {
    const Eigen::Index n = eig_t.values.size();
    if (r.rows() != n || r.cols() != n)
        throw DimensionMismatch("sym_solve: right-hand side dimension mismatch");
    if (n > 0 && eig_t.values.minCoeff() <= 0.0)
        throw NotPositiveDefinite("sym_solve: coefficient matrix not positive definite");

    CMatrix r_basis = eig_t.vectors.adjoint() * r * eig_t.vectors;
    CMatrix l_basis(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            l_basis(i, j) = 2.0 * r_basis(i, j) / (eig_t.values[i] + eig_t.values[j]);
    return eig_t.vectors * l_basis * eig_t.vectors.adjoint();
}

CMatrix sym_solve(const CMatrix& t, const CMatrix& r) {
    return sym_solve(herm_eig(t), r);
}

}  // namespace modgeo
