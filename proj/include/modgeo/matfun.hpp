#pragma once

// Hermitian matrix-function kernel: eigendecomposition with a deterministic
// phase convention, spectral calculus f(A), imaginary powers A^{it}, Frechet
// derivatives of spectral functions, and the symmetrized-product solver.
// Everything downstream (modular operators, cocycles, geodesics) is built on
// these five entry points so that they can be validated once, in isolation.

#include <functional>

#include "modgeo/errors.hpp"
#include "modgeo/types.hpp"

namespace modgeo {

/// Relative Frobenius tolerance accepted when checking Hermiticity.
inline constexpr double kTolHerm = 1e-12;

/// Eigenvalue-coincidence threshold used by the divided-difference table:
/// two eigenvalues a, b count as equal when |a - b| <= kTolEigCoincide * (1 + max(|a|,|b|)).
inline constexpr double kTolEigCoincide = 1e-10;

/// Spectral data of a Hermitian matrix. Eigenvalues are sorted ascending and
/// each eigenvector column is phased so that its first component of
/// significant modulus is real and positive; this makes the decomposition a
/// deterministic function of the input matrix.
struct HermitianEigen {
    RVector values;   // ascending
    CMatrix vectors;  // unitary, column k pairs with values[k]
};

/// A scalar function together with its derivative, both evaluated on the real
/// spectrum but allowed to take complex values (e.g. t -> x^{it}).
struct ScalarFn {
    std::function<Complex(double)> f;
    std::function<Complex(double)> df;
};

ScalarFn exp_fn();
ScalarFn log_fn();
ScalarFn sqrt_fn();
/// x -> x^z for complex z, with derivative z x^{z-1}. Requires x > 0.
ScalarFn power_fn(Complex z);

/// True when ||A - A*||_F <= tol * (1 + ||A||_F).
bool is_hermitian(const CMatrix& a, double tol = kTolHerm);

/// Deterministic spectral decomposition. Throws NotHermitian if the input
/// fails the Hermiticity tolerance; the strictly Hermitian part (A + A*)/2 is
/// what gets decomposed.
HermitianEigen herm_eig(const CMatrix& a);

/// Reassembles U diag(w) U* from spectral data and arbitrary diagonal values.
CMatrix assemble(const HermitianEigen& eig, const CVector& diag_values);

/// f(A) by spectral calculus. Throws SpectrumOutOfDomain when f evaluates to
/// a non-finite value on some eigenvalue (log of a non-positive eigenvalue,
/// negative power of zero, ...).
CMatrix apply_fn(const HermitianEigen& eig, const std::function<Complex(double)>& f);
CMatrix apply_fn(const CMatrix& a, const std::function<Complex(double)>& f);

/// A^{it} = exp(it log A) for positive definite A; the result is unitary.
/// Throws NotPositiveDefinite when the smallest eigenvalue is <= 0.
CMatrix imaginary_power(const HermitianEigen& eig, double t);
CMatrix imaginary_power(const CMatrix& a, double t);

/// Directional (Frechet) derivative of the spectral function f at A in
/// direction E: in the eigenbasis of A the derivative acts entrywise by first
/// divided differences of f, with fn.df taking over on near-coincident
/// eigenvalue pairs. E must match the dimension of A but need not be
/// Hermitian.
CMatrix frechet_fn(const HermitianEigen& eig, const CMatrix& e, const ScalarFn& fn);
CMatrix frechet_fn(const CMatrix& a, const CMatrix& e, const ScalarFn& fn);

/// Solves R = (T L + L T)/2 for L, with T Hermitian positive definite.
/// In the eigenbasis of T the solution is L_ij = 2 R_ij / (t_i + t_j).
CMatrix sym_solve(const HermitianEigen& eig_t, const CMatrix& r);
CMatrix sym_solve(const CMatrix& t, const CMatrix& r);

}  // namespace modgeo
