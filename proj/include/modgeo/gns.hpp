#pragma once

// Hilbert-Schmidt representation of a faithful state on the n x n matrix
// algebra. Vectors of the representation space are themselves n x n complex
// matrices with inner product <X, Y> = Tr Y* X; the algebra acts by left
// multiplication and its commutant by right multiplication. The cyclic vector
// for a density matrix rho0 is Omega0 = rho0^{1/2}, and the modular objects
// of the pair (algebra, Omega0) have closed forms:
//
//   Delta^z X = rho0^z X rho0^{-z}
//   J X       = X*                      (antilinear)
//   S X       = rho0^{-1/2} X* rho0^{1/2}   (= J Delta^{1/2})
//   sigma_t(A) = rho0^{-it} A rho0^{it}     (modular flow on the algebra)
//
// Antilinear maps are deliberately kept as functions on vectors; they are
// never materialized as matrices.

#include "modgeo/matfun.hpp"

namespace modgeo {

/// A vector of the Hilbert-Schmidt space: an n x n complex matrix.
using HsVector = CMatrix;

/// <X, Y> = Tr Y* X.
inline Complex hs_inner(const HsVector& x, const HsVector& y) {
    return (y.adjoint() * x).trace();
}

inline double hs_norm(const HsVector& x) { return x.norm(); }

/// A linear map X -> L X R on Hilbert-Schmidt vectors. Left multiplications
/// (R = I) represent algebra elements, right multiplications (L = I) elements
/// of the commutant, and general two-sided maps arise as operator powers of
/// the modular-type operators used here, all of which factor this way.
struct HsMap {
    CMatrix left;
    CMatrix right;

    HsVector apply(const HsVector& x) const {
        if (left.cols() != x.rows() || x.cols() != right.rows())
            throw DimensionMismatch("HsMap: vector dimension mismatch");
        return left * x * right;
    }
};

HsMap left_mult(const CMatrix& m);
HsMap right_mult(const CMatrix& m);

/// Faithful density matrix: Hermitian, unit trace, smallest eigenvalue at
/// least kEpsFaithful. Construction validates and keeps the spectral
/// decomposition for downstream functional calculus.
class DensityMatrix {
  public:
    static constexpr double kTolTrace = 1e-12;
    static constexpr double kEpsFaithful = 1e-10;

    explicit DensityMatrix(const CMatrix& entries);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }
    const HermitianEigen& eig() const { return eig_; }

  private:
    CMatrix mat_;
    HermitianEigen eig_;
};

/// The representation space of a faithful density matrix together with its
/// modular machinery. All matrix powers of rho0 reuse one eigendecomposition.
class GnsSpace {
  public:
    explicit GnsSpace(DensityMatrix rho0);

    int dim() const { return rho0_.dim(); }
    const DensityMatrix& rho0() const { return rho0_; }

    /// Cyclic vector rho0^{1/2}.
    const HsVector& omega0() const { return sqrt_rho0_; }
    const CMatrix& sqrt_rho0() const { return sqrt_rho0_; }
    const CMatrix& inv_sqrt_rho0() const { return inv_sqrt_rho0_; }
    const CMatrix& log_rho0() const { return log_rho0_; }

    /// rho0^z for arbitrary complex z.
    CMatrix rho0_power(Complex z) const;

    /// Left action of the algebra: A . X = A X.
    HsVector act_left(const CMatrix& a, const HsVector& x) const;
    /// Right action of the commutant: X . B = X B.
    HsVector act_right(const CMatrix& b, const HsVector& x) const;

    /// Delta^z X = rho0^z X rho0^{-z}.
    HsVector delta_power(Complex z, const HsVector& x) const;

    /// Antilinear involution J X = X*.
    HsVector modular_J(const HsVector& x) const;

    /// Antilinear closure map S X = rho0^{-1/2} X* rho0^{1/2} = J Delta^{1/2} X.
    HsVector modular_S(const HsVector& x) const;
    /// Adjoint S* X = rho0^{1/2} X* rho0^{-1/2} = Delta^{1/2} J X.
    HsVector modular_S_adjoint(const HsVector& x) const;

    /// Modular flow sigma_t(A) = rho0^{-it} A rho0^{it} on algebra elements.
    CMatrix modular_flow(double t, const CMatrix& a) const;

    /// State value Tr(rho0 A).
    Complex expectation(const CMatrix& a) const;

  private:
    void check_dim(const CMatrix& m, const char* where) const;

    DensityMatrix rho0_;
    CMatrix sqrt_rho0_;
    CMatrix inv_sqrt_rho0_;
    CMatrix log_rho0_;
};

}  // namespace modgeo
