#include <random>

#include "doctest.h"
#include "modgeo/cocycle.hpp"
#include "modgeo/random.hpp"
#include "support/dense_oracle.hpp"
#include "support/oracles.hpp"

using namespace modgeo;

namespace {

// Shared diagonal instance with hand-computable closed forms: base state
// I/2 and generator diag(1, 3).
Cocycle diagonal_example() {
    CMatrix rho = 0.5 * CMatrix::Identity(2, 2);
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    p(1, 1) = 3.0;
    return Cocycle(GnsSpace(DensityMatrix(rho)), p);
}

}  // namespace

TEST_CASE("diagonal cocycle entries are scalar powers") {
    Cocycle c = diagonal_example();
    for (double t : {-2.0, 0.3, 1.0}) {
        CMatrix u = c.unitary(t);
        // Entries (rho_i / p_i)^{it}: here 2^{-it} and 6^{-it}.
        CHECK(std::abs(u(0, 0) - std::exp(Complex(0.0, -t * std::log(2.0)))) < 1e-14);
        CHECK(std::abs(u(1, 1) - std::exp(Complex(0.0, -t * std::log(6.0)))) < 1e-14);
        CHECK(std::abs(u(0, 1)) < 1e-15);
    }
}

TEST_CASE("diagonal cocycle closed forms for the derived objects") {
    Cocycle c = diagonal_example();
    CHECK(c.zeta() == doctest::Approx(std::log(4.0)).epsilon(1e-14));

    InducedState ind = c.induced_state();
    CHECK(std::abs(ind.rho.matrix()(0, 0) - Complex(0.25, 0.0)) < 1e-14);
    CHECK(std::abs(ind.rho.matrix()(1, 1) - Complex(0.75, 0.0)) < 1e-14);
    CHECK(ind.zeta == doctest::Approx(std::log(4.0)).epsilon(1e-14));

    HsVector edge = c.xi(Complex(0.0, 0.5));
    CHECK(std::abs(edge(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(edge(1, 1) - Complex(std::sqrt(3.0), 0.0)) < 1e-14);

    CMatrix y = c.y_op().right;
    CHECK(std::abs(y(0, 0) - Complex(std::sqrt(2.0), 0.0)) < 1e-13);
    CHECK(std::abs(y(1, 1) - Complex(std::sqrt(6.0), 0.0)) < 1e-13);
}

TEST_CASE("cocycle unitarity and cocycle identity on random data") {
    std::mt19937_64 rng(1234);
    for (int n : {2, 3, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            GnsSpace space(random_density(n, rng));
            Cocycle c(space, random_positive(n, rng));
            for (double t : {-1.1, 0.0, 0.7}) {
                CMatrix u = c.unitary(t);
                CHECK(rel_diff(CMatrix(u * u.adjoint()),
                               CMatrix(CMatrix::Identity(n, n))) < 1e-11);
            }
            for (double r : {-0.8, 0.4})
                for (double t : {-0.3, 1.2}) CHECK(c.cocycle_defect(r, t) < 1e-11);
        }
    }
}

TEST_CASE("the unitary at t=0 is the identity") {
    std::mt19937_64 rng(77);
    GnsSpace space(random_density(3, rng));
    Cocycle c(space, random_positive(3, rng));
    CHECK(rel_diff(c.unitary(0.0), CMatrix(CMatrix::Identity(3, 3))) < 1e-13);
}

TEST_CASE("xi is continuous on the strip and rejects the exterior") {
    std::mt19937_64 rng(88);
    GnsSpace space(random_density(3, rng));
    Cocycle c(space, random_positive(3, rng));

    Complex z0(0.3, 0.2);
    double big = hs_norm(c.xi(z0 + Complex(1e-4, 0.0)) - c.xi(z0));
    double small = hs_norm(c.xi(z0 + Complex(1e-5, 0.0)) - c.xi(z0));
    CHECK(big / small == doctest::Approx(10.0).epsilon(0.05));

    CHECK_THROWS_AS(c.xi(Complex(0.0, -0.1)), StripViolation);
    CHECK_THROWS_AS(c.xi(Complex(0.0, 0.6)), StripViolation);
}

TEST_CASE("xi at real z is the cocycle orbit of the cyclic vector") {
    std::mt19937_64 rng(99);
    GnsSpace space(random_density(4, rng));
    Cocycle c(space, random_positive(4, rng));
    for (double t : {-1.5, 0.6}) {
        HsVector direct = c.xi(Complex(t, 0.0));
        HsVector via_unitary = space.act_left(c.unitary(t), space.omega0());
        CHECK(hs_norm(direct - via_unitary) < 1e-12);
    }
}

TEST_CASE("interpolation bound holds with equality at both strip edges") {
    std::mt19937_64 rng(111);
    for (int trial = 0; trial < 8; ++trial) {
        GnsSpace space(random_density(3, rng));
        Cocycle c(space, random_positive(3, rng));
        VerificationReport rep = c.analytic_bound_report({0.0, 0.1, 0.25, 0.4, 0.5});
        CHECK(rep.all_pass());
        double tr_p = c.xi(Complex(0.0, 0.5)).squaredNorm();
        CHECK(std::abs(c.xi(Complex(0.0, 0.0)).squaredNorm() - 1.0) < 1e-12);
        CHECK(tr_p == doctest::Approx(std::exp(c.zeta())).epsilon(1e-12));
    }
}

TEST_CASE("state correspondence: pairing against the edge vector") {
    std::mt19937_64 rng(222);
    for (int n : {2, 4}) {
        GnsSpace space(random_density(n, rng));
        Cocycle c(space, random_positive(n, rng));
        InducedState ind = c.induced_state();
        HsVector omega_u = std::exp(-0.5 * ind.zeta) * c.xi(Complex(0.0, 0.5));
        CHECK(std::abs(hs_inner(omega_u, omega_u) - Complex(1.0, 0.0)) < 1e-12);
        CMatrix a = random_hermitian(n, rng);
        Complex paired = hs_inner(space.act_left(a, omega_u), omega_u);
        Complex direct = (ind.rho.matrix() * a).trace();
        CHECK(std::abs(paired - direct) < 1e-12);
    }
}

TEST_CASE("induced state inverts the generator up to the recorded scale") {
    std::mt19937_64 rng(333);
    GnsSpace space(random_density(3, rng));
    DensityMatrix target = random_density(3, rng);
    double scale = 2.7;
    Cocycle c(space, scale * target.matrix());
    InducedState ind = c.induced_state();
    CHECK(rel_diff(ind.rho.matrix(), target.matrix()) < 1e-13);
    CHECK(ind.zeta == doctest::Approx(std::log(scale)).epsilon(1e-13));

    // Rescaling the generator shifts zeta by exactly the logarithm.
    Cocycle c2(space, target.matrix());
    CHECK(c.zeta() - c2.zeta() == doctest::Approx(std::log(scale)).epsilon(1e-12));
}

TEST_CASE("operator identities and the half power chain pass on random data") {
    std::mt19937_64 rng(444);
    for (int n : {2, 3, 6}) {
        GnsSpace space(random_density(n, rng));
        Cocycle c(space, random_positive(n, rng));
        std::vector<CMatrix> samples = {CMatrix::Identity(n, n), random_hermitian(n, rng),
                                        random_gaussian(n, rng)};
        VerificationReport ops = c.operator_identity_report(samples);
        INFO("max residual ", ops.max_residual());
        CHECK(ops.all_pass());
        VerificationReport chain = c.half_power_chain_report(random_gaussian(n, rng));
        CHECK(chain.all_pass());
    }
}

TEST_CASE("factored powers match the dense superoperator") {
    std::mt19937_64 rng(555);
    for (int n : {2, 3}) {
        GnsSpace space(random_density(n, rng));
        CMatrix p = random_positive(n, rng);
        Cocycle c(space, p);
        CMatrix t_dense = dense::relative_operator_dense(p, space.rho0().matrix());
        for (int trial = 0; trial < 4; ++trial) {
            CMatrix x = random_gaussian(n, rng);
            for (Complex w : {Complex(0.5, 0.0), Complex(-1.0, 0.0), Complex(0.3, 0.0)}) {
                CVector via_dense = dense::hermitian_power(t_dense, w) * dense::vec(x);
                CHECK((dense::vec(c.t_power(w).apply(x)) - via_dense).norm() < 1e-10);
            }
        }
        // The strip vector through the dense route: T^{-iz} applied to Omega0.
        for (Complex z : {Complex(0.7, 0.0), Complex(0.2, 0.3), Complex(0.0, 0.5)}) {
            Complex miz(z.imag(), -z.real());
            CVector via_dense =
                dense::hermitian_power(t_dense, miz) * dense::vec(space.omega0());
            CHECK((dense::vec(c.xi(z)) - via_dense).norm() < 1e-10);
        }
    }
}

TEST_CASE("generators that are not positive definite are rejected") {
    std::mt19937_64 rng(666);
    GnsSpace space(random_density(2, rng));
    CMatrix singular = CMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(Cocycle(space, singular), NotPositiveDefinite);
    CMatrix wrong_dim = CMatrix::Identity(3, 3);
    CHECK_THROWS_AS(Cocycle(space, wrong_dim), DimensionMismatch);
}
