#include <random>

#include "doctest.h"
#include "modgeo/gns.hpp"
#include "modgeo/random.hpp"
#include "support/dense_oracle.hpp"
#include "support/oracles.hpp"

using namespace modgeo;

TEST_CASE("density matrix constructor validates its input") {
    CMatrix good(2, 2);
    good << Complex(0.25, 0), Complex(0, 0), Complex(0, 0), Complex(0.75, 0);
    CHECK_NOTHROW(DensityMatrix{good});

    CMatrix skew(2, 2);
    skew << Complex(0.5, 0), Complex(0.1, 0), Complex(-0.1, 0), Complex(0.5, 0);
    CHECK_THROWS_AS(DensityMatrix{skew}, NotDensity);

    CMatrix off_trace = 2.0 * good;
    CHECK_THROWS_AS(DensityMatrix{off_trace}, NotDensity);

    CMatrix singular = CMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(DensityMatrix{singular}, NotFaithful);

    CMatrix negative(2, 2);
    negative << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
    CHECK_THROWS_AS(DensityMatrix{negative}, NotFaithful);
}

TEST_CASE("cyclic vector is the square root and is normalized") {
    std::mt19937_64 rng(11);
    for (int n : {2, 4}) {
        GnsSpace space(random_density(n, rng));
        CHECK(rel_diff(CMatrix(space.omega0() * space.omega0()),
                       space.rho0().matrix()) < 1e-13);
        CHECK(std::abs(hs_inner(space.omega0(), space.omega0()) - Complex(1.0, 0.0)) < 1e-13);
        // Expectation through the vector equals the trace pairing.
        CMatrix a = random_hermitian(n, rng);
        Complex via_vector = hs_inner(space.act_left(a, space.omega0()), space.omega0());
        CHECK(std::abs(via_vector - space.expectation(a)) < 1e-13);
    }
}

TEST_CASE("delta powers agree with the dense superoperator route") {
    std::mt19937_64 rng(22);
    for (int n : {2, 3}) {
        GnsSpace space(random_density(n, rng));
        for (int trial = 0; trial < 4; ++trial) {
            CMatrix x = random_gaussian(n, rng);
            for (Complex z : {Complex(0.5, 0.0), Complex(-1.0, 0.0), Complex(0.0, 1.3),
                              Complex(0.25, -0.7)}) {
                CMatrix dense_op =
                    dense::delta_power_dense(space.rho0().matrix(), z);
                CVector via_dense = dense_op * dense::vec(x);
                CHECK((dense::vec(space.delta_power(z, x)) - via_dense).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("the cyclic vector is a fixed point of the modular operator") {
    std::mt19937_64 rng(33);
    GnsSpace space(random_density(3, rng));
    CHECK(hs_norm(space.delta_power(Complex(1.0, 0.0), space.omega0()) - space.omega0()) <
          1e-12);
    CHECK(hs_norm(space.delta_power(Complex(0.0, 0.8), space.omega0()) - space.omega0()) <
          1e-12);
}

TEST_CASE("S maps A Omega0 to A* Omega0 and squares to the identity") {
    std::mt19937_64 rng(44);
    for (int n : {2, 3, 4}) {
        GnsSpace space(random_density(n, rng));
        for (int trial = 0; trial < 4; ++trial) {
            CMatrix a = random_gaussian(n, rng);
            HsVector a_omega = space.act_left(a, space.omega0());
            HsVector expect = space.act_left(CMatrix(a.adjoint()), space.omega0());
            CHECK(hs_norm(space.modular_S(a_omega) - expect) < 1e-11);
            CHECK(hs_norm(space.modular_S(space.modular_S(a_omega)) - a_omega) < 1e-11);

            // S equals J composed with Delta^{1/2} pointwise.
            HsVector x = random_gaussian(n, rng);
            CHECK(hs_norm(space.modular_S(x) -
                          space.modular_J(space.delta_power(Complex(0.5, 0.0), x))) < 1e-11);
            // Antilinear adjoint relation <S x, y> = <S* y, x>.
            HsVector y = random_gaussian(n, rng);
            CHECK(std::abs(hs_inner(space.modular_S(x), y) -
                           hs_inner(space.modular_S_adjoint(y), x)) < 1e-11);
            // Dense route for the closure map.
            CHECK((dense::vec(space.modular_S(x)) -
                   dense::s_operator_dense(space.rho0().matrix(), dense::vec(x), n))
                      .norm() < 1e-10);
        }
    }
}

TEST_CASE("modular flow is a state preserving automorphism group") {
    std::mt19937_64 rng(55);
    GnsSpace space(random_density(4, rng));
    CMatrix a = random_gaussian(4, rng);
    CMatrix b = random_gaussian(4, rng);
    for (double t : {-1.3, 0.6}) {
        CMatrix fa = space.modular_flow(t, a);
        CMatrix fb = space.modular_flow(t, b);
        CHECK(rel_diff(space.modular_flow(t, CMatrix(a * b)), CMatrix(fa * fb)) < 1e-12);
        CHECK(std::abs(space.expectation(fa) - space.expectation(a)) < 1e-12);
    }
    CMatrix once = space.modular_flow(0.4, space.modular_flow(0.9, a));
    CHECK(rel_diff(once, space.modular_flow(1.3, a)) < 1e-12);

    // Delta^{it} moves algebra vectors by the flow at -t.
    double t = 0.7;
    HsVector lhs = space.delta_power(Complex(0.0, t), space.act_left(a, space.omega0()));
    HsVector rhs = space.act_left(space.modular_flow(-t, a), space.omega0());
    CHECK(hs_norm(lhs - rhs) < 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
    std::mt19937_64 rng(66);
    GnsSpace space(random_density(3, rng));
    CMatrix wrong = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(space.act_left(wrong, space.omega0()), DimensionMismatch);
    CHECK_THROWS_AS(space.delta_power(Complex(1.0, 0.0), wrong), DimensionMismatch);
    HsMap m = left_mult(CMatrix::Identity(2, 2));
    CHECK_THROWS_AS(m.apply(space.omega0()), DimensionMismatch);
}
