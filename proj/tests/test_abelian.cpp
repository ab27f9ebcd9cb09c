#include <cmath>
#include <random>

#include "doctest.h"
#include "modgeo/abelian.hpp"
#include "modgeo/geodesic.hpp"
#include "support/oracles.hpp"

using namespace modgeo;

namespace {

ClassicalAmplitude two_point_amp(double p0, double p1) {
    RVector w(2);
    w << 1.0, 1.0;
    CVector psi(2);
    psi << Complex(std::sqrt(p0), 0.0), Complex(std::sqrt(p1), 0.0);
    return ClassicalAmplitude(FiniteMeasureSpace(w), psi);
}

}  // namespace

TEST_CASE("amplitude validation") {
    RVector w(2);
    w << 1.0, 1.0;
    CVector bad_norm(2);
    bad_norm << Complex(1.0, 0.0), Complex(1.0, 0.0);
    CHECK_THROWS_AS(ClassicalAmplitude(FiniteMeasureSpace(w), bad_norm), NotNormalized);

    CVector vanishing(2);
    vanishing << Complex(1.0, 0.0), Complex(0.0, 0.0);
    CHECK_THROWS_AS(ClassicalAmplitude(FiniteMeasureSpace(w), vanishing),
                    VanishingAmplitude);

    RVector negw(2);
    negw << 1.0, -1.0;
    CHECK_THROWS_AS(FiniteMeasureSpace{negw}, Error);
}

TEST_CASE("probabilities weigh the squared amplitudes") {
    RVector w(2);
    w << 2.0, 1.0;
    CVector psi(2);
    psi << Complex(0.5, 0.0), Complex(std::sqrt(0.5), 0.0);
    ClassicalAmplitude amp(FiniteMeasureSpace(w), psi);
    RVector p = classical_state(amp);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));

    ClassicalAmplitude plain = two_point_amp(0.75, 0.25);
    RVector q = classical_state(plain);
    CHECK(q[0] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(q[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("exponential tangent check evaluates the defining sums") {
    ClassicalAmplitude amp = two_point_amp(0.5, 0.5);
    RVector k(2);
    k << 1.0, -1.0;
    TangentCheckReport rep = exp_tangent_check(amp, k, 1.0);
    CHECK(rep.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    double both = 0.5 * (std::exp(1.0) + std::exp(-1.0));
    CHECK(rep.value_plus == doctest::Approx(both).epsilon(1e-12));
    CHECK(rep.value_minus == doctest::Approx(both).epsilon(1e-12));
    CHECK(rep.finite);
    CHECK_FALSE(rep.divergence_flag);

    RVector zero = RVector::Zero(2);
    TangentCheckReport triv = exp_tangent_check(amp, zero, 1.0);
    CHECK(triv.value == doctest::Approx(0.0));
    CHECK_THROWS_AS(exp_tangent_check(amp, k, 0.0), ZeroScale);
}

TEST_CASE("tangent check flags floating overflow") {
    ClassicalAmplitude amp = two_point_amp(0.5, 0.5);
    RVector k(2);
    k << 800.0, -800.0;
    TangentCheckReport rep = exp_tangent_check(amp, k, 1.0);
    CHECK_FALSE(rep.finite);
    CHECK(rep.divergence_flag);
}

TEST_CASE("tangent check symmetry under simultaneous permutation and sign flip") {
    RVector w(3);
    w << 1.0, 2.0, 1.0;
    CVector psi(3);
    psi << Complex(0.4, 0.0), Complex(0.5, 0.0), Complex(std::sqrt(0.34), 0.0);
    ClassicalAmplitude amp(FiniteMeasureSpace(w), psi);
    RVector k(3);
    k << 0.7, -0.2, 1.1;
    TangentCheckReport a = exp_tangent_check(amp, k, 0.9);
    // Flipping k swaps the one sided sums and keeps the absolute sum.
    TangentCheckReport b = exp_tangent_check(amp, RVector(-k), 0.9);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
    CHECK(a.value_plus == doctest::Approx(b.value_minus).epsilon(1e-13));
    CHECK(a.value_minus == doctest::Approx(b.value_plus).epsilon(1e-13));
}

TEST_CASE("grid mode converges for a dominated direction and flags a runaway one") {
    GridSpec grid;
    grid.density = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    };
    grid.k = [](double x) { return x; };
    TangentCheckReport linear = exp_tangent_check_grid(grid, 0.5);
    CHECK(linear.finite);
    CHECK_FALSE(linear.divergence_flag);
    // E[e^{tX}] for standard Gaussian is e^{t^2/2}.
    CHECK(linear.value_plus == doctest::Approx(std::exp(0.125)).epsilon(1e-3));

    GridSpec runaway = grid;
    runaway.k = [](double x) { return x * x; };
    TangentCheckReport quad = exp_tangent_check_grid(runaway, 2.0);
    CHECK(quad.divergence_flag);
}

TEST_CASE("geodesic points follow the scalar closed form") {
    ClassicalAmplitude amp = two_point_amp(0.75, 0.25);
    RVector h(2);
    h << std::log(1.5), -std::log(2.0);
    ClassicalPathPoint mid = classical_geodesic(amp, h, 0.5);
    RVector p = classical_state(mid.omega);
    CHECK(p[0] == doctest::Approx(0.6339746).epsilon(1e-6));
    CHECK(p[1] == doctest::Approx(0.3660254).epsilon(1e-6));
    CHECK(mid.zeta == doctest::Approx(std::log(0.9659258262890683)).epsilon(1e-9));

    // The endpoint hits the uniform distribution this h was built for.
    RVector p1 = classical_state(classical_geodesic(amp, h, 1.0).omega);
    CHECK(p1[0] == doctest::Approx(0.5).epsilon(1e-12));

    // Trivial cases.
    ClassicalPathPoint start = classical_geodesic(amp, h, 0.0);
    CHECK((start.omega.psi - amp.psi).norm() < 1e-13);
    CHECK(start.zeta == doctest::Approx(0.0));
    ClassicalPathPoint flat = classical_geodesic(amp, RVector::Zero(2), 0.7);
    CHECK((flat.omega.psi - amp.psi).norm() < 1e-13);
    CHECK(flat.zeta == doctest::Approx(0.0));
}

TEST_CASE("geodesic amplitudes stay normalized and flow as a group") {
    std::mt19937_64 rng(2001);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 2 + static_cast<int>(unif(rng) * 6);
        RVector w(m), h(m);
        CVector psi(m);
        for (int i = 0; i < m; ++i) {
            w[i] = 0.5 + 1.5 * unif(rng);
            h[i] = -2.0 + 4.0 * unif(rng);
            psi[i] = Complex(0.2 + unif(rng), unif(rng) - 0.5);
        }
        psi /= std::sqrt((w.array() * psi.array().abs2()).sum());
        ClassicalAmplitude amp(FiniteMeasureSpace(w), psi);

        RVector p_s = classical_state(classical_geodesic(amp, h, 0.3).omega);
        RVector p_sr = classical_state(classical_geodesic(amp, h, 0.75).omega);
        RVector pushed = (p_s.array() * (-0.45 * h.array()).exp()).matrix();
        pushed /= pushed.sum();
        CHECK((p_sr - pushed).cwiseAbs().maxCoeff() < 1e-12);

        double prev = 0.0, cur = 0.0;
        for (int j = 0; j <= 10; ++j) {
            double z = classical_geodesic(amp, h, j / 10.0).zeta;
            if (j >= 2) CHECK(z - 2.0 * cur + prev > -1e-10);
            prev = cur;
            cur = z;
        }
    }
}

TEST_CASE("huge generators overflow into TangentConditionFailed") {
    ClassicalAmplitude amp = two_point_amp(0.5, 0.5);
    RVector h(2);
    h << 1500.0, 0.0;
    CHECK_THROWS_AS(classical_geodesic(amp, h, -1.0), TangentConditionFailed);
}

TEST_CASE("diagonal embedding reproduces the classical path inside matrices") {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        int m = 2 + static_cast<int>(unif(rng) * 4);
        RVector w(m), h(m);
        CVector psi(m);
        for (int i = 0; i < m; ++i) {
            w[i] = 0.5 + unif(rng);
            h[i] = -1.5 + 3.0 * unif(rng);
            psi[i] = Complex(0.3 + unif(rng), 0.0);
        }
        psi /= std::sqrt((w.array() * psi.array().abs2()).sum());
        ClassicalAmplitude amp(FiniteMeasureSpace(w), psi);

        auto [rho0, rho1] = embed_diagonal(amp, h);
        GeodesicPath path = GeodesicPath::connect(rho0, rho1);
        double z1 = classical_geodesic(amp, h, 1.0).zeta;
        for (double s : {0.25, 0.5, 0.9}) {
            ClassicalPathPoint cp = classical_geodesic(amp, h, s);
            RVector p = classical_state(cp.omega);
            PathState ms = path.state(s);
            for (int i = 0; i < m; ++i)
                CHECK(std::abs(p[i] - ms.rho.matrix()(i, i).real()) < 1e-12);
            // zeta values agree after removing the affine gauge fixed by the
            // endpoints (the matrix route renormalizes h).
            double gauge_c = cp.zeta - s * z1;
            double gauge_m = ms.zeta - (1.0 - s) * path.zeta(0.0) - s * path.zeta(1.0);
            CHECK(std::abs(gauge_c - gauge_m) < 1e-12);
        }
    }
}
