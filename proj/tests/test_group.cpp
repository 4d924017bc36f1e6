#include "bergman/group.hpp"

#include "bergman/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bergman;

namespace {
const Signature kSig21{2, 1};
}

TEST_SUITE("group") {

TEST_CASE("validate_group accepts the identity and boosts") {
    GroupElement id = validate_group(Mat::Identity(3, 3), kSig21);
    CHECK(max_abs(Mat(id.mat - Mat::Identity(3, 3))) == 0.0);

    GroupElement d = boost_delta(0.7, kSig21);
    CHECK_NOTHROW(validate_group(d.mat, kSig21));
    CHECK(gamma_unitarity_residual(d.mat, kSig21) < 1e-14);
}

TEST_CASE("validate_group rejects Gamma itself (det = -1)") {
    CHECK_THROWS_AS(validate_group(kSig21.gamma(), kSig21), DeterminantNotOne);
}

TEST_CASE("validate_group rejects non-Gamma-unitary input") {
    Mat m = Mat::Identity(3, 3);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(validate_group(m, kSig21), NotGammaUnitary);
}

TEST_CASE("group closure under products") {
    Rng rng(101);
    for (int i = 0; i < 20; ++i) {
        GroupElement g1 = exp_algebra(random_su21(rng, 0.7));
        GroupElement g2 = exp_algebra(random_su21(rng, 0.7));
        CHECK_NOTHROW(validate_group((g1 * g2).mat, kSig21, 2 * kTolGroup));
    }
}

TEST_CASE("exp_algebra of zero is the identity") {
    AlgebraElement zero{Mat::Zero(3, 3), kSig21};
    CHECK(max_abs(Mat(exp_algebra(zero).mat - Mat::Identity(3, 3))) == 0.0);
}

TEST_CASE("exp_algebra of t X_7 is the cosh/sinh boost") {
    const double t = 0.3;
    AlgebraElement x{t * su21_basis().mat(7), kSig21};
    GroupElement g = exp_algebra(x);
    // series-summed oracle
    Mat oracle = oracles::expm_series(x.mat);
    CHECK(max_abs(Mat(g.mat - oracle)) < 1e-14);
    CHECK(g.mat(1, 1).real() == doctest::Approx(1.04533851412886049).epsilon(1e-14));
    CHECK(g.mat(1, 2).real() == doctest::Approx(0.30452029344714262).epsilon(1e-14));
    CHECK(g.mat(0, 0) == cplx(1.0));
    CHECK(max_abs(Mat(g.mat - boost_delta(t, kSig21).mat)) < 1e-14);
}

TEST_CASE("exp_algebra of alpha X_3 is a diagonal phase") {
    const double alpha = 0.9;
    AlgebraElement x{alpha * su21_basis().mat(3), kSig21};
    Mat g = exp_algebra(x).mat;
    CHECK(std::abs(g(0, 0) - std::exp(I_UNIT * alpha)) < 1e-14);
    CHECK(std::abs(g(1, 1) - std::exp(-I_UNIT * alpha)) < 1e-14);
    CHECK(std::abs(g(2, 2) - 1.0) < 1e-14);
    CHECK(std::abs(g(0, 1)) + std::abs(g(1, 0)) < 1e-15);
}

TEST_CASE("matrix exponential round-trip contract up to norm 5") {
    Rng rng(55);
    for (int i = 0; i < 30; ++i) {
        AlgebraElement x = random_su21(rng, 0.9);
        Mat scaled = x.mat * (5.0 / std::max(1.0, x.mat.norm()));
        Mat r = expm(scaled) * expm(Mat(-scaled));
        CHECK(max_abs(Mat(r - Mat::Identity(3, 3))) < 1e-12);
    }
}

TEST_CASE("cartan decomposition fixed points") {
    CartanFactors cf = cartan_decompose(validate_group(Mat::Identity(3, 3), kSig21));
    CHECK(cf.t == 0.0);
    CHECK(max_abs(Mat(cf.k.mat * cf.q.mat.adjoint() - Mat::Identity(3, 3))) < 1e-14);

    CartanFactors cb = cartan_decompose(boost_delta(0.7, kSig21));
    CHECK(cb.t == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(max_abs(Mat(cb.k.mat - Mat::Identity(3, 3))) < 1e-13);
    CHECK(max_abs(Mat(cb.q.mat - Mat::Identity(3, 3))) < 1e-13);
}

TEST_CASE("cartan round-trip on 100 random group elements") {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        GroupElement g = exp_algebra(random_su21(rng, 2.0 / std::sqrt(8.0)));
        CartanFactors cf = cartan_decompose(g);
        CHECK(cf.t >= 0.0);
        CHECK(max_abs(Mat(cf.reassemble() - g.mat)) < 1e-10);
        CHECK(cf.block_diag_residual() < 1e-10);
        // factors are genuine compact-subgroup elements
        CHECK_NOTHROW(validate_group(cf.k.mat, kSig21, 1e-9));
        CHECK_NOTHROW(validate_group(cf.q.mat, kSig21, 1e-9));
        // M-phase convention: (3,3) entry of q is 1
        if (cf.t > 1e-8) {
            CHECK(std::abs(cf.q.mat(2, 2) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("haar density values and monotonicity") {
    CHECK(haar_density(0.0) == 0.0);
    CHECK(haar_density(1.0) == doctest::Approx(5.00904909535842873).epsilon(1e-14));
    CHECK(haar_density(0.5) == doctest::Approx(0.31911450513985396).epsilon(1e-14));
    double prev = 0.0;
    for (double t = 0.1; t <= 3.0; t += 0.1) {
        double rho = haar_density(t);
        CHECK(rho > prev);
        prev = rho;
    }
}

TEST_CASE("structure constants of the explicit basis") {
    const Su21Basis& b = su21_basis();
    SUBCASE("trace form is diagonal with the expected signs") {
        const std::array<double, 8> expected{2, 2, 2, -2, -2, -2, -2, 2};
        for (int a = 0; a < 8; ++a)
            CHECK(b.gram[static_cast<std::size_t>(a)] ==
                  doctest::Approx(expected[static_cast<std::size_t>(a)]).epsilon(1e-14));
    }
    SUBCASE("antisymmetric slice at (A, B) = (1, 1) vanishes") {
        for (int c = 0; c < 8; ++c) CHECK(b.f[c][0][0] == 0.0);
    }
    SUBCASE("[X1, X2] = -2 X3") {
        CHECK(b.f[2][0][1] == doctest::Approx(-2.0).epsilon(1e-14));
        for (int c = 0; c < 8; ++c) {
            if (c != 2) CHECK(std::abs(b.f[c][0][1]) < 1e-13);
        }
    }
    SUBCASE("antisymmetry in (A, B)") {
        for (int c = 0; c < 8; ++c)
            for (int a = 0; a < 8; ++a)
                for (int bb = 0; bb < 8; ++bb)
                    CHECK(std::abs(b.f[c][a][bb] + b.f[c][bb][a]) < 1e-13);
    }
    SUBCASE("Jacobi identity") { CHECK(jacobi_residual(b.f) < 1e-12); }
}

TEST_CASE("killing vector closed forms at pinned points") {
    cplx z1(0.21, -0.12), z2(-0.3, 0.08);
    SUBCASE("A=3 rotation") {
        KillingVector k = killing_vector(3, z1, z2, 5.0);
        CHECK(std::abs(k.c1 - I_UNIT * z1) < 1e-15);
        CHECK(std::abs(k.c2 + I_UNIT * z2) < 1e-15);
        CHECK(std::abs(k.scalar) == 0.0);
    }
    SUBCASE("A=5 at the origin") {
        KillingVector k = killing_vector(5, 0.0, 0.0, 5.0);
        CHECK(k.c1 == cplx(1.0));
        CHECK(k.c2 == cplx(0.0));
        CHECK(k.scalar == cplx(0.0));
    }
    SUBCASE("A=8 at the origin carries the representation scalar") {
        const double n = 6.0;
        KillingVector k = killing_vector(8, 0.0, 0.0, n);
        CHECK(k.c1 == cplx(0.0));
        CHECK(k.c2 == cplx(0.0));
        CHECK(std::abs(k.scalar - I_UNIT * 2.0 * n / std::sqrt(3.0)) < 1e-15);
    }
    SUBCASE("rotation entries carry no multiplier") {
        for (int a = 1; a <= 3; ++a) {
            KillingVector k = killing_vector(a, z1, z2, 4.0);
            KillingVector l = killing_vector_literal(a, z1, z2, 4.0);
            CHECK(std::abs(k.c1 - l.c1) == 0.0);
            CHECK(std::abs(k.c2 - l.c2) == 0.0);
            CHECK(std::abs(k.scalar - l.scalar) == 0.0);
        }
    }
}

TEST_CASE("killing vectors close onto the matrix structure constants") {
    KillingClosureReport rep = measure_killing_closure(3.0);
    // The differential-operator bracket anti-commutes with the matrix bracket.
    CHECK(rep.bracket_sign == -1);
    CHECK(rep.residual < 1e-12);
    // The multiplier-free variant (and its -i/sqrt(3) dilation coefficient)
    // does not close; the gap is what the concordance records.
    CHECK(rep.literal_residual > 1.0);
}

} // TEST_SUITE
