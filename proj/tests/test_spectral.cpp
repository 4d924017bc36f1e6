#include "bergman/spectral.hpp"

#include "bergman/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bergman;

namespace {

DomainPoint point2(cplx a, cplx b) {
    Vec z(2);
    z << a, b;
    return DomainPoint(z);
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("discrete spectrum enumeration") {
    auto m3 = discrete_spectrum(3);
    REQUIRE(m3.size() == 1);
    CHECK(m3[0].l == 0);
    CHECK(m3[0].eigenvalue == 0);

    auto m5 = discrete_spectrum(5);
    REQUIRE(m5.size() == 2);
    CHECK(m5[1].eigenvalue == -2); // l = 1: 1*(3-5)

    auto m10 = discrete_spectrum(10);
    const long expect[] = {0, -7, -12, -15, -16};
    REQUIRE(m10.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(m10[static_cast<std::size_t>(i)].eigenvalue == expect[i]);

    for (int n = 3; n <= 12; ++n) {
        CHECK(static_cast<int>(discrete_spectrum(n).size()) == (n - 2) / 2 + 1);
    }
}

TEST_CASE("the two eigenvalue formulas agree as exact integers") {
    for (int n = 3; n <= 40; ++n)
        for (const SpectralMode& md : discrete_spectrum(n)) {
            long lam = static_cast<long>(md.lambda_im); // lambda = i lam
            long quarter = (static_cast<long>(n - 2) * (n - 2) - lam * lam);
            CHECK(quarter % 4 == 0);
            CHECK(md.eigenvalue == -quarter / 4);
        }
}

TEST_CASE("eigenfunctions: l = 0 collapse, r = 0, exact rational value") {
    SUBCASE("l = 0 forces phi identical to 1") {
        for (int n : {3, 5, 9}) {
            SpectralMode md = discrete_spectrum(n)[0];
            RadialFn phi = eigenfunction_radial(md, 2);
            CHECK(phi.s == 0);
            REQUIRE(phi.num.size() == 1);
            CHECK(phi.num[0] == 1.0);
            CHECK(eigenfunction(md, 2, 0.73) == 1.0);
        }
    }
    SUBCASE("phi(0) = 1 for every discrete mode") {
        for (int n = 3; n <= 12; ++n)
            for (const SpectralMode& md : discrete_spectrum(n))
                CHECK(eigenfunction(md, 2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("N=6, l=2 at r = 1/2 against the rational oracle") {
        SpectralMode md = discrete_spectrum(6)[2];
        REQUIRE(md.l == 2);
        oracles::Rational exact = oracles::eigenfunction_rational(6, 2, 2, {1, 2});
        CHECK(exact.num == -2);
        CHECK(exact.den == 3);
        CHECK(eigenfunction(md, 2, 0.5) ==
              doctest::Approx(exact.value()).epsilon(1e-14));
    }
    SUBCASE("series terminates: the order-(l+1) coefficient vanishes") {
        // the recurrence factor (b + k) hits zero at k = l
        SpectralMode md = discrete_spectrum(9)[3]; // l = 3
        RadialFn phi = eigenfunction_radial(md, 2);
        CHECK(phi.num.size() == 4u); // exactly l + 1 terms
        oracles::Rational withextra =
            oracles::hyp2f1_terminating(9 - 3, 3, 2, {1, 4});
        // summing further terms changes nothing: k = l term factor is zero
        oracles::Rational term{1};
        for (int k = 0; k <= 3; ++k)
            term = term * oracles::Rational(6 + k) * oracles::Rational(-3 + k) /
                   oracles::Rational(2 + k) / oracles::Rational(k + 1);
        CHECK(term.num == 0);
        CHECK(withextra.den != 0);
    }
}

TEST_CASE("radial laplacian annihilates constants") {
    RadialFn one{{1.0}, 0};
    RadialFn lap = laplacian_radial(one, 7, 2);
    for (double r = 0.0; r < 0.95; r += 0.05) CHECK(lap.eval(r) == 0.0);
}

TEST_CASE("eigenfunction equation on the r-grid") {
    SUBCASE("N=5, l=1 has eigenvalue -2") {
        SpectralMode md = discrete_spectrum(5)[1];
        RadialFn phi = eigenfunction_radial(md, 2);
        for (double r = 0.05; r < 0.92; r += 0.05)
            CHECK(std::abs(laplacian_apply(phi, 5, 2, r) + 2.0 * phi.eval(r)) <
                  1e-10);
    }
    SUBCASE("N=10, l=4 has eigenvalue -16") {
        SpectralMode md = discrete_spectrum(10)[4];
        RadialFn phi = eigenfunction_radial(md, 2);
        for (double r = 0.05; r < 0.92; r += 0.05)
            CHECK(std::abs(laplacian_apply(phi, 10, 2, r) + 16.0 * phi.eval(r)) <
                  1e-9 * std::max(1.0, std::abs(phi.eval(r))));
    }
    SUBCASE("all modes, N <= 12: residual below 1e-8 of the scale") {
        for (int n = 3; n <= 12; ++n)
            for (const SpectralMode& md : discrete_spectrum(n)) {
                RadialFn phi = eigenfunction_radial(md, 2);
                RadialFn lap = laplacian_radial(phi, n, 2);
                double max_phi = 0, worst = 0;
                for (double r = 0.05; r < 0.92; r += 0.05)
                    max_phi = std::max(max_phi, std::abs(phi.eval(r)));
                for (double r = 0.05; r < 0.92; r += 0.05)
                    worst = std::max(worst, std::abs(lap.eval(r) -
                                                     md.eigenvalue * phi.eval(r)));
                CHECK(worst < 1e-8 * std::max(1.0, max_phi));
            }
    }
}

TEST_CASE("radial collapse matches the multivariate operator") {
    RadialFn phi = eigenfunction_radial(discrete_spectrum(5)[1], 2);
    auto h = [&](const DomainPoint& q) { return cplx(phi.eval(q.norm2())); };
    Rng rng(3);
    for (int i = 0; i < 6; ++i) {
        Vec z(2);
        z << cplx(rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45)),
            cplx(rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45));
        DomainPoint p(z);
        cplx fd = laplacian_numeric(h, 5, p);
        CHECK(std::abs(fd - laplacian_apply(phi, 5, 2, p.norm2())) < 1e-8);
    }
}

TEST_CASE("laplacian commutes with the weight-N action") {
    RadialFn phi = eigenfunction_radial(discrete_spectrum(5)[1], 2);
    Rng rng(3);
    std::vector<DomainPoint> samples;
    for (int i = 0; i < 20; ++i) {
        samples.push_back(point2(
            cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)),
            cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))));
    }
    SUBCASE("identity") {
        GroupElement id = validate_group(Mat::Identity(3, 3), Signature{2, 1});
        CHECK(invariance_check(id, phi, 5, samples) < 1e-8);
    }
    SUBCASE("compact rotations act by a constant multiplier on radial f") {
        std::array<double, 8> xi{};
        xi[2] = 0.5;
        xi[7] = 0.4;
        GroupElement k = exp_algebra(su21_basis().combine(xi));
        cplx mult = rep_multiplier(k, 5, samples[0]);
        RadialFn lap = laplacian_radial(phi, 5, 2);
        for (const DomainPoint& z : samples) {
            // direct evaluation: rotation invariance of radial functions
            CHECK(std::abs(rep_multiplier(k, 5, z) - mult) < 1e-12);
            CHECK(std::abs(rep_action(k, 5,
                                      [&](const DomainPoint& q) {
                                          return cplx(phi.eval(q.norm2()));
                                      },
                                      z) -
                           mult * phi.eval(z.norm2())) < 1e-12);
            CHECK(std::abs(rep_action(k, 5,
                                      [&](const DomainPoint& q) {
                                          return cplx(lap.eval(q.norm2()));
                                      },
                                      z) -
                           mult * lap.eval(z.norm2())) < 1e-12);
        }
        CHECK(invariance_check(k, phi, 5, samples) < 1e-8);
    }
    SUBCASE("boost") {
        GroupElement d = boost_delta(0.3, Signature{2, 1});
        CHECK(invariance_check(d, phi, 5, samples) < 1e-8);
    }
}

} // TEST_SUITE
