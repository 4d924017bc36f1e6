#include "bergman/geometry.hpp"

#include "bergman/errors.hpp"

#include <cmath>
#include <numbers>

namespace bergman {

DomainPoint::DomainPoint(Vec zz, double boundary_guard) : z(std::move(zz)) {
    if (one_minus() < boundary_guard) {
        throw ConfigInvalid("point too close to the boundary of D");
    }
}

cplx bergman_kernel(const DomainPoint& w, const DomainPoint& z, int n_rep) {
    cplx s = 1.0 - w.z.dot(z.z); // dot conjugates the first argument
    cplx inv = 1.0 / s;
    cplx out = 1.0;
    for (int k = 0; k < n_rep; ++k) out *= inv;
    return out;
}

MetricData metric(const DomainPoint& z) {
    const int m = z.m();
    const double om = z.one_minus();
    Mat g(m, m), ginv(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            cplx zi_bar_zj = std::conj(z.z(i)) * z.z(j);
            g(i, j) = (i == j ? 1.0 / om : 0.0) + zi_bar_zj / (om * om);
            ginv(i, j) = om * ((i == j ? 1.0 : 0.0) - zi_bar_zj);
        }
    return {g, ginv, z};
}

std::vector<Mat> christoffel(const DomainPoint& z) {
    const int m = z.m();
    const double om = z.one_minus();
    std::vector<Mat> gam(static_cast<std::size_t>(m), Mat::Zero(m, m));
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                cplx v = 0.0;
                if (k == l) v += z.z(j);
                if (j == l) v += z.z(k);
                gam[static_cast<std::size_t>(l)](j, k) = v / om;
            }
    return gam;
}

CurvatureReport ricci_and_scalar(const DomainPoint& z) {
    const int m = z.m();
    MetricData md = metric(z);
    CurvatureReport rep;
    rep.christoffel = christoffel(z);

    // R_{i jbar} = -d_{z_i} Gamma^kbar_{jbar kbar}, with
    // Gamma^kbar_{jbar kbar} = (m+1) z_j/(1-|Z|^2). Assembled in the same
    // index convention as MetricData: row = holomorphic slot.
    const double om = z.one_minus();
    Mat ricci(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            cplx v = (i == j ? 1.0 / om : 0.0) +
                     std::conj(z.z(i)) * z.z(j) / (om * om);
            ricci(i, j) = -static_cast<double>(m + 1) * v;
        }
    rep.ricci = ricci;
    rep.scalar = -(m + 1.0);
    rep.scalar_contraction = (md.g_inv * ricci).trace().real();
    rep.lambda = (m + 1.0) / 2.0;
    rep.proportionality_residual = max_abs(Mat(ricci + (m + 1.0) * md.g));
    rep.einstein_residual =
        max_abs(Mat(ricci - 0.5 * rep.scalar * md.g + rep.lambda * md.g));
    return rep;
}

DomainPoint mobius_action(const GroupElement& g, const DomainPoint& z) {
    Mat a = g.block_a(), b = g.block_b(), c = g.block_c(), d = g.block_d();
    cplx denom = (c * z.z)(0) + d(0, 0);
    Vec zp = (a * z.z + b.col(0)) / denom;
    return DomainPoint(zp);
}

double measure_norm_constant(int n_rep) {
    const double pi = std::numbers::pi;
    return (n_rep - 2.0) * (n_rep - 1.0) / (pi * pi);
}

double measure_density(const DomainPoint& z, int n_rep, bool normalized) {
    const int m = z.m();
    if (n_rep < m + 1) throw ConfigInvalid("measure requires N >= m+1");
    double w = std::pow(z.one_minus(), n_rep - (m + 1));
    if (!normalized) return w;
    if (m != 2) {
        throw NormalizationUnknown("c_N is only specified for m = 2");
    }
    return measure_norm_constant(n_rep) * w;
}

cplx rep_multiplier(const GroupElement& g, int n_rep, const DomainPoint& z) {
    Mat c = g.block_c(), d = g.block_d();
    cplx denom = (c * z.z)(0) + d(0, 0);
    cplx inv = 1.0 / denom;
    cplx out = 1.0;
    for (int k = 0; k < n_rep; ++k) out *= inv;
    return out;
}

cplx rep_action(const GroupElement& g, int n_rep,
                const std::function<cplx(const DomainPoint&)>& f,
                const DomainPoint& z) {
    return rep_multiplier(g, n_rep, z) * f(mobius_action(g, z));
}

CompositionReport measure_rep_action_composition(int n_rep, Rng& rng, int samples) {
    auto f = [](const DomainPoint& z) {
        return std::exp(z.z.sum()) + 0.5 * z.z(0) * z.z(0);
    };
    CompositionReport rep;
    double res_12 = 0.0, res_21 = 0.0;
    for (int s = 0; s < samples; ++s) {
        GroupElement g1 = exp_algebra(random_su21(rng, 0.4));
        GroupElement g2 = exp_algebra(random_su21(rng, 0.4));
        Vec zv(2);
        zv << cplx(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)),
            cplx(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
        DomainPoint z(zv);
        auto t2f = [&](const DomainPoint& w) { return rep_action(g2, n_rep, f, w); };
        cplx lhs = rep_action(g1, n_rep, t2f, z);
        cplx r12 = rep_action(g1 * g2, n_rep, f, z);
        cplx r21 = rep_action(g2 * g1, n_rep, f, z);
        res_12 = std::max(res_12, std::abs(lhs - r12));
        res_21 = std::max(res_21, std::abs(lhs - r21));
    }
    rep.direction = (res_12 <= res_21) ? +1 : -1;
    rep.residual = std::min(res_12, res_21);
    rep.other_direction_residual = std::max(res_12, res_21);
    return rep;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

double measure_normalization_radial(int n_rep, double tol) {
    const double pi = std::numbers::pi;
    const double c = measure_norm_constant(n_rep);
    auto integrand = [&](double r) {
        return pi * pi * c * r * std::pow(1.0 - r, n_rep - 3);
    };
    return integrate(integrand, 0.0, 1.0, tol);
}

double measure_normalization_mc(int n_rep, std::size_t samples, Rng& rng) {
    const double pi = std::numbers::pi;
    const double c = measure_norm_constant(n_rep);
    const double ball_volume = pi * pi / 2.0; // unit 4-ball
    KahanSum acc;
    std::size_t kept = 0;
    while (kept < samples) {
        double x1 = rng.uniform(-1.0, 1.0), y1 = rng.uniform(-1.0, 1.0);
        double x2 = rng.uniform(-1.0, 1.0), y2 = rng.uniform(-1.0, 1.0);
        double r = x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2;
        if (r >= 1.0) continue;
        ++kept;
        acc.add(c * std::pow(1.0 - r, n_rep - 3));
    }
    return ball_volume * acc.value() / static_cast<double>(samples);
}

} // namespace bergman
