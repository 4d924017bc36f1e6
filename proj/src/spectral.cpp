#include "bergman/spectral.hpp"

#include "bergman/errors.hpp"

#include <cmath>

namespace bergman {

std::vector<SpectralMode> discrete_spectrum(int n_rep, int /*m*/) {
    if (n_rep < 3) throw ConfigInvalid("discrete spectrum requires N >= 3");
    std::vector<SpectralMode> modes;
    for (int l = 0; l <= (n_rep - 2) / 2; ++l) {
        modes.push_back({n_rep, l, static_cast<double>(n_rep - 2 - 2 * l),
                         static_cast<long>(l) * (l + 2 - n_rep)});
    }
    return modes;
}

double RadialFn::eval(double r) const {
    double p = 0.0;
    for (std::size_t k = num.size(); k-- > 0;) p = p * r + num[k];
    return p * std::pow(1.0 - r, -s);
}

RadialFn RadialFn::deriv() const {
    // [P' (1-r) + s P] (1-r)^{-s-1}
    std::vector<double> dp(num.size() > 1 ? num.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < num.size(); ++k) dp[k - 1] = num[k] * static_cast<double>(k);
    RadialFn d{dp, 0};
    RadialFn out = d.mul_poly({1.0, -1.0});
    RadialFn sp{num, 0};
    out = out + sp * static_cast<double>(s);
    out.s = s + 1;
    return out;
}

RadialFn RadialFn::mul_poly(const std::vector<double>& poly) const {
    std::vector<double> prod(num.size() + poly.size() - 1, 0.0);
    for (std::size_t i = 0; i < num.size(); ++i)
        for (std::size_t j = 0; j < poly.size(); ++j) prod[i + j] += num[i] * poly[j];
    return {prod, s};
}

RadialFn RadialFn::operator+(const RadialFn& o) const {
    // raise both to the larger s by multiplying numerators with (1-r)
    RadialFn a = *this, b = o;
    while (a.s < b.s) {
        a = a.mul_poly({1.0, -1.0});
        a.s++;
    }
    while (b.s < a.s) {
        b = b.mul_poly({1.0, -1.0});
        b.s++;
    }
    std::vector<double> sum(std::max(a.num.size(), b.num.size()), 0.0);
    for (std::size_t k = 0; k < a.num.size(); ++k) sum[k] += a.num[k];
    for (std::size_t k = 0; k < b.num.size(); ++k) sum[k] += b.num[k];
    return {sum, a.s};
}

RadialFn RadialFn::operator*(double c) const {
    RadialFn out = *this;
    for (double& v : out.num) v *= c;
    return out;
}

RadialFn eigenfunction_radial(const SpectralMode& mode, int m) {
    // exponent (-N + 2 + lambda_im)/2 = -l; a = N - l, b = -l
    const int n = mode.n_rep, l = mode.l;
    const double a = 0.5 * (n + 2 + mode.lambda_im);
    const double b = 0.5 * (-n + 2 + mode.lambda_im);
    std::vector<double> coef(static_cast<std::size_t>(l) + 1, 0.0);
    double term = 1.0;
    coef[0] = 1.0;
    for (int k = 0; k < l; ++k) {
        term *= (a + k) * (b + k) / ((m + k) * (k + 1.0));
        coef[static_cast<std::size_t>(k) + 1] = term;
    }
    return {coef, l};
}

double eigenfunction(const SpectralMode& mode, int m, double r) {
    return eigenfunction_radial(mode, m).eval(r);
}

RadialFn laplacian_radial(const RadialFn& f, int n_rep, int m) {
    RadialFn f1 = f.deriv();
    RadialFn f2 = f1.deriv();
    RadialFn out = f2.mul_poly({0.0, 1.0, -1.0}) + // r (1-r) f''
                   f1.mul_poly({static_cast<double>(m), -(n_rep + 1.0)});
    // overall (1-r) factor
    if (out.s > 0) {
        out.s -= 1;
    } else {
        out = out.mul_poly({1.0, -1.0});
    }
    return out;
}

double laplacian_apply(const RadialFn& f, int n_rep, int m, double r) {
    return laplacian_radial(f, n_rep, m).eval(r);
}

namespace {

// Richardson-extrapolated central differences on a function of 2m real
// coordinates.
class FdEngine {
public:
    FdEngine(std::function<cplx(const DomainPoint&)> h, Vec z0, double step)
        : h_(std::move(h)), z0_(std::move(z0)), step_(step) {}

    // real-coordinate index: 2*i for Re z_i, 2*i+1 for Im z_i
    cplx eval(const std::vector<std::pair<int, double>>& shifts) const {
        Vec z = z0_;
        for (auto [idx, dm] : shifts) {
            cplx delta = (idx % 2 == 0) ? cplx(dm, 0.0) : cplx(0.0, dm);
            z(idx / 2) += delta;
        }
        return h_(DomainPoint(z));
    }

    cplx d1(int a, double h) const {
        return (eval({{a, h}}) - eval({{a, -h}})) / (2.0 * h);
    }
    cplx d2_same(int a, double h) const {
        return (eval({{a, h}}) - 2.0 * eval({}) + eval({{a, -h}})) / (h * h);
    }
    cplx d2_mixed(int a, int b, double h) const {
        return (eval({{a, h}, {b, h}}) - eval({{a, h}, {b, -h}}) -
                eval({{a, -h}, {b, h}}) + eval({{a, -h}, {b, -h}})) /
               (4.0 * h * h);
    }

    cplx rich(const std::function<cplx(double)>& stencil) const {
        cplx coarse = stencil(step_);
        cplx fine = stencil(step_ / 2.0);
        return (4.0 * fine - coarse) / 3.0;
    }

    cplx dx(int a) const { return rich([&](double h) { return d1(a, h); }); }
    cplx dxdy(int a, int b) const {
        if (a == b) return rich([&](double h) { return d2_same(a, h); });
        return rich([&](double h) { return d2_mixed(a, b, h); });
    }

private:
    std::function<cplx(const DomainPoint&)> h_;
    Vec z0_;
    double step_;
};

} // namespace

cplx laplacian_numeric(const std::function<cplx(const DomainPoint&)>& h, int n_rep,
                       const DomainPoint& z, double step) {
    const int m = z.m();
    FdEngine fd(h, z.z, step);

    // dbar_i h = (d/dx_i + i d/dy_i)/2 h
    std::vector<cplx> gradbar(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        gradbar[static_cast<std::size_t>(i)] = 0.5 * (fd.dx(2 * i) + I_UNIT * fd.dx(2 * i + 1));
    }
    // dbar_i d_j h = (dxi dxj + dyi dyj + i(dyi dxj) - i(dxi dyj))/4
    Mat hess(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            cplx xx = fd.dxdy(2 * i, 2 * j);
            cplx yy = fd.dxdy(2 * i + 1, 2 * j + 1);
            cplx yx = fd.dxdy(2 * i + 1, 2 * j);
            cplx xy = fd.dxdy(2 * i, 2 * j + 1);
            hess(i, j) = 0.25 * (xx + yy + I_UNIT * yx - I_UNIT * xy);
        }

    cplx lap = 0.0;
    for (int i = 0; i < m; ++i) lap += hess(i, i);
    cplx rbar_r = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rbar_r += std::conj(z.z(i)) * z.z(j) * hess(i, j);
    cplx rbar = 0.0;
    for (int i = 0; i < m; ++i) rbar += std::conj(z.z(i)) * gradbar[static_cast<std::size_t>(i)];

    return z.one_minus() * (lap - rbar_r - static_cast<double>(n_rep) * rbar);
}

double invariance_check(const GroupElement& g, const RadialFn& f, int n_rep,
                        const std::vector<DomainPoint>& samples) {
    RadialFn lap_f = laplacian_radial(f, n_rep, g.sig.m);
    auto transported = [&](const DomainPoint& z) {
        return rep_multiplier(g, n_rep, z) * f.eval(mobius_action(g, z).norm2());
    };
    double worst = 0.0;
    for (const DomainPoint& z : samples) {
        cplx lhs = rep_multiplier(g, n_rep, z) * lap_f.eval(mobius_action(g, z).norm2());
        cplx rhs = laplacian_numeric(transported, n_rep, z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

} // namespace bergman
