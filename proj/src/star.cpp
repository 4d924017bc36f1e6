#include "bergman/star.hpp"

#include "bergman/errors.hpp"

#include <cmath>

namespace bergman {

CoherentParam CoherentParam::from_kprime(const Mat& kp, double t) {
    if (kp.rows() != 2 || kp.cols() != 2) throw ConfigInvalid("k' must be 2x2");
    if (max_abs(Mat(kp.adjoint() * kp - Mat::Identity(2, 2))) > 1e-12) {
        throw ConfigInvalid("k' must be unitary");
    }
    CoherentParam p;
    p.kprime = kp;
    p.kdprime = 1.0 / kp.determinant();
    p.t = t;
    return p;
}

CoherentParam CoherentParam::identity(double t) {
    return from_kprime(Mat::Identity(2, 2), t);
}

CoherentParam CoherentParam::random(Rng& rng, double t_max) {
    Mat g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = rng.cgaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) {
        cplx d = r(i, i);
        q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : cplx(1.0);
    }
    return from_kprime(q, rng.uniform(0.0, t_max));
}

GroupElement CoherentParam::k_group() const {
    Mat k = Mat::Zero(3, 3);
    k.topLeftCorner(2, 2) = kprime;
    k(2, 2) = kdprime;
    return validate_group(k, Signature{2, 1});
}

GroupElement CoherentParam::g_x() const {
    Mat k = k_group().mat;
    return validate_group(k * boost_delta(t, Signature{2, 1}).mat * k.adjoint(),
                          Signature{2, 1});
}

AlgebraElement CoherentParam::boost_generator() const {
    Mat k = k_group().mat;
    Mat x = t * k * su21_basis().mat(7) * k.adjoint();
    return validate_algebra(x, Signature{2, 1});
}

CoherentState coherent_state(const CoherentParam& param, int n_rep,
                             int pair_cutoff, double leakage_bound) {
    // The state is evolved on a padded sector; the truncation leakage is the
    // norm deficit of its restriction to the requested cutoff. (On the
    // requested sector alone the evolution would be exactly unitary and the
    // leakage invisible.)
    const int pad = 12;
    FockSector ext = build_sector(n_rep, pair_cutoff + pad, 1000000);
    SpMat m = hat_operator(param.boost_generator().mat, ext);
    Vec v_ext = expmv(m, lowest_weight(ext));

    FockSector sector = build_sector(n_rep, pair_cutoff, 1000000);
    Vec v = v_ext.head(sector.dim());
    double nrm = v.norm();
    double leak = std::abs(1.0 - nrm);
    if (leak > leakage_bound) {
        throw LeakageExceeded("coherent state leakage above bound");
    }
    return {std::move(sector), v / nrm, param, leak};
}

SymbolEngine::SymbolEngine(int n_rep, const CoherentParam& param, double conv_tol,
                           int p_cap)
    : n_rep_(n_rep) {
    std::array<double, 8> prev{};
    bool have_prev = false;
    for (int p = 8; p <= p_cap; p += 2) {
        CoherentState st = coherent_state(param, n_rep, p, 1.0);
        GeneratorMatrices gm = generator_matrices(st.sector);
        std::array<double, 8> cur{};
        for (int a = 0; a < 8; ++a) {
            cplx e = st.vec.dot(gm.xhat[static_cast<std::size_t>(a)] * st.vec);
            cur[static_cast<std::size_t>(a)] = (I_UNIT * e).real() / n_rep;
        }
        double delta = st.leakage;
        if (have_prev) {
            for (int a = 0; a < 8; ++a)
                delta = std::max(delta,
                                 std::abs(cur[static_cast<std::size_t>(a)] - prev[static_cast<std::size_t>(a)]));
            if (delta < conv_tol) {
                state_ = std::move(st);
                gen_ = std::move(gm.xhat);
                return;
            }
        }
        prev = cur;
        have_prev = true;
        if (p == p_cap || p + 2 > p_cap) break;
    }
    throw TruncationNotConverged("coherent-state expectations did not settle by the pair cap");
}

cplx SymbolEngine::symbol(const SpMat& op) const {
    return state_.vec.dot(op * state_.vec);
}

cplx SymbolEngine::raw_xi(int a) const {
    return symbol(xhat(a)) / static_cast<double>(n_rep_);
}

double SymbolEngine::xi(int a) const { return (I_UNIT * raw_xi(a)).real(); }

NCCoordinates SymbolEngine::xi_coords() const {
    NCCoordinates c{};
    for (int a = 1; a <= 8; ++a) c.xi[static_cast<std::size_t>(a - 1)] = xi(a);
    return c;
}

StarValue SymbolEngine::star(int a, int b) const {
    const double n2 = static_cast<double>(n_rep_) * n_rep_;
    Vec right = xhat(b) * state_.vec;
    Vec left = xhat(a).adjoint() * state_.vec;
    cplx ab = left.dot(right) / n2;
    Vec right2 = xhat(a) * state_.vec;
    Vec left2 = xhat(b).adjoint() * state_.vec;
    cplx ba = left2.dot(right2) / n2;
    return {ab, 0.5 * (ab + ba), 0.5 * (ab - ba)};
}

SymmetrizedSymbol SymbolEngine::symmetrized_symbol(const std::vector<int>& indices) const {
    if (indices.size() > 4) throw ConfigInvalid("symmetrized symbol limited to 4 indices");
    std::vector<int> idx = indices;
    std::sort(idx.begin(), idx.end());
    cplx acc = 0.0;
    std::size_t count = 0;
    do {
        Vec v = state_.vec;
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) v = xhat(*it) * v;
        acc += state_.vec.dot(v);
        ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    cplx raw = (count == 0) ? cplx(1.0) : acc / static_cast<double>(count);
    double sgn = (indices.size() % 2 == 0) ? 1.0 : -1.0;
    return {raw, sgn * raw};
}

double SymbolEngine::associativity_residual(int a, int b, int c) const {
    const Vec& x = state_.vec;
    // ((xi_a * xi_b) * xi_c): pair the product Xhat_a Xhat_b on the left
    Vec left_ab = xhat(b).adjoint() * Vec(xhat(a).adjoint() * x);
    cplx r1 = left_ab.dot(xhat(c) * x);
    // (xi_a * (xi_b * xi_c)): pair Xhat_b Xhat_c on the right
    Vec right_bc = xhat(b) * Vec(xhat(c) * x);
    cplx r2 = (Vec(xhat(a).adjoint() * x)).dot(right_bc);
    double n3 = std::pow(static_cast<double>(n_rep_), 3);
    return std::abs(r1 - r2) / n3;
}

OmegaRoutes omega_routes(const AlgebraElement& xg, const CoherentParam& x,
                         int n_rep, int pair_cutoff) {
    OmegaRoutes out;
    FockSector sector = build_sector(n_rep, pair_cutoff, 1000000);
    SpMat mg = hat_operator(xg.mat, sector);
    SpMat mx = hat_operator(x.boost_generator().mat, sector);
    Vec cs = expmv(mx, lowest_weight(sector));
    cs /= cs.norm();
    out.fock = cs.dot(expmv(mg, cs));

    GroupElement g = exp_algebra(xg);
    GroupElement gx = x.g_x();
    GroupElement conj1{gx.mat * g.mat * gx.inverse().mat, gx.sig};
    GroupElement conj2{gx.inverse().mat * g.mat * gx.mat, gx.sig};
    out.reduction = omega0(conj1, n_rep);
    out.reduction_reversed = omega0(conj2, n_rep);

    // determinant-formula diagnostic
    {
        const Mat kp = x.kprime;
        const cplx kd = x.kdprime;
        const double th = std::tanh(x.t);
        Eigen::Vector2cd v = kp.col(1);
        Mat a = g.block_a(), b = g.block_b(), c = g.block_c(), d = g.block_d();
        Mat m = a + kd * th * (b * v.adjoint()) - th * std::conj(kd) * (v * c) -
                d(0, 0) * th * th * (v * v.adjoint());
        cplx det = m.determinant();
        cplx inv = 1.0 / det;
        cplx powed = 1.0;
        for (int k = 0; k < n_rep; ++k) powed *= inv;
        out.matrix_formula = std::pow(std::cosh(x.t), -2.0 * n_rep) * powed;
    }
    return out;
}

DeformationFit fit_deformation_coeffs(int n_rep,
                                      const std::vector<CoherentParam>& xs) {
    std::vector<double> ys;
    std::vector<std::array<double, 2>> rows;
    for (const CoherentParam& p : xs) {
        SymbolEngine eng(n_rep, p);
        NCCoordinates c = eng.xi_coords();
        for (int a = 1; a <= 8; ++a)
            for (int b = a; b <= 8; ++b) {
                StarValue sv = eng.star(a, b);
                // Hermitian convention: star_H = -(raw); its symmetric part is
                // real and carries the (1 + A_N) xi xi + B_N delta structure.
                double sym = (-sv.anticommutator_half).real();
                double xx = c.xi[static_cast<std::size_t>(a - 1)] * c.xi[static_cast<std::size_t>(b - 1)];
                rows.push_back({xx, (a == b) ? 1.0 : 0.0});
                ys.push_back(sym - xx);
            }
    }
    Eigen::MatrixXd design(static_cast<Eigen::Index>(rows.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        design(static_cast<Eigen::Index>(r), 0) = rows[r][0];
        design(static_cast<Eigen::Index>(r), 1) = rows[r][1];
        rhs(static_cast<Eigen::Index>(r)) = ys[r];
    }
    Eigen::VectorXd beta = lsq_fit(design, rhs);
    double resid = (design * beta - rhs).cwiseAbs().maxCoeff();
    return {beta(0), beta(1), resid};
}

DeformationScan deformation_scan(const std::vector<int>& n_values,
                                 const std::vector<CoherentParam>& xs) {
    DeformationScan scan;
    scan.n_values = n_values;
    std::vector<double> ln, la, lb;
    for (int n : n_values) {
        DeformationFit fit = fit_deformation_coeffs(n, xs);
        scan.fits.push_back(fit);
        ln.push_back(std::log(static_cast<double>(n)));
        la.push_back(std::log(std::abs(fit.a_n)));
        lb.push_back(std::log(std::abs(fit.b_n)));
    }
    scan.slope_a = fit_slope(ln, la);
    scan.slope_b = fit_slope(ln, lb);
    return scan;
}

CommutativityScan commutativity_scan(const std::vector<int>& n_values,
                                     const CoherentParam& x) {
    CommutativityScan scan;
    scan.n_values = n_values;
    std::vector<double> ln, ld;
    for (int n : n_values) {
        SymbolEngine eng(n, x);
        NCCoordinates c = eng.xi_coords();
        double dev = 0.0;
        for (int a = 1; a <= 8; ++a)
            for (int b = 1; b <= 8; ++b) {
                cplx star_h = -eng.star(a, b).value;
                double xx = c.xi[static_cast<std::size_t>(a - 1)] * c.xi[static_cast<std::size_t>(b - 1)];
                dev = std::max(dev, std::abs(star_h - xx));
            }
        scan.max_deviation.push_back(dev);
        ln.push_back(std::log(static_cast<double>(n)));
        ld.push_back(std::log(dev));
    }
    scan.slope = fit_slope(ln, ld);
    return scan;
}

Eigen::MatrixXd adjoint_matrix(const GroupElement& k) {
    const Su21Basis& basis = su21_basis();
    Eigen::MatrixXd d(8, 8);
    Mat kinv = k.inverse().mat;
    for (int a = 0; a < 8; ++a) {
        Mat conj = k.mat * basis.mat(a + 1) * kinv;
        for (int b = 0; b < 8; ++b) {
            cplx proj = -(conj * basis.mat(b + 1)).trace();
            d(b, a) = proj.real() / basis.gram[static_cast<std::size_t>(b)];
        }
    }
    return d;
}

EquivarianceReport xi_equivariance(const CoherentParam& x, const GroupElement& k,
                                   int n_rep) {
    // k . x : g_{x'} = k g_x k^dagger, i.e. k' -> k'_k k'_x etc.
    Mat kp = k.mat.topLeftCorner(2, 2) * x.kprime;
    CoherentParam xp = CoherentParam::from_kprime(kp, x.t);

    SymbolEngine ex(n_rep, x), exp_(n_rep, xp);
    Eigen::VectorXd xi0(8), xi1(8);
    for (int a = 1; a <= 8; ++a) {
        xi0(a - 1) = ex.xi(a);
        xi1(a - 1) = exp_.xi(a);
    }
    Eigen::MatrixXd d = adjoint_matrix(k);
    Eigen::MatrixXd dinv = adjoint_matrix(k.inverse());
    EquivarianceReport rep;
    rep.residual_adj = (xi1 - d * xi0).cwiseAbs().maxCoeff();
    rep.residual_adj_inv = (xi1 - dinv * xi0).cwiseAbs().maxCoeff();
    rep.direction = (rep.residual_adj <= rep.residual_adj_inv) ? +1 : -1;
    return rep;
}

} // namespace bergman
