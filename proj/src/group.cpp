#include "bergman/group.hpp"

#include "bergman/errors.hpp"

#include <cmath>
#include <sstream>

namespace bergman {

namespace {

std::string fmt_residual(const char* what, double value) {
    std::ostringstream os;
    os << what << " residual " << value;
    return os.str();
}

} // namespace

GroupElement GroupElement::inverse() const {
    // g^{-1} = Gamma g^dagger Gamma for Gamma-unitary g
    Mat gm = sig.gamma();
    return {gm * mat.adjoint() * gm, sig};
}

double gamma_unitarity_residual(const Mat& mat, const Signature& sig) {
    Mat gm = sig.gamma();
    return max_abs(Mat(mat.adjoint() * gm * mat - gm));
}

GroupElement validate_group(const Mat& mat, const Signature& sig, double tol) {
    if (mat.rows() != sig.dim() || mat.cols() != sig.dim()) {
        throw NotGammaUnitary("matrix size does not match signature");
    }
    double res = gamma_unitarity_residual(mat, sig);
    if (res > tol) throw NotGammaUnitary(fmt_residual("Gamma-unitarity", res));
    cplx det = mat.determinant();
    if (std::abs(det - 1.0) > tol) {
        std::ostringstream os;
        os << "det = " << det;
        throw DeterminantNotOne(os.str());
    }
    return {mat, sig};
}

AlgebraElement validate_algebra(const Mat& mat, const Signature& sig, double tol) {
    if (mat.rows() != sig.dim() || mat.cols() != sig.dim()) {
        throw NotInAlgebra("matrix size does not match signature");
    }
    Mat gm = sig.gamma();
    double res = max_abs(Mat(mat.adjoint() * gm + gm * mat));
    if (res > tol) throw NotInAlgebra(fmt_residual("X^dagger Gamma + Gamma X", res));
    if (std::abs(mat.trace()) > tol) throw NotInAlgebra("nonzero trace");
    return {mat, sig};
}

GroupElement exp_algebra(const AlgebraElement& x) {
    return {expm(x.mat), x.sig};
}

GroupElement boost_delta(double t, const Signature& sig) {
    Mat d = Mat::Identity(sig.dim(), sig.dim());
    const int m = sig.m;
    d(m - 1, m - 1) = std::cosh(t);
    d(m - 1, m) = std::sinh(t);
    d(m, m - 1) = std::sinh(t);
    d(m, m) = std::cosh(t);
    return {d, sig};
}

double haar_density(double t) {
    return std::sinh(t) * std::sinh(t) * std::sinh(2.0 * t);
}

Mat CartanFactors::reassemble() const {
    return k.mat * boost_delta(t, k.sig).mat * q.mat.adjoint();
}

double CartanFactors::block_diag_residual() const {
    auto off = [](const GroupElement& g) {
        return std::max(max_abs(Mat(g.block_b())), max_abs(Mat(g.block_c())));
    };
    return std::max(off(k), off(q));
}

namespace {

// Deterministic unitary completion: unitary Q with last column v and det 1
// (for m >= 2 the first column absorbs the determinant phase).
Mat complete_unitary(const Vec& v) {
    const Eigen::Index m = v.size();
    if (m == 1) {
        Mat q(1, 1);
        q(0, 0) = v(0);
        return q;
    }
    Vec w = v;
    cplx vm = v(m - 1);
    cplx phase = (std::abs(vm) > 0) ? vm / std::abs(vm) : cplx(1.0);
    w(m - 1) += phase;
    Mat h = Mat::Identity(m, m) - 2.0 * (w * w.adjoint()) / w.squaredNorm();
    Mat q = h;
    q.col(m - 1) *= -phase; // last column becomes v
    cplx det = q.determinant();
    q.col(0) /= det;
    return q;
}

} // namespace

CartanFactors cartan_decompose(const GroupElement& g, double tol) {
    const Signature sig = g.sig;
    if (sig.n != 1) throw ConfigInvalid("cartan_decompose requires n = 1");
    const int m = sig.m;
    const int d = sig.dim();

    Mat c = g.block_c(); // 1 x m
    double snh = c.norm();
    double t = std::asinh(snh);

    Mat qmat = Mat::Identity(d, d);
    if (snh > tol) {
        cplx dval = g.block_d()(0, 0);
        cplx k2 = dval / std::abs(dval);
        Vec vq = c.adjoint() * k2 / snh; // last column of q1
        vq /= vq.norm();
        Mat q1 = complete_unitary(vq);
        cplx q2(1.0, 0.0);
        if (m == 1) {
            // det(q1) q2 = 1 leaves only a sign choice
            q2 = 1.0 / q1(0, 0);
            if (q2.real() < 0 || (q2.real() == 0 && q2.imag() < 0)) {
                q1 = -q1;
                q2 = -q2;
            }
        }
        qmat.topLeftCorner(m, m) = q1;
        qmat(m, m) = q2;
    }

    GroupElement q{qmat, sig};
    Mat kmat = g.mat * qmat * boost_delta(-t, sig).mat;
    GroupElement k{kmat, sig};
    return {k, t, q};
}

double compact_phase(const GroupElement& k) {
    return std::arg(k.mat(k.sig.m, k.sig.m));
}

AlgebraElement Su21Basis::combine(const std::array<double, 8>& xi) const {
    Mat m = Mat::Zero(3, 3);
    for (int a = 0; a < 8; ++a) m += xi[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)].mat;
    return {m, Signature{2, 1}};
}

void structure_constants(const std::array<AlgebraElement, 8>& basis,
                         double f[8][8][8], std::array<double, 8>* gram_out,
                         double tol) {
    std::array<double, 8> gram{};
    for (int a = 0; a < 8; ++a) {
        gram[static_cast<std::size_t>(a)] = -(basis[static_cast<std::size_t>(a)].mat * basis[static_cast<std::size_t>(a)].mat).trace().real();
        // off-diagonal orthogonality
        for (int b = 0; b < a; ++b) {
            cplx inner = -(basis[static_cast<std::size_t>(a)].mat * basis[static_cast<std::size_t>(b)].mat).trace();
            if (std::abs(inner) > tol) throw BasisNotClosed("basis not orthogonal under -tr(XY)");
        }
    }

    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            Mat comm = basis[static_cast<std::size_t>(a)].mat * basis[static_cast<std::size_t>(b)].mat -
                       basis[static_cast<std::size_t>(b)].mat * basis[static_cast<std::size_t>(a)].mat;
            Mat recon = Mat::Zero(3, 3);
            for (int c = 0; c < 8; ++c) {
                cplx proj = -(comm * basis[static_cast<std::size_t>(c)].mat).trace();
                double coeff = proj.real() / gram[static_cast<std::size_t>(c)];
                if (std::abs(proj.imag()) > tol) {
                    throw BasisNotClosed("complex projection coefficient");
                }
                f[c][a][b] = coeff;
                recon += coeff * basis[static_cast<std::size_t>(c)].mat;
            }
            if (max_abs(Mat(comm - recon)) > tol) {
                throw BasisNotClosed("commutator leaves the basis span");
            }
        }
    }
    if (gram_out) *gram_out = gram;
}

double jacobi_residual(const double f[8][8][8]) {
    double worst = 0.0;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c)
                for (int e = 0; e < 8; ++e) {
                    double s = 0.0;
                    for (int d = 0; d < 8; ++d) {
                        s += f[d][a][b] * f[e][d][c];
                        s += f[d][b][c] * f[e][d][a];
                        s += f[d][c][a] * f[e][d][b];
                    }
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

const Su21Basis& su21_basis() {
    static const Su21Basis basis = [] {
        Su21Basis b;
        const Signature sig{2, 1};
        const cplx i = I_UNIT;
        auto set = [&](int idx, std::initializer_list<cplx> vals) {
            Mat m(3, 3);
            int k = 0;
            for (cplx v : vals) {
                m(k / 3, k % 3) = v;
                ++k;
            }
            b.x[static_cast<std::size_t>(idx)] = validate_algebra(m, sig);
        };
        set(0, {0, i, 0, i, 0, 0, 0, 0, 0});
        set(1, {0, 1, 0, -1, 0, 0, 0, 0, 0});
        set(2, {i, 0, 0, 0, -i, 0, 0, 0, 0});
        set(3, {0, 0, i, 0, 0, 0, -i, 0, 0});
        set(4, {0, 0, 1, 0, 0, 0, 1, 0, 0});
        set(5, {0, 0, 0, 0, 0, i, 0, -i, 0});
        set(6, {0, 0, 0, 0, 0, 1, 0, 1, 0});
        const double s3 = 1.0 / std::sqrt(3.0);
        set(7, {i * s3, 0, 0, 0, i * s3, 0, 0, 0, -2.0 * i * s3});
        structure_constants(b.x, b.f, &b.gram);
        return b;
    }();
    return basis;
}

namespace {

KillingVector killing_common_rotations(int a, cplx z1, cplx z2) {
    const cplx i = I_UNIT;
    switch (a) {
        case 1: return {i * z2, i * z1, 0.0};
        case 2: return {z2, -z1, 0.0};
        case 3: return {i * z1, -i * z2, 0.0};
        default: return {0.0, 0.0, 0.0};
    }
}

} // namespace

KillingVector killing_vector(int a, cplx z1, cplx z2, cplx rep_n) {
    const cplx i = I_UNIT;
    const double s3 = std::sqrt(3.0);
    switch (a) {
        case 1:
        case 2:
        case 3: return killing_common_rotations(a, z1, z2);
        // Boosts: vector part AZ + B - Z(CZ + D), multiplier -n (CZ + D).
        case 4: return {i * (1.0 + z1 * z1), i * z1 * z2, i * rep_n * z1};
        case 5: return {1.0 - z1 * z1, -z1 * z2, -rep_n * z1};
        case 6: return {i * z1 * z2, i * (1.0 + z2 * z2), i * rep_n * z2};
        case 7: return {-z1 * z2, 1.0 - z2 * z2, -rep_n * z2};
        case 8: return {i * s3 * z1, i * s3 * z2, 2.0 * i * rep_n / s3};
        default: throw ConfigInvalid("killing_vector index out of range");
    }
}

KillingVector killing_vector_literal(int a, cplx z1, cplx z2, cplx rep_n) {
    const cplx i = I_UNIT;
    const double s3 = std::sqrt(3.0);
    switch (a) {
        case 1:
        case 2:
        case 3: return killing_common_rotations(a, z1, z2);
        case 4: return {i * (1.0 + z1 * z1), i * z1 * z2, 0.0};
        case 5: return {1.0 - z1 * z1, -z1 * z2, 0.0};
        case 6: return {i * z1 * z2, i * (1.0 + z2 * z2), 0.0};
        case 7: return {-z1 * z2, 1.0 - z2 * z2, 0.0};
        case 8: return {-i / s3 * z1, -i / s3 * z2, 2.0 * i * rep_n / s3};
        default: throw ConfigInvalid("killing_vector index out of range");
    }
}

namespace {

// Minimal bivariate polynomial arithmetic for composing first-order
// operators symbolically.
constexpr int kMaxDeg = 10;

struct Poly2 {
    std::array<cplx, kMaxDeg * kMaxDeg> c{};

    static Poly2 constant(cplx v) {
        Poly2 p;
        p.c[0] = v;
        return p;
    }
    static Poly2 monomial(int i, int j, cplx v = 1.0) {
        Poly2 p;
        p.c[static_cast<std::size_t>(i * kMaxDeg + j)] = v;
        return p;
    }
    cplx& at(int i, int j) { return c[static_cast<std::size_t>(i * kMaxDeg + j)]; }
    cplx at(int i, int j) const { return c[static_cast<std::size_t>(i * kMaxDeg + j)]; }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r;
        for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    Poly2 operator-(const Poly2& o) const {
        Poly2 r;
        for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (int i = 0; i < kMaxDeg; ++i)
            for (int j = 0; j < kMaxDeg; ++j) {
                if (at(i, j) == cplx(0.0)) continue;
                for (int p = 0; p + i < kMaxDeg; ++p)
                    for (int q = 0; q + j < kMaxDeg; ++q)
                        r.at(i + p, j + q) += at(i, j) * o.at(p, q);
            }
        return r;
    }
    Poly2 operator*(cplx v) const {
        Poly2 r;
        for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = c[k] * v;
        return r;
    }
    Poly2 d1() const {
        Poly2 r;
        for (int i = 1; i < kMaxDeg; ++i)
            for (int j = 0; j < kMaxDeg; ++j)
                r.at(i - 1, j) = at(i, j) * static_cast<double>(i);
        return r;
    }
    Poly2 d2() const {
        Poly2 r;
        for (int i = 0; i < kMaxDeg; ++i)
            for (int j = 1; j < kMaxDeg; ++j)
                r.at(i, j - 1) = at(i, j) * static_cast<double>(j);
        return r;
    }
    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

struct DiffOp {
    Poly2 c1, c2, s;

    Poly2 apply(const Poly2& f) const {
        return c1 * f.d1() + c2 * f.d2() + s * f;
    }
};

DiffOp op_from_kv(int a, cplx rep_n, bool literal) {
    // Coefficient polynomials reconstructed from evaluations: all entries are
    // polynomials of total degree <= 2, so sample-free direct assembly via
    // the closed forms keeps this exact.
    auto kv = [&](cplx z1, cplx z2) {
        return literal ? killing_vector_literal(a, z1, z2, rep_n)
                       : killing_vector(a, z1, z2, rep_n);
    };
    // Interpolate degree-2 bivariate polynomials from 6 evaluations.
    auto interp = [&](auto pick) {
        // basis 1, z1, z2, z1^2, z1 z2, z2^2 at chosen nodes
        const std::array<std::pair<cplx, cplx>, 6> nodes = {{
            {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {2.0, 0.0}, {1.0, 1.0}, {0.0, 2.0}}};
        Eigen::MatrixXcd vand(6, 6);
        Eigen::VectorXcd rhs(6);
        for (int r = 0; r < 6; ++r) {
            cplx z1 = nodes[static_cast<std::size_t>(r)].first, z2 = nodes[static_cast<std::size_t>(r)].second;
            vand(r, 0) = 1.0;
            vand(r, 1) = z1;
            vand(r, 2) = z2;
            vand(r, 3) = z1 * z1;
            vand(r, 4) = z1 * z2;
            vand(r, 5) = z2 * z2;
            rhs(r) = pick(kv(z1, z2));
        }
        Eigen::VectorXcd coef = vand.fullPivLu().solve(rhs);
        Poly2 p;
        p.at(0, 0) = coef(0);
        p.at(1, 0) = coef(1);
        p.at(0, 1) = coef(2);
        p.at(2, 0) = coef(3);
        p.at(1, 1) = coef(4);
        p.at(0, 2) = coef(5);
        return p;
    };
    DiffOp op;
    op.c1 = interp([](const KillingVector& k) { return k.c1; });
    op.c2 = interp([](const KillingVector& k) { return k.c2; });
    op.s = interp([](const KillingVector& k) { return k.scalar; });
    return op;
}

double closure_residual(const std::array<DiffOp, 8>& ops, const double f[8][8][8],
                        double sign) {
    // Test polynomials: all monomials z1^i z2^j with i + j <= 3.
    std::vector<Poly2> tests;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) tests.push_back(Poly2::monomial(i, j));

    double worst = 0.0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
            for (const Poly2& p : tests) {
                Poly2 lhs = ops[static_cast<std::size_t>(a)].apply(ops[static_cast<std::size_t>(b)].apply(p)) -
                            ops[static_cast<std::size_t>(b)].apply(ops[static_cast<std::size_t>(a)].apply(p));
                Poly2 rhs;
                for (int c = 0; c < 8; ++c) {
                    if (f[c][a][b] == 0.0) continue;
                    rhs = rhs + ops[static_cast<std::size_t>(c)].apply(p) * (sign * f[c][a][b]);
                }
                worst = std::max(worst, (lhs - rhs).max_abs());
            }
        }
    return worst;
}

} // namespace

KillingClosureReport measure_killing_closure(cplx rep_n) {
    const Su21Basis& basis = su21_basis();
    std::array<DiffOp, 8> ops, lit;
    for (int a = 1; a <= 8; ++a) {
        ops[static_cast<std::size_t>(a - 1)] = op_from_kv(a, rep_n, false);
        lit[static_cast<std::size_t>(a - 1)] = op_from_kv(a, rep_n, true);
    }
    double plus = closure_residual(ops, basis.f, +1.0);
    double minus = closure_residual(ops, basis.f, -1.0);
    KillingClosureReport rep;
    rep.bracket_sign = (minus <= plus) ? -1 : +1;
    rep.residual = std::min(plus, minus);
    rep.literal_residual =
        std::min(closure_residual(lit, basis.f, +1.0), closure_residual(lit, basis.f, -1.0));
    return rep;
}

AlgebraElement random_su21(Rng& rng, double scale) {
    std::array<double, 8> xi{};
    for (double& v : xi) v = rng.uniform(-scale, scale);
    return su21_basis().combine(xi);
}

} // namespace bergman
