#pragma once

#include "bergman/linalg.hpp"

#include <array>
#include <optional>

namespace bergman {

/// Indefinite-signature metadata for SU(m,n): Gamma = diag(+1 x m, -1 x n).
struct Signature {
    int m = 2;
    int n = 1;

    int dim() const { return m + n; }
    Mat gamma() const {
        Mat g = Mat::Identity(dim(), dim());
        for (int i = m; i < dim(); ++i) g(i, i) = -1.0;
        return g;
    }
};

inline constexpr double kTolGroup = 1e-10;
inline constexpr double kTolAlg = 1e-10;

/// Gamma-unitary, unit-determinant matrix. Construct through validate_group.
struct GroupElement {
    Mat mat;
    Signature sig;

    GroupElement operator*(const GroupElement& rhs) const {
        return {mat * rhs.mat, sig};
    }
    GroupElement inverse() const; // Gamma g^dagger Gamma
    // (m,n)-partition blocks
    Mat block_a() const { return mat.topLeftCorner(sig.m, sig.m); }
    Mat block_b() const { return mat.topRightCorner(sig.m, sig.n); }
    Mat block_c() const { return mat.bottomLeftCorner(sig.n, sig.m); }
    Mat block_d() const { return mat.bottomRightCorner(sig.n, sig.n); }
};

/// Element of su(m,n): X^dagger Gamma + Gamma X = 0, tr X = 0.
struct AlgebraElement {
    Mat mat;
    Signature sig;
};

GroupElement validate_group(const Mat& mat, const Signature& sig,
                            double tol = kTolGroup);
AlgebraElement validate_algebra(const Mat& mat, const Signature& sig,
                                double tol = kTolAlg);

double gamma_unitarity_residual(const Mat& mat, const Signature& sig);

/// Matrix exponential of an algebra element; result is Gamma-unitary.
GroupElement exp_algebra(const AlgebraElement& x);

/// The one-parameter boost delta(t): cosh t / sinh t in slots (m, m+1).
GroupElement boost_delta(double t, const Signature& sig);

/// Radial Haar density rho(t) = sinh^2(t) sinh(2t) for the KdK parametrization.
double haar_density(double t);

/// Factors of g = k delta(t) q^dagger with k, q in S(U(m) x U(1)).
/// M-subgroup phase fixed by making the (m+1,m+1) entry of q equal 1
/// (for m = 1 that entry cannot be normalized; the sign of q is fixed
/// by Re q_22 >= 0 instead).
struct CartanFactors {
    GroupElement k;
    double t = 0.0;
    GroupElement q;

    Mat reassemble() const;
    double block_diag_residual() const; // off-block mass of k and q
};

CartanFactors cartan_decompose(const GroupElement& g, double tol = kTolGroup);

/// Compact-subgroup rotation angle alpha with k'' = exp(i alpha): the
/// argument of the (m+1, m+1) entry.
double compact_phase(const GroupElement& k);

/// The explicit su(2,1) basis X_1..X_8 together with the structure
/// constants f^C_{A,B} of [X_A, X_B] = f^C_{A,B} X_C, projected with the
/// trace form <X,Y> = -tr(XY) (diagonal on this basis, computed at startup).
struct Su21Basis {
    std::array<AlgebraElement, 8> x;
    std::array<double, 8> gram; // -tr(X_A X_A)
    double f[8][8][8];          // f[C][A][B]

    const Mat& mat(int a) const { return x[static_cast<std::size_t>(a - 1)].mat; }

    /// Linear combination sum_A xi_A X_A.
    AlgebraElement combine(const std::array<double, 8>& xi) const;
};

const Su21Basis& su21_basis();

/// Structure constants of an arbitrary orthogonal basis under -tr(XY);
/// throws BasisNotClosed when a commutator leaves the span.
void structure_constants(const std::array<AlgebraElement, 8>& basis,
                         double f[8][8][8], std::array<double, 8>* gram_out = nullptr,
                         double tol = kTolAlg);

/// Max over (A,B,C,E) of the Jacobi identity residual of f.
double jacobi_residual(const double f[8][8][8]);

/// First-order differential operator c1 d/dz1 + c2 d/dz2 + s, evaluated at
/// a point of the ball. These are the generators of the weight-N action
/// T f(Z) = det(CZ+d)^{-N} f((AZ+B)(CZ+d)^{-1}); the scalar part is the
/// multiplier derivative -n (C Z + D).
struct KillingVector {
    cplx c1;
    cplx c2;
    cplx scalar;
};

KillingVector killing_vector(int a, cplx z1, cplx z2, cplx rep_n);

/// Tabulated variant without the boost multipliers (and with the
/// -i/sqrt(3) dilation coefficient); fails to close under brackets and is
/// kept only as a concordance diagnostic.
KillingVector killing_vector_literal(int a, cplx z1, cplx z2, cplx rep_n);

/// Empirical closure data for the Killing vectors, measured by composing
/// them as differential operators on polynomial test functions.
struct KillingClosureReport {
    int bracket_sign = 0;     // sigma with [Xhat_A, Xhat_B] = sigma f^C_{A,B} Xhat_C
    double residual = 0.0;    // closure residual of the implemented operators
    double literal_residual = 0.0; // best-sign residual of the multiplier-free variant
};

KillingClosureReport measure_killing_closure(cplx rep_n = 3.0);

/// Random algebra element with coefficients in [-scale, scale] over the
/// su(2,1) basis (deterministic for a seeded Rng).
AlgebraElement random_su21(Rng& rng, double scale = 1.0);

} // namespace bergman
