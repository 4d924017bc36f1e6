#pragma once

#include "bergman/fock.hpp"
#include "bergman/geometry.hpp"
#include "bergman/group.hpp"

#include <array>
#include <vector>

namespace bergman {

/// Label of a Perelomov coherent state: g_x = k delta(t) k^dagger with
/// k = diag(k', k'') in S(U(2) x U(1)).
struct CoherentParam {
    Mat kprime;   // 2x2 unitary
    cplx kdprime; // det(k') k'' = 1
    double t = 0.0;

    static CoherentParam from_kprime(const Mat& kp, double t);
    static CoherentParam identity(double t = 0.0);
    static CoherentParam random(Rng& rng, double t_max);

    GroupElement k_group() const;       // diag(k', k'')
    GroupElement g_x() const;           // k delta(t) k^dagger
    AlgebraElement boost_generator() const; // t k X_7 k^dagger, so g_x = exp(...)
};

struct CoherentState {
    FockSector sector;
    Vec vec; // unit norm
    CoherentParam param;
    double leakage; // |1 - raw truncated norm|
};

CoherentState coherent_state(const CoherentParam& param, int n_rep,
                             int pair_cutoff, double leakage_bound = 1e-8);

/// Real noncommutative coordinates in the Hermitian convention:
/// xi_A = (1/N) <x| i Xhat_A |x>.
struct NCCoordinates {
    std::array<double, 8> xi;
};

struct StarValue {
    cplx value;              // (1/N^2) <x| Xhat_A Xhat_B |x>
    cplx anticommutator_half;
    cplx commutator_half;
};

struct SymmetrizedSymbol {
    cplx raw;          // <x| Xhat_{ {A_1} ... Xhat_{A_n} } |x>
    cplx signed_value; // (-1)^n raw
};

/// Coherent-state expectation engine at adaptive pair cutoff: P grows by 2
/// until the coordinate vector moves by less than conv_tol (cap p_cap, then
/// TruncationNotConverged).
class SymbolEngine {
public:
    SymbolEngine(int n_rep, const CoherentParam& param, double conv_tol = 1e-8,
                 int p_cap = 40);

    int n_rep() const { return n_rep_; }
    int pair_cutoff() const { return state_.sector.pair_cutoff; }
    const CoherentState& state() const { return state_; }
    const SpMat& xhat(int a) const { return gen_[static_cast<std::size_t>(a - 1)]; }

    cplx symbol(const SpMat& op) const;
    cplx raw_xi(int a) const;   // (1/N) <Xhat_a>, purely imaginary
    double xi(int a) const;     // Hermitian convention, real
    NCCoordinates xi_coords() const;
    StarValue star(int a, int b) const;
    SymmetrizedSymbol symmetrized_symbol(const std::vector<int>& indices) const;
    double associativity_residual(int a, int b, int c) const;

private:
    int n_rep_;
    CoherentState state_;
    std::array<SpMat, 8> gen_;
};

/// Dual-route (and diagnostic) evaluations of omega(g, x) = <x|That(g)|x>
/// for g = exp(xg).
struct OmegaRoutes {
    cplx fock;             // route (i): direct truncated-Fock sandwich
    cplx reduction;        // route (ii): omega0(g_x g g_x^{-1})
    cplx reduction_reversed; // omega0(g_x^{-1} g g_x), reversed conjugation
    cplx matrix_formula;   // the (cosh t)^{-2N} det[...]^{-N} expression
};

OmegaRoutes omega_routes(const AlgebraElement& xg, const CoherentParam& x,
                         int n_rep, int pair_cutoff);

/// Least-squares estimate of the deformation coefficients in
/// star(A,B) = (1 + A_N) xi_A xi_B + (1/2N) f^C_{AB} xi_C + B_N delta_AB,
/// fitted in the Hermitian convention over all pairs and the given states.
struct DeformationFit {
    double a_n;
    double b_n;
    double residual; // max row residual of the affine model
};

DeformationFit fit_deformation_coeffs(int n_rep,
                                      const std::vector<CoherentParam>& xs);

struct DeformationScan {
    std::vector<int> n_values;
    std::vector<DeformationFit> fits;
    double slope_a; // log|A_N| vs log N
    double slope_b;
};

DeformationScan deformation_scan(const std::vector<int>& n_values,
                                 const std::vector<CoherentParam>& xs);

/// max_{A,B} |star_H(A,B) - xi_A xi_B| per N, with the measured 1/N rate.
struct CommutativityScan {
    std::vector<int> n_values;
    std::vector<double> max_deviation;
    double slope; // log-log
};

CommutativityScan commutativity_scan(const std::vector<int>& n_values,
                                     const CoherentParam& x);

/// Equivariance of the coordinates under a compact rotation: compares
/// xi(k.x) against Ad(k) and Ad(k^{-1}) applied to xi(x); the matching
/// direction is recorded rather than assumed.
struct EquivarianceReport {
    double residual_adj;     // using D(k):   k X_A k^{-1}
    double residual_adj_inv; // using D(k^{-1})
    int direction;           // +1 -> Ad(k), -1 -> Ad(k^{-1})
};

EquivarianceReport xi_equivariance(const CoherentParam& x, const GroupElement& k,
                                   int n_rep);

/// Adjoint matrix D^B_A with k X_A k^{-1} = sum_B D^B_A X_B (trace-form
/// projection on the su(2,1) basis).
Eigen::MatrixXd adjoint_matrix(const GroupElement& k);

} // namespace bergman
