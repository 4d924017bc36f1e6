#pragma once

#include "bergman/group.hpp"
#include "bergman/linalg.hpp"

#include <functional>

namespace bergman {

/// Point of the ball D = { Z in C^m : |Z|^2 < 1 }. Construction rejects
/// points closer to the boundary than the guard (the metric blows up there).
struct DomainPoint {
    Vec z;

    explicit DomainPoint(Vec zz, double boundary_guard = 1e-12);
    int m() const { return static_cast<int>(z.size()); }
    double norm2() const { return z.squaredNorm(); } // |Z|^2
    double one_minus() const { return 1.0 - norm2(); }
};

/// Kahler metric and its closed-form inverse at a point. The matrix index
/// convention is row = holomorphic derivative slot: g(i,j) = d_{z_i} d_{zbar_j}
/// of the potential -log(1 - |Z|^2), i.e. delta_ij/(1-|Z|^2) + zbar_i z_j/(1-|Z|^2)^2.
/// Under this convention g_inv(i,j) = (1-|Z|^2)(delta_ij - zbar_i z_j) and
/// g * g_inv = I as a plain matrix product.
struct MetricData {
    Mat g;
    Mat g_inv;
    DomainPoint at;
};

struct CurvatureReport {
    std::vector<Mat> christoffel; // christoffel[l](j,k) = Gamma^lbar_{jbar kbar}
    Mat ricci;
    double scalar;              // proportionality convention: -(m+1)
    double scalar_contraction;  // raw trace g^{-1} R = -m(m+1)
    double einstein_residual;   // with R = -(m+1), Lambda = (m+1)/2
    double proportionality_residual; // || R + (m+1) g ||_max
    double lambda;              // (m+1)/2
};

cplx bergman_kernel(const DomainPoint& w, const DomainPoint& z, int n_rep);

MetricData metric(const DomainPoint& z);

/// Gamma^lbar_{jbar kbar} = (delta_{kl} z_j + delta_{jl} z_k)/(1-|Z|^2).
std::vector<Mat> christoffel(const DomainPoint& z);

CurvatureReport ricci_and_scalar(const DomainPoint& z);

/// Fractional-linear action Z' = (aZ + b)(cZ + d)^{-1}; preserves D and is a
/// left group action.
DomainPoint mobius_action(const GroupElement& g, const DomainPoint& z);

/// Weight density of d mu_N = c_N (1-|Z|^2)^{N-(m+1)} |dZ|. The normalization
/// c_N = (N-2)(N-1)/pi^2 is only available for m = 2; requesting a normalized
/// density at other m throws NormalizationUnknown.
double measure_density(const DomainPoint& z, int n_rep, bool normalized = true);

/// c_N for m = 2.
double measure_norm_constant(int n_rep);

/// Weight-N multiplier action (T_N f)(Z) = det(cZ + d)^{-N} f(Z').
cplx rep_action(const GroupElement& g, int n_rep,
                const std::function<cplx(const DomainPoint&)>& f,
                const DomainPoint& z);

/// Multiplier det(cZ + d)^{-N} alone.
cplx rep_multiplier(const GroupElement& g, int n_rep, const DomainPoint& z);

/// Composition direction of the multiplier action, measured on random data:
/// direction = +1 means T(g1)T(g2) = T(g1 g2), -1 means T(g1)T(g2) = T(g2 g1).
struct CompositionReport {
    int direction = 0;
    double residual = 0.0;
    double other_direction_residual = 0.0;
};

CompositionReport measure_rep_action_composition(int n_rep, Rng& rng,
                                                 int samples = 20);

/// integral of d mu_N over D for m = 2, reduced to the radial variable
/// r = |Z|^2 (Lebesgue measure contributes pi^2 r dr) and integrated
/// adaptively to the requested tolerance.
double measure_normalization_radial(int n_rep, double tol = 1e-10);

/// Monte Carlo cross-check of the same integral with `samples` points
/// uniform in the 4-ball (m = 2).
double measure_normalization_mc(int n_rep, std::size_t samples, Rng& rng);

} // namespace bergman
