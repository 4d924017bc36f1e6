#pragma once

#include "bergman/geometry.hpp"
#include "bergman/linalg.hpp"

#include <functional>
#include <vector>

namespace bergman {

/// Discrete mode of the invariant Laplacian: lambda = i(N - 2 - 2l) and
/// eigenvalue l(l + 2 - N) = -((N-2)^2 + lambda^2)/4, an exact integer
/// identity.
struct SpectralMode {
    int n_rep;
    int l;
    double lambda_im;  // lambda = i * lambda_im
    long eigenvalue;   // l (l + 2 - N)
};

std::vector<SpectralMode> discrete_spectrum(int n_rep, int m = 2);

/// Radial functions of the form P(r) (1-r)^{-s}; closed under the radial
/// Laplacian, exact coefficient arithmetic.
struct RadialFn {
    std::vector<double> num; // polynomial coefficients, ascending powers of r
    int s = 0;               // (1-r)^{-s}

    double eval(double r) const;
    RadialFn deriv() const;
    RadialFn mul_poly(const std::vector<double>& poly) const;
    RadialFn operator+(const RadialFn& o) const;
    RadialFn operator*(double c) const;
};

/// phi(r) = (1-r)^{(-N+2-i lambda)/2} F(a, b; m; r); for discrete modes
/// b = -l terminates the series, giving P(r)(1-r)^{-l} exactly.
RadialFn eigenfunction_radial(const SpectralMode& mode, int m);

double eigenfunction(const SpectralMode& mode, int m, double r);

/// Radial collapse of the invariant Laplacian applied to f:
/// Delta_N f = (1-r) [ r (1-r) f'' + (m - (N+1) r) f' ].
RadialFn laplacian_radial(const RadialFn& f, int n_rep, int m);

double laplacian_apply(const RadialFn& f, int n_rep, int m, double r);

/// Multivariate form Delta_N h = (1-|Z|^2)(sum_i d_i dbar_i h
/// - sum_{ij} zbar_i z_j dbar_i d_j h - N sum_i zbar_i dbar_i h) evaluated by
/// Richardson-extrapolated central differences; used to cross-check the
/// radial collapse and to transport eigenfunctions in invariance_check.
cplx laplacian_numeric(const std::function<cplx(const DomainPoint&)>& h, int n_rep,
                       const DomainPoint& z, double step = 1e-3);

/// max over sample points of |T_g(Delta_N f) - Delta_N(T_g f)| with the
/// weight-N multiplier action.
double invariance_check(const GroupElement& g, const RadialFn& f, int n_rep,
                        const std::vector<DomainPoint>& samples);

} // namespace bergman
