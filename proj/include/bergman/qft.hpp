#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bergman {

enum class RegulatorMode { lower_cutoff, mass_shift };

std::string to_string(RegulatorMode mode);
RegulatorMode regulator_mode_from_string(const std::string& s);

struct FieldParams {
    double mu2 = 0.0;      // mass squared
    double xi_c = 0.0;     // curvature coupling
    double lambda_c = 1.0; // quartic coupling, pure prefactor of the amplitude
    int lambda_cut = 100;  // cutoff on N
    double eps = 0.1;      // infrared regulator
    RegulatorMode mode = RegulatorMode::lower_cutoff;
};

/// Mode propagator 1/(l(N-2) - l^2 + mu^2 - 3 xi) for m = 2.
double propagator(int n, int l, const FieldParams& p);

struct PositivityEntry {
    int n, l;
    double denom;
};

struct PositivityReport {
    std::vector<PositivityEntry> entries;
    int negative = 0;
    int zero = 0;
    double min_denom = 0.0;
};

PositivityReport positivity_domain(const FieldParams& p, int n_min, int n_max);

struct TadpoleResult {
    double direct_sum = 0.0;
    double closed_form = 0.0; // massless only; NaN otherwise
    std::vector<std::pair<int, double>> per_n_terms;
    RegulatorMode mode;
    bool massless = false;
};

/// Regulated double sum sum_N (1/N) sum_l 1/(l(N-2) - l^2 + mu^2 - 3 xi),
/// Kahan-compensated, per-N partials exposed. Massless handling of the
/// singular l = 0 mode:
///   lower_cutoff : the l = 0 term becomes ln(1/eps)/(N-2) (the integral
///                  regularization behind the closed form); l >= 1 kept as is
///   mass_shift   : mu^2 -> eps^2 throughout
TadpoleResult tadpole_direct(const FieldParams& p);

/// sum_{N=3}^{Lambda} [ln(N-2) - ln eps] / (N (N-2)), times lambda_c.
double tadpole_closed_form(const FieldParams& p);

struct EpsSlopeFit {
    double slope;      // of G2 against ln(1/eps) at fixed Lambda
    double target;     // sum_{N=3}^{Lambda} 1/(N(N-2))
    double rel_gap;    // |slope - target| / target
};

EpsSlopeFit eps_divergence_slope(const FieldParams& base,
                                 const std::vector<double>& eps_grid);

struct FinitenessPoint {
    int lambda_cut;
    double eps;
    double closed;
    double direct;
    bool has_direct;
};

struct FinitenessScan {
    std::vector<FinitenessPoint> points;
    double max_closed = 0.0;
    /// deviation of the closed form from the lambda_c (1 - ln L/L - 1/L)
    /// hypothesis, reported per grid point
    std::vector<double> hypothesis_gap;
};

/// Coupled-regulator scan eps = c / Lambda over an increasing Lambda grid;
/// the direct sum is evaluated up to direct_cap (quadratic cost in Lambda).
FinitenessScan finiteness_scan(const FieldParams& base, double c,
                               const std::vector<int>& lambda_grid,
                               int direct_cap = 10000);

} // namespace bergman
