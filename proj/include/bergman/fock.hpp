#pragma once

#include "bergman/group.hpp"
#include "bergman/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace bergman {

/// Truncated N-sector of the three-oscillator Fock space: states
/// |m1, m2, nb> with nb - m1 - m2 = N and pair number p = m1 + m2 <= P,
/// graded by p then lexicographic in (m1, m2).
struct FockSector {
    struct State {
        int m1, m2, nb;
        int pair() const { return m1 + m2; }
    };

    int n_rep = 0;
    int pair_cutoff = 0;
    std::vector<State> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(int m1, int m2) const {
        int p = m1 + m2;
        return p * (p + 1) / 2 + m1;
    }
    bool contains(int m1, int m2) const {
        return m1 >= 0 && m2 >= 0 && m1 + m2 <= pair_cutoff;
    }
};

FockSector build_sector(int n_rep, int pair_cutoff, int max_dim = 10000);

/// Lowest-weight basis vector |x0> = |0, 0, N>.
Vec lowest_weight(const FockSector& sector);

/// Normal-ordered oscillator realization -Zhat^dagger Gamma X Zhat of an
/// arbitrary complex 3x3 matrix X on the truncated sector. Matrix elements
/// that would leave the pair cutoff are dropped.
SpMat hat_operator(const Mat& x, const FockSector& sector);

SpMat generator_matrix(int a, const FockSector& sector);

/// N * identity; commutes exactly with every hat_operator.
SpMat number_operator(const FockSector& sector);

struct GeneratorMatrices {
    std::array<SpMat, 8> xhat;
    FockSector sector;
};

GeneratorMatrices generator_matrices(const FockSector& sector);

/// Measured bracket data: [Xhat_A, Xhat_B] = sign * f^C_{A,B} Xhat_C on
/// interior columns (pair < P). The oscillator map is expected to compose
/// brackets anti-homomorphically (sign = -1); asserted by measurement, not
/// assumption.
struct BracketReport {
    int sign = 0;
    double residual = 0.0;          // with the measured sign, interior block
    double wrong_sign_residual = 0.0;
    double anti_hermiticity = 0.0;  // max ||Xhat + Xhat^dagger||
};

BracketReport bracket_check(const GeneratorMatrices& gen);

struct RepExponential {
    Mat matrix;
    double leakage; // max deviation of interior-column norms from 1
};

RepExponential rep_exponential(const std::array<double, 8>& xi,
                               const FockSector& sector,
                               double leakage_bound = 1.0,
                               double xi_bound = 3.0);

/// Cross-sector annihilation a_alpha (alpha = 1 or 2): maps the N-sector to
/// the (N+1)-sector (one a-particle removed).
SpMat osc_a(int alpha, const FockSector& from, const FockSector& to);

/// Cross-sector creation b^dagger: also maps the N-sector to the (N+1)-sector.
SpMat osc_b_dagger(const FockSector& from, const FockSector& to);

/// exp(t Xhat_7) column by column against the Bogolyubov closed form
/// cosh t a2 + sinh t b^dagger (and invariance of a1), for all basis columns
/// with pair <= p_test. The sector cutoff is chosen from the coherent-tail
/// amplitude so the truncation error sits below amp_tol.
struct BogolyubovReport {
    double residual_a2 = 0.0;
    double residual_a1 = 0.0;
    double generator_residual = 0.0; // [Xhat_7, a2] = b^dagger, exact level
    int pair_cutoff_used = 0;
};

BogolyubovReport bogolyubov_check(int n_rep, double t, int p_test,
                                  double amp_tol = 1e-12, int max_dim = 100000);

/// Pair cutoff that pushes the su(1,1) coherent tail below amp_tol for a
/// boost of size t in the N-sector.
int pair_cutoff_for(int n_rep, double t, double amp_tol);

struct Omega0Radial {
    cplx value;
    int pair_cutoff_used = 0;
    double last_increment = 0.0;
};

/// <x0| exp(t Xhat_7) |x0> on the truncated sector, raising P by 2 until the
/// value moves by less than conv_tol. Throws TruncationNotConverged at p_cap.
Omega0Radial omega0_radial(int n_rep, double t, double conv_tol = 1e-8,
                           int p_start = 8, int p_cap = 200);

/// <x0| That(g) |x0> via the Cartan reduction g = k delta(t) q^dagger:
/// phase^(N+1) * omega0_radial(t) with phase = exp(i(alpha(k) - alpha(q))).
/// The (N+1) power (rather than the naive N) carries the normal-ordering
/// vacuum phase of the oscillator realization; verified against the direct
/// route in the tests.
cplx omega0(const GroupElement& g, int n_rep, double conv_tol = 1e-8);

/// Direct route for g = exp(X): <x0| exp(hat(X)) |x0> at fixed cutoff.
cplx omega0_direct(const AlgebraElement& x, int n_rep, int pair_cutoff);

/// Phase picked up by |x0> under a compact rotation k, measured against the
/// candidate exponents k''^(N+1) (normal-ordering vacuum phase included) and
/// the naive k''^N.
struct RotationPhaseReport {
    double residual_exponent_np1 = 0.0;
    double residual_exponent_n = 0.0;
};

RotationPhaseReport measure_rotation_phase(int n_rep, int pair_cutoff = 10);

/// Closed-form adjudication of omega0(delta(t)) over a t-grid: the truncated
/// Fock value is ground truth; candidates are (cosh t)^{-(N+c)} for small c
/// and both readings of the (1 + ln cosh t)^N expression.
struct Omega0Adjudication {
    int n_rep;
    std::vector<double> t_grid;
    std::array<double, 4> max_dev_power; // c = 0,1,2,3
    int best_power_shift;                // argmin c
    double best_power_dev;
    double max_dev_log_form;       // (cosh t)^{-1} (1 + ln cosh t)^N
    double max_dev_log_form_powN;  // (cosh t)^{-N} (1 + ln cosh t)^N
    std::string verdict;
};

Omega0Adjudication adjudicate_omega0(int n_rep,
                                     const std::vector<double>& t_grid = {
                                         0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
                                         0.9, 1.0});

/// Oscillator-algebra checks for su(m,n) at a total-quanta cutoff: bracket
/// closure (measured sign), Nhat commutant, both Nhat forms, and the
/// (det b^dagger)^N lowest-weight eigenvector.
struct SumnReport {
    int m = 0, n = 0, n_rep = 0, cutoff = 0, dim = 0;
    int bracket_sign = 0;
    double bracket_residual = 0.0;
    double nhat_commutant_residual = 0.0;
    double nhat_form_residual = 0.0; // ladder form vs -tr(Z^dagger Gamma Z) - n^2
    double lowest_weight_residual = 0.0;
    double nhat_eigenvalue = 0.0; // measured on (det b^dagger)^N |0>
};

SumnReport sumn_algebra_check(int m, int n, int n_rep, int cutoff,
                              int max_dim = 20000);

} // namespace bergman
