#include "bergman/fock.hpp"

#include "bergman/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bergman {

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

SpMat from_triplets(const Triplets& trip, int rows, int cols) {
    SpMat m(rows, cols);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

double max_abs_sparse(const SpMat& m) {
    double worst = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

double max_abs_cols(const Mat& m, const std::vector<bool>& col_keep) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!col_keep[static_cast<std::size_t>(j)]) continue;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            worst = std::max(worst, std::abs(m(i, j)));
    }
    return worst;
}

} // namespace

FockSector build_sector(int n_rep, int pair_cutoff, int max_dim) {
    if (n_rep < 3) throw ConfigInvalid("sector requires N >= 3");
    if (pair_cutoff < 0) throw ConfigInvalid("pair cutoff must be nonnegative");
    long dim = static_cast<long>(pair_cutoff + 1) * (pair_cutoff + 2) / 2;
    if (dim > max_dim) {
        std::ostringstream os;
        os << "sector dimension " << dim << " exceeds bound " << max_dim;
        throw CutoffTooLarge(os.str());
    }
    FockSector s;
    s.n_rep = n_rep;
    s.pair_cutoff = pair_cutoff;
    s.basis.reserve(static_cast<std::size_t>(dim));
    for (int p = 0; p <= pair_cutoff; ++p)
        for (int m1 = 0; m1 <= p; ++m1)
            s.basis.push_back({m1, p - m1, n_rep + p});
    return s;
}

Vec lowest_weight(const FockSector& sector) {
    Vec v = Vec::Zero(sector.dim());
    v(0) = 1.0;
    return v;
}

SpMat hat_operator(const Mat& x, const FockSector& sector) {
    Triplets trip;
    trip.reserve(static_cast<std::size_t>(sector.dim()) * 9);
    const int dim = sector.dim();
    for (int j = 0; j < dim; ++j) {
        const auto& st = sector.basis[static_cast<std::size_t>(j)];
        const int occ[2] = {st.m1, st.m2};
        // -X_{alpha beta} a^dagger_alpha a_beta
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be) {
                cplx c = -x(al, be);
                if (c == cplx(0.0)) continue;
                if (occ[be] == 0) continue;
                int m1 = st.m1 - (be == 0) + (al == 0);
                int m2 = st.m2 - (be == 1) + (al == 1);
                if (m1 < 0 || m2 < 0) continue;
                double amp = std::sqrt(static_cast<double>(occ[be])) *
                             std::sqrt(static_cast<double>(occ[al] - (al == be ? 1 : 0) + 1));
                trip.emplace_back(sector.index_of(m1, m2), j, c * amp);
            }
        // -X_{alpha 3} a^dagger_alpha b^dagger : pair p -> p+1
        for (int al = 0; al < 2; ++al) {
            cplx c = -x(al, 2);
            if (c == cplx(0.0)) continue;
            int m1 = st.m1 + (al == 0);
            int m2 = st.m2 + (al == 1);
            if (!sector.contains(m1, m2)) continue;
            double amp = std::sqrt(static_cast<double>(occ[al] + 1)) *
                         std::sqrt(static_cast<double>(st.nb + 1));
            trip.emplace_back(sector.index_of(m1, m2), j, c * amp);
        }
        // +X_{3 beta} b a_beta : pair p -> p-1
        for (int be = 0; be < 2; ++be) {
            cplx c = x(2, be);
            if (c == cplx(0.0)) continue;
            if (occ[be] == 0) continue;
            int m1 = st.m1 - (be == 0);
            int m2 = st.m2 - (be == 1);
            double amp = std::sqrt(static_cast<double>(occ[be])) *
                         std::sqrt(static_cast<double>(st.nb));
            trip.emplace_back(sector.index_of(m1, m2), j, c * amp);
        }
        // +X_33 (b^dagger b + 1)
        if (x(2, 2) != cplx(0.0)) {
            trip.emplace_back(j, j, x(2, 2) * static_cast<double>(st.nb + 1));
        }
    }
    return from_triplets(trip, dim, dim);
}

SpMat generator_matrix(int a, const FockSector& sector) {
    return hat_operator(su21_basis().mat(a), sector);
}

SpMat number_operator(const FockSector& sector) {
    Triplets trip;
    for (int j = 0; j < sector.dim(); ++j)
        trip.emplace_back(j, j, static_cast<double>(sector.n_rep));
    return from_triplets(trip, sector.dim(), sector.dim());
}

GeneratorMatrices generator_matrices(const FockSector& sector) {
    GeneratorMatrices g{{}, sector};
    for (int a = 1; a <= 8; ++a) g.xhat[static_cast<std::size_t>(a - 1)] = generator_matrix(a, sector);
    return g;
}

BracketReport bracket_check(const GeneratorMatrices& gen) {
    const FockSector& sector = gen.sector;
    const Su21Basis& basis = su21_basis();
    const int dim = sector.dim();

    std::vector<bool> interior(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
        interior[static_cast<std::size_t>(j)] = sector.basis[static_cast<std::size_t>(j)].pair() < sector.pair_cutoff;

    std::array<Mat, 8> dense;
    for (int a = 0; a < 8; ++a) dense[static_cast<std::size_t>(a)] = Mat(gen.xhat[static_cast<std::size_t>(a)]);

    BracketReport rep;
    for (int a = 0; a < 8; ++a) {
        rep.anti_hermiticity = std::max(
            rep.anti_hermiticity,
            max_abs(Mat(dense[static_cast<std::size_t>(a)] + dense[static_cast<std::size_t>(a)].adjoint())));
    }

    double res_plus = 0.0, res_minus = 0.0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
            Mat comm = dense[static_cast<std::size_t>(a)] * dense[static_cast<std::size_t>(b)] -
                       dense[static_cast<std::size_t>(b)] * dense[static_cast<std::size_t>(a)];
            Mat lincomb = Mat::Zero(dim, dim);
            for (int c = 0; c < 8; ++c) {
                double fc = basis.f[c][a][b];
                if (fc != 0.0) lincomb += fc * dense[static_cast<std::size_t>(c)];
            }
            res_plus = std::max(res_plus, max_abs_cols(comm - lincomb, interior));
            res_minus = std::max(res_minus, max_abs_cols(comm + lincomb, interior));
        }
    rep.sign = (res_minus <= res_plus) ? -1 : +1;
    rep.residual = std::min(res_plus, res_minus);
    rep.wrong_sign_residual = std::max(res_plus, res_minus);
    return rep;
}

RepExponential rep_exponential(const std::array<double, 8>& xi,
                               const FockSector& sector, double leakage_bound,
                               double xi_bound) {
    double norm = 0.0;
    for (double v : xi) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > xi_bound) {
        throw ConfigInvalid("rep_exponential parameter norm exceeds bound");
    }
    // Exponentiating the truncated generator alone would be exactly unitary
    // (the cutoff preserves anti-Hermiticity) and would hide the truncation
    // error, so the exponential is taken on a padded sector and cut back;
    // the column-norm deficit is then the mass genuinely lost past the
    // cutoff.
    const int pad = 12;
    FockSector ext = build_sector(sector.n_rep, sector.pair_cutoff + pad, 1000000);
    SpMat m(ext.dim(), ext.dim());
    for (int a = 0; a < 8; ++a) {
        if (xi[static_cast<std::size_t>(a)] != 0.0)
            m = m + SpMat(xi[static_cast<std::size_t>(a)] * generator_matrix(a + 1, ext));
    }
    Mat full = expm(Mat(m));
    RepExponential out{full.topLeftCorner(sector.dim(), sector.dim()), 0.0};
    for (int j = 0; j < sector.dim(); ++j) {
        if (sector.basis[static_cast<std::size_t>(j)].pair() >= sector.pair_cutoff) continue;
        out.leakage = std::max(out.leakage, std::abs(out.matrix.col(j).norm() - 1.0));
    }
    if (out.leakage > leakage_bound) {
        std::ostringstream os;
        os << "column-norm leakage " << out.leakage << " exceeds " << leakage_bound;
        throw LeakageExceeded(os.str());
    }
    return out;
}

SpMat osc_a(int alpha, const FockSector& from, const FockSector& to) {
    if (to.n_rep != from.n_rep + 1) throw ConfigInvalid("osc_a: target sector must be N+1");
    Triplets trip;
    for (int j = 0; j < from.dim(); ++j) {
        const auto& st = from.basis[static_cast<std::size_t>(j)];
        int occ = (alpha == 1) ? st.m1 : st.m2;
        if (occ == 0) continue;
        int m1 = st.m1 - (alpha == 1);
        int m2 = st.m2 - (alpha == 2);
        if (!to.contains(m1, m2)) continue;
        trip.emplace_back(to.index_of(m1, m2), j, std::sqrt(static_cast<double>(occ)));
    }
    return from_triplets(trip, to.dim(), from.dim());
}

SpMat osc_b_dagger(const FockSector& from, const FockSector& to) {
    if (to.n_rep != from.n_rep + 1) throw ConfigInvalid("osc_b_dagger: target sector must be N+1");
    Triplets trip;
    for (int j = 0; j < from.dim(); ++j) {
        const auto& st = from.basis[static_cast<std::size_t>(j)];
        if (!to.contains(st.m1, st.m2)) continue;
        trip.emplace_back(to.index_of(st.m1, st.m2), j,
                          std::sqrt(static_cast<double>(st.nb + 1)));
    }
    return from_triplets(trip, to.dim(), from.dim());
}

int pair_cutoff_for(int n_rep, double t, double amp_tol) {
    if (t <= 0.0) return 4;
    const double lsech = -std::log(std::cosh(t));
    const double ltanh = std::log(std::tanh(t));
    const double log_tol = std::log(amp_tol);
    for (int q = 1; q < 4000; ++q) {
        double lamp = (n_rep + 1) * lsech + q * ltanh +
                      0.5 * (std::lgamma(q + n_rep + 1.0) - std::lgamma(q + 1.0) -
                             std::lgamma(n_rep + 1.0));
        if (lamp <= log_tol) return q;
    }
    throw TruncationNotConverged("no pair cutoff reaches the requested amplitude");
}

BogolyubovReport bogolyubov_check(int n_rep, double t, int p_test, double amp_tol,
                                  int max_dim) {
    BogolyubovReport rep;
    const int pcut = p_test + pair_cutoff_for(n_rep + 2 * p_test, t, amp_tol) + 16;
    rep.pair_cutoff_used = pcut;
    FockSector from = build_sector(n_rep, pcut, max_dim);
    FockSector to = build_sector(n_rep + 1, pcut, max_dim);

    SpMat m7f = generator_matrix(7, from);
    SpMat m7t = generator_matrix(7, to);
    SpMat a1 = osc_a(1, from, to);
    SpMat a2 = osc_a(2, from, to);
    SpMat bd = osc_b_dagger(from, to);

    // Generator-level identities [Xhat_7, a2] = b^dagger and [Xhat_7, a1] = 0,
    // exact away from the cutoff boundary.
    {
        SpMat r2 = SpMat(m7t * a2) - SpMat(a2 * m7f) - bd;
        SpMat r1 = SpMat(m7t * a1) - SpMat(a1 * m7f);
        double worst = 0.0;
        for (const SpMat* r : {&r2, &r1}) {
            for (int k = 0; k < r->outerSize(); ++k)
                for (SpMat::InnerIterator it(*r, k); it; ++it) {
                    if (from.basis[static_cast<std::size_t>(it.col())].pair() >= from.pair_cutoff - 1)
                        continue;
                    worst = std::max(worst, std::abs(it.value()));
                }
        }
        rep.generator_residual = worst;
    }

    const double ch = std::cosh(t), sh = std::sinh(t);
    for (int j = 0; j < from.dim(); ++j) {
        if (from.basis[static_cast<std::size_t>(j)].pair() > p_test) continue;
        Vec v = Vec::Zero(from.dim());
        v(j) = 1.0;
        Vec w = expmv(SpMat(-t * m7f), v);
        Vec lhs2 = expmv(SpMat(t * m7t), Vec(a2 * w));
        Vec rhs2 = ch * (a2 * v) + sh * (bd * v);
        rep.residual_a2 = std::max(rep.residual_a2, max_abs(Vec(lhs2 - rhs2)));

        Vec lhs1 = expmv(SpMat(t * m7t), Vec(a1 * w));
        Vec rhs1 = a1 * v;
        rep.residual_a1 = std::max(rep.residual_a1, max_abs(Vec(lhs1 - rhs1)));
    }
    return rep;
}

Omega0Radial omega0_radial(int n_rep, double t, double conv_tol, int p_start,
                           int p_cap) {
    if (std::abs(t) < 1e-15) return {cplx(1.0), p_start, 0.0};
    cplx prev = 0.0;
    bool have_prev = false;
    for (int p = p_start; p <= p_cap; p += 2) {
        FockSector sector = build_sector(n_rep, p, 1000000);
        SpMat m7 = generator_matrix(7, sector);
        Vec v = expmv(SpMat(t * m7), lowest_weight(sector));
        cplx val = v(0);
        if (have_prev && std::abs(val - prev) < conv_tol) {
            return {val, p, std::abs(val - prev)};
        }
        prev = val;
        have_prev = true;
    }
    throw TruncationNotConverged("omega0(delta(t)) did not converge in the pair cutoff");
}

cplx omega0(const GroupElement& g, int n_rep, double conv_tol) {
    CartanFactors cf = cartan_decompose(g);
    double ak = compact_phase(cf.k);
    double aq = compact_phase(cf.q);
    cplx phase = std::exp(I_UNIT * static_cast<double>(n_rep + 1) * (ak - aq));
    return phase * omega0_radial(n_rep, cf.t, conv_tol).value;
}

cplx omega0_direct(const AlgebraElement& x, int n_rep, int pair_cutoff) {
    FockSector sector = build_sector(n_rep, pair_cutoff, 1000000);
    SpMat m = hat_operator(x.mat, sector);
    Vec v = expmv(m, lowest_weight(sector));
    return v(0);
}

RotationPhaseReport measure_rotation_phase(int n_rep, int pair_cutoff) {
    // k = exp(alpha X_3 + beta X_8): block-diagonal compact rotation with a
    // nontrivial (3,3) phase.
    const double alpha = 0.37, beta = 0.53;
    std::array<double, 8> xi{};
    xi[2] = alpha;
    xi[7] = beta;
    AlgebraElement y = su21_basis().combine(xi);
    GroupElement k = exp_algebra(y);
    cplx kdd = k.mat(2, 2);

    FockSector sector = build_sector(n_rep, pair_cutoff, 100000);
    Vec v = expmv(hat_operator(y.mat, sector), lowest_weight(sector));

    auto powc = [](cplx base, int e) {
        cplx out = 1.0;
        for (int i = 0; i < e; ++i) out *= base;
        return out;
    };
    RotationPhaseReport rep;
    Vec x0 = lowest_weight(sector);
    rep.residual_exponent_np1 = max_abs(Vec(v - powc(kdd, n_rep + 1) * x0));
    rep.residual_exponent_n = max_abs(Vec(v - powc(kdd, n_rep) * x0));
    return rep;
}

Omega0Adjudication adjudicate_omega0(int n_rep, const std::vector<double>& t_grid) {
    Omega0Adjudication adj;
    adj.n_rep = n_rep;
    adj.t_grid = t_grid;
    adj.max_dev_power = {0.0, 0.0, 0.0, 0.0};
    adj.max_dev_log_form = 0.0;
    adj.max_dev_log_form_powN = 0.0;
    for (double t : t_grid) {
        double truth = omega0_radial(n_rep, t, 1e-10).value.real();
        double ch = std::cosh(t);
        for (int c = 0; c < 4; ++c) {
            double cand = std::pow(ch, -(n_rep + c));
            adj.max_dev_power[static_cast<std::size_t>(c)] =
                std::max(adj.max_dev_power[static_cast<std::size_t>(c)], std::abs(cand - truth));
        }
        double logf = std::pow(1.0 + std::log(ch), n_rep);
        adj.max_dev_log_form = std::max(adj.max_dev_log_form, std::abs(logf / ch - truth));
        adj.max_dev_log_form_powN =
            std::max(adj.max_dev_log_form_powN, std::abs(logf * std::pow(ch, -n_rep) - truth));
    }
    adj.best_power_shift = 0;
    adj.best_power_dev = adj.max_dev_power[0];
    for (int c = 1; c < 4; ++c) {
        if (adj.max_dev_power[static_cast<std::size_t>(c)] < adj.best_power_dev) {
            adj.best_power_dev = adj.max_dev_power[static_cast<std::size_t>(c)];
            adj.best_power_shift = c;
        }
    }
    std::ostringstream os;
    os << "omega0(delta(t)) matches (cosh t)^-(N+" << adj.best_power_shift
       << ") to " << adj.best_power_dev << "; the (1+ln cosh t)^N form deviates by "
       << adj.max_dev_log_form << " (x cosh^-1) / " << adj.max_dev_log_form_powN
       << " (x cosh^-N)";
    adj.verdict = os.str();
    return adj;
}

// ---------------------------------------------------------------------------
// su(m,n) oscillator checks on the plain multimode Fock space
// ---------------------------------------------------------------------------

namespace {

struct MnFock {
    int m, n, cutoff;
    int a_modes, b_modes;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index;

    int modes() const { return a_modes + b_modes; }
    int a_mode(int a, int alpha) const { return a * n + alpha; }          // a in [0,m)
    int b_mode(int b, int beta) const { return a_modes + b * n + beta; }  // b in [0,n)
};

MnFock enumerate_mn(int m, int n, int cutoff, int max_dim) {
    MnFock f;
    f.m = m;
    f.n = n;
    f.cutoff = cutoff;
    f.a_modes = m * n;
    f.b_modes = n * n;
    // dim = C(cutoff + modes, modes); guard before enumerating
    double dim_est = 1.0;
    for (int k = 1; k <= f.modes(); ++k)
        dim_est *= static_cast<double>(cutoff + k) / k;
    if (dim_est > static_cast<double>(max_dim)) {
        throw CutoffTooLarge("su(m,n) Fock dimension exceeds bound");
    }
    std::vector<int> occ(static_cast<std::size_t>(f.modes()), 0);
    // lexicographic enumeration of occupations with total <= cutoff
    auto rec = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == f.modes()) {
            f.index.emplace(occ, static_cast<int>(f.states.size()));
            f.states.push_back(occ);
            return;
        }
        for (int q = 0; q <= remaining; ++q) {
            occ[static_cast<std::size_t>(mode)] = q;
            self(self, mode + 1, remaining - q);
        }
        occ[static_cast<std::size_t>(mode)] = 0;
    };
    rec(rec, 0, cutoff);
    if (static_cast<int>(f.states.size()) > max_dim) {
        throw CutoffTooLarge("su(m,n) Fock dimension exceeds bound");
    }
    return f;
}

int total_quanta(const std::vector<int>& occ) {
    int t = 0;
    for (int q : occ) t += q;
    return t;
}

// zhat^dagger_{a alpha} zhat_{b alpha}, normal ordered, truncated.
void add_quadratic(Triplets& trip, const MnFock& f, int a, int b, int alpha,
                   cplx coeff) {
    const int m = f.m;
    for (int j = 0; j < static_cast<int>(f.states.size()); ++j) {
        std::vector<int> occ = f.states[static_cast<std::size_t>(j)];
        double amp = 1.0;
        if (a < m && b < m) { // adag_a a_b
            int mb = f.a_mode(b, alpha), ma = f.a_mode(a, alpha);
            if (occ[static_cast<std::size_t>(mb)] == 0) continue;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mb)]));
            occ[static_cast<std::size_t>(mb)]--;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(ma)] + 1));
            occ[static_cast<std::size_t>(ma)]++;
        } else if (a < m && b >= m) { // adag_a bdag_{b-m} : +2 quanta
            int ma = f.a_mode(a, alpha), mb = f.b_mode(b - m, alpha);
            if (total_quanta(occ) + 2 > f.cutoff) continue;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mb)] + 1));
            occ[static_cast<std::size_t>(mb)]++;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(ma)] + 1));
            occ[static_cast<std::size_t>(ma)]++;
        } else if (a >= m && b < m) { // b_{a-m} a_b : -2 quanta
            int ma = f.b_mode(a - m, alpha), mb = f.a_mode(b, alpha);
            if (occ[static_cast<std::size_t>(mb)] == 0 || occ[static_cast<std::size_t>(ma)] == 0) continue;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mb)]));
            occ[static_cast<std::size_t>(mb)]--;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(ma)]));
            occ[static_cast<std::size_t>(ma)]--;
        } else { // b_{a-m} bdag_{b-m} = bdag_{b-m} b_{a-m} + delta
            int ma = f.b_mode(a - m, alpha), mb = f.b_mode(b - m, alpha);
            if (ma == mb) {
                trip.emplace_back(j, j, coeff * static_cast<double>(occ[static_cast<std::size_t>(ma)] + 1));
                continue;
            }
            if (occ[static_cast<std::size_t>(ma)] == 0) continue;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(ma)]));
            occ[static_cast<std::size_t>(ma)]--;
            amp *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mb)] + 1));
            occ[static_cast<std::size_t>(mb)]++;
        }
        auto it = f.index.find(occ);
        if (it == f.index.end()) continue;
        trip.emplace_back(it->second, j, coeff * amp);
    }
}

SpMat hat_mn(const Mat& x, const MnFock& f) {
    const int d = static_cast<int>(f.states.size());
    const int mn = f.m + f.n;
    Triplets trip;
    for (int a = 0; a < mn; ++a)
        for (int b = 0; b < mn; ++b) {
            cplx xab = x(a, b);
            if (xab == cplx(0.0)) continue;
            double gamma_a = (a < f.m) ? 1.0 : -1.0;
            for (int alpha = 0; alpha < f.n; ++alpha)
                add_quadratic(trip, f, a, b, alpha, -gamma_a * xab);
        }
    return from_triplets(trip, d, d);
}

std::vector<Mat> sumn_basis(int m, int n) {
    const int d = m + n;
    const cplx i = I_UNIT;
    std::vector<Mat> basis;
    auto push = [&](Mat x) { basis.push_back(std::move(x)); };
    auto compact_pairs = [&](int lo, int hi) {
        for (int a = lo; a < hi; ++a)
            for (int b = a + 1; b < hi; ++b) {
                Mat s = Mat::Zero(d, d), t = Mat::Zero(d, d);
                s(a, b) = 1.0;
                s(b, a) = -1.0;
                t(a, b) = i;
                t(b, a) = i;
                push(s);
                push(t);
            }
    };
    compact_pairs(0, m);
    compact_pairs(m, d);
    for (int a = 0; a + 1 < d; ++a) {
        Mat h = Mat::Zero(d, d);
        h(a, a) = i;
        h(a + 1, a + 1) = -i;
        push(h);
    }
    for (int a = 0; a < m; ++a)
        for (int b = m; b < d; ++b) {
            Mat s = Mat::Zero(d, d), t = Mat::Zero(d, d);
            s(a, b) = 1.0;
            s(b, a) = 1.0;
            t(a, b) = i;
            t(b, a) = -i;
            push(s);
            push(t);
        }
    return basis;
}

} // namespace

SumnReport sumn_algebra_check(int m, int n, int n_rep, int cutoff, int max_dim) {
    if (m + n > 4) throw ConfigInvalid("sumn check limited to m+n <= 4");
    SumnReport rep;
    rep.m = m;
    rep.n = n;
    rep.n_rep = n_rep;
    rep.cutoff = cutoff;

    MnFock f = enumerate_mn(m, n, cutoff, max_dim);
    const int dim = static_cast<int>(f.states.size());
    rep.dim = dim;

    std::vector<Mat> basis = sumn_basis(m, n);
    const int nb = static_cast<int>(basis.size());

    // structure constants by least squares on vectorized matrices
    const int d = m + n;
    Eigen::MatrixXcd bm(d * d, nb);
    for (int k = 0; k < nb; ++k)
        bm.col(k) = Eigen::Map<const Eigen::VectorXcd>(basis[static_cast<std::size_t>(k)].data(), d * d);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(bm);

    std::vector<SpMat> xhat(static_cast<std::size_t>(nb));
    for (int k = 0; k < nb; ++k) xhat[static_cast<std::size_t>(k)] = hat_mn(basis[static_cast<std::size_t>(k)], f);

    std::vector<bool> interior(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
        interior[static_cast<std::size_t>(j)] = total_quanta(f.states[static_cast<std::size_t>(j)]) <= cutoff - 2;

    auto interior_max = [&](const SpMat& s) {
        double worst = 0.0;
        for (int k = 0; k < s.outerSize(); ++k)
            for (SpMat::InnerIterator it(s, k); it; ++it)
                if (interior[static_cast<std::size_t>(it.col())])
                    worst = std::max(worst, std::abs(it.value()));
        return worst;
    };

    double res_plus = 0.0, res_minus = 0.0;
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) {
            Mat comm = basis[static_cast<std::size_t>(a)] * basis[static_cast<std::size_t>(b)] -
                       basis[static_cast<std::size_t>(b)] * basis[static_cast<std::size_t>(a)];
            Eigen::VectorXcd coef =
                qr.solve(Eigen::Map<const Eigen::VectorXcd>(comm.data(), d * d));
            SpMat target(dim, dim);
            for (int c = 0; c < nb; ++c) {
                if (std::abs(coef(c)) < 1e-13) continue;
                target = target + SpMat(coef(c) * xhat[static_cast<std::size_t>(c)]);
            }
            SpMat fock_comm = SpMat(xhat[static_cast<std::size_t>(a)] * xhat[static_cast<std::size_t>(b)]) -
                              SpMat(xhat[static_cast<std::size_t>(b)] * xhat[static_cast<std::size_t>(a)]);
            res_plus = std::max(res_plus, interior_max(SpMat(fock_comm - target)));
            res_minus = std::max(res_minus, interior_max(SpMat(fock_comm + target)));
        }
    rep.bracket_sign = (res_minus <= res_plus) ? -1 : +1;
    rep.bracket_residual = std::min(res_plus, res_minus);

    // Nhat: ladder form and -tr(Z^dagger Gamma Z) - n^2 form
    Triplets ntrip;
    for (int j = 0; j < dim; ++j) {
        const auto& occ = f.states[static_cast<std::size_t>(j)];
        int na = 0, nbq = 0;
        for (int k = 0; k < f.a_modes; ++k) na += occ[static_cast<std::size_t>(k)];
        for (int k = 0; k < f.b_modes; ++k) nbq += occ[static_cast<std::size_t>(f.a_modes + k)];
        ntrip.emplace_back(j, j, static_cast<double>(nbq - na));
    }
    SpMat nhat = from_triplets(ntrip, dim, dim);

    {
        // -tr(Zdag Gamma Z) - n^2 via the quadratic builder with X = identity
        Triplets trip;
        for (int a = 0; a < d; ++a) {
            double gamma_a = (a < m) ? 1.0 : -1.0;
            for (int alpha = 0; alpha < n; ++alpha)
                add_quadratic(trip, f, a, a, alpha, cplx(-gamma_a));
        }
        SpMat form = from_triplets(trip, dim, dim);
        for (int j = 0; j < dim; ++j) form.coeffRef(j, j) -= static_cast<double>(n) * n;
        rep.nhat_form_residual = max_abs_sparse(SpMat(form - nhat));
    }

    for (int a = 0; a < nb; ++a) {
        SpMat comm = SpMat(nhat * xhat[static_cast<std::size_t>(a)]) - SpMat(xhat[static_cast<std::size_t>(a)] * nhat);
        rep.nhat_commutant_residual =
            std::max(rep.nhat_commutant_residual, max_abs_sparse(comm));
    }

    // lowest weight (det b^dagger)^N |0>
    {
        Triplets trip;
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
        SpMat det_op(dim, dim);
        do {
            int inv = 0;
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = i2 + 1; j2 < n; ++j2)
                    if (perm[static_cast<std::size_t>(i2)] > perm[static_cast<std::size_t>(j2)]) ++inv;
            double sgn = (inv % 2 == 0) ? 1.0 : -1.0;
            // product over beta of bdag_{perm[beta], beta}
            SpMat term = SpMat(dim, dim);
            term.setIdentity();
            for (int beta = 0; beta < n; ++beta) {
                Triplets ct;
                int mode = f.b_mode(perm[static_cast<std::size_t>(beta)], beta);
                for (int j = 0; j < dim; ++j) {
                    std::vector<int> occ = f.states[static_cast<std::size_t>(j)];
                    if (total_quanta(occ) + 1 > cutoff) continue;
                    double amp = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mode)] + 1));
                    occ[static_cast<std::size_t>(mode)]++;
                    auto it = f.index.find(occ);
                    if (it == f.index.end()) continue;
                    ct.emplace_back(it->second, j, amp);
                }
                term = SpMat(from_triplets(ct, dim, dim) * term);
            }
            det_op = det_op + SpMat(sgn * term);
        } while (std::next_permutation(perm.begin(), perm.end()));

        Vec vac = Vec::Zero(dim);
        std::vector<int> zero_occ(static_cast<std::size_t>(f.modes()), 0);
        vac(f.index.at(zero_occ)) = 1.0;
        Vec w = vac;
        for (int k = 0; k < n_rep; ++k) w = det_op * w;
        double nrm = w.norm();
        if (nrm == 0.0) throw CutoffTooLarge("lowest-weight state truncated away");
        w /= nrm;
        Vec nw = nhat * w;
        rep.nhat_eigenvalue = w.dot(nw).real();
        rep.lowest_weight_residual = max_abs(Vec(nw - rep.nhat_eigenvalue * w));
    }

    return rep;
}

} // namespace bergman
