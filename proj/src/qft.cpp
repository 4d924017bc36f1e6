#include "bergman/qft.hpp"

#include "bergman/errors.hpp"
#include "bergman/linalg.hpp"

#include <cmath>
#include <limits>

namespace bergman {

std::string to_string(RegulatorMode mode) {
    return mode == RegulatorMode::lower_cutoff ? "lower_cutoff" : "mass_shift";
}

RegulatorMode regulator_mode_from_string(const std::string& s) {
    if (s == "lower_cutoff") return RegulatorMode::lower_cutoff;
    if (s == "mass_shift") return RegulatorMode::mass_shift;
    throw ConfigInvalid("unknown regulator mode: " + s);
}

namespace {

double denom(int n, int l, double mu2, double xi_c) {
    return static_cast<double>(l) * (n - 2) - static_cast<double>(l) * l + mu2 -
           3.0 * xi_c;
}

} // namespace

double propagator(int n, int l, const FieldParams& p) {
    if (l < 0 || l > (n - 2) / 2) throw ConfigInvalid("mode index outside the discrete range");
    double d = denom(n, l, p.mu2, p.xi_c);
    if (std::abs(d) < 1e-14) {
        throw PoleHit("propagator pole at N=" + std::to_string(n) +
                      " l=" + std::to_string(l));
    }
    return 1.0 / d;
}

PositivityReport positivity_domain(const FieldParams& p, int n_min, int n_max) {
    PositivityReport rep;
    rep.min_denom = std::numeric_limits<double>::infinity();
    for (int n = n_min; n <= n_max; ++n)
        for (int l = 0; l <= (n - 2) / 2; ++l) {
            double d = denom(n, l, p.mu2, p.xi_c);
            rep.entries.push_back({n, l, d});
            if (std::abs(d) < 1e-14) {
                ++rep.zero;
            } else if (d < 0) {
                ++rep.negative;
            }
            rep.min_denom = std::min(rep.min_denom, d);
        }
    return rep;
}

TadpoleResult tadpole_direct(const FieldParams& p) {
    if (p.lambda_cut < 3) throw ConfigInvalid("Lambda must be >= 3");
    TadpoleResult out;
    out.mode = p.mode;
    out.massless = (p.mu2 == 0.0);
    KahanSum total;
    out.per_n_terms.reserve(static_cast<std::size_t>(p.lambda_cut) - 2);
    for (int n = 3; n <= p.lambda_cut; ++n) {
        KahanSum nsum;
        int l_start = 0;
        if (out.massless && p.mode == RegulatorMode::lower_cutoff) {
            nsum.add(std::log(1.0 / p.eps) / (n - 2));
            l_start = 1;
        }
        double mu2 = p.mu2;
        if (out.massless && p.mode == RegulatorMode::mass_shift) mu2 = p.eps * p.eps;
        for (int l = l_start; l <= (n - 2) / 2; ++l) {
            double d = denom(n, l, mu2, p.xi_c);
            if (std::abs(d) < 1e-14) {
                throw PoleHit("unregulated massless mode at N=" + std::to_string(n) +
                              " l=" + std::to_string(l));
            }
            nsum.add(1.0 / d);
        }
        double term = p.lambda_c * nsum.value() / n;
        out.per_n_terms.emplace_back(n, term);
        total.add(term);
    }
    out.direct_sum = total.value();
    out.closed_form = out.massless ? tadpole_closed_form(p)
                                   : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double tadpole_closed_form(const FieldParams& p) {
    KahanSum total;
    for (int n = 3; n <= p.lambda_cut; ++n) {
        total.add((std::log(static_cast<double>(n - 2)) - std::log(p.eps)) /
                  (static_cast<double>(n) * (n - 2)));
    }
    return p.lambda_c * total.value();
}

EpsSlopeFit eps_divergence_slope(const FieldParams& base,
                                 const std::vector<double>& eps_grid) {
    std::vector<double> x, y;
    for (double e : eps_grid) {
        FieldParams p = base;
        p.eps = e;
        x.push_back(std::log(1.0 / e));
        y.push_back(tadpole_closed_form(p));
    }
    EpsSlopeFit fit{};
    fit.slope = fit_slope(x, y);
    KahanSum target;
    for (int n = 3; n <= base.lambda_cut; ++n)
        target.add(1.0 / (static_cast<double>(n) * (n - 2)));
    fit.target = base.lambda_c * target.value();
    fit.rel_gap = std::abs(fit.slope - fit.target) / std::abs(fit.target);
    return fit;
}

FinitenessScan finiteness_scan(const FieldParams& base, double c,
                               const std::vector<int>& lambda_grid,
                               int direct_cap) {
    FinitenessScan scan;
    for (int cut : lambda_grid) {
        FieldParams p = base;
        p.lambda_cut = cut;
        p.eps = c / cut;
        p.mu2 = 0.0;
        FinitenessPoint pt{};
        pt.lambda_cut = cut;
        pt.eps = p.eps;
        pt.closed = tadpole_closed_form(p);
        pt.has_direct = cut <= direct_cap;
        pt.direct = pt.has_direct ? tadpole_direct(p).direct_sum
                                  : std::numeric_limits<double>::quiet_NaN();
        scan.max_closed = std::max(scan.max_closed, std::abs(pt.closed));
        scan.hypothesis_gap.push_back(std::abs(
            pt.closed - base.lambda_c * (1.0 - std::log(static_cast<double>(cut)) / cut -
                                         1.0 / cut)));
        scan.points.push_back(pt);
    }
    return scan;
}

} // namespace bergman
