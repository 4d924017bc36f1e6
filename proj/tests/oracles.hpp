// Independent oracles used by the unit and acceptance tests. Everything here
// deliberately avoids the library's implementation paths: plain Taylor series
// for the exponential, log1p-based finite differences for the metric, int64
// rational arithmetic for the hypergeometric sums, and a separately
// enumerated Fock space for the representation checks.
#pragma once

#include "bergman/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

using bergman::cplx;
using bergman::Mat;
using bergman::Vec;

// Plain Taylor series, no scaling and squaring; adequate for ||X|| <~ 1.
inline Mat expm_series(const Mat& x, int terms = 60) {
    Mat acc = Mat::Identity(x.rows(), x.cols());
    Mat term = acc;
    for (int k = 1; k <= terms; ++k) {
        term = (term * x) / static_cast<double>(k);
        acc += term;
    }
    return acc;
}

// Mixed Hessian (1/N) d_{z_i} d_{zbar_j} log K(Z^dagger, Z) for the ball
// kernel K = (1 - |Z|^2)^{-N}, central differences at step h. The difference
// u(Z + dz) - u(Z) is evaluated through log1p of an exactly-expanded inner
// product so the stencil is immune to the usual second-derivative
// cancellation at small h.
inline Mat numerical_metric(const Vec& z, double h = 1e-5) {
    const int m = static_cast<int>(z.size());
    const double om = 1.0 - z.squaredNorm();
    // u(Z + d) - u(Z) with u = -log(1 - |Z|^2), exact small-shift form
    auto du = [&](const Vec& d) {
        cplx cross = z.dot(d); // sum conj(z_i) d_i
        double shift = 2.0 * cross.real() + d.squaredNorm();
        return -std::log1p(-shift / om);
    };
    auto unit = [&](int re_im, int i, double step) {
        Vec d = Vec::Zero(m);
        d(i) = (re_im == 0) ? cplx(step, 0) : cplx(0, step);
        return d;
    };
    // real-coordinate second differences of du (du(0) = 0 at the center)
    auto d2 = [&](const Vec& da, const Vec& db) {
        if ((da - db).norm() == 0.0) {
            return (du(da) + du(-da)) / (da.squaredNorm());
        }
        return (du(da + db) - du(da - db) - du(db - da) + du(-da - db)) /
               (4.0 * da.norm() * db.norm());
    };
    Mat g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double xx = d2(unit(0, i, h), unit(0, j, h));
            double yy = d2(unit(1, i, h), unit(1, j, h));
            double yx = d2(unit(1, i, h), unit(0, j, h));
            double xy = d2(unit(0, i, h), unit(1, j, h));
            // d_{z_i} d_{zbar_j} = (dx_i - i dy_i)(dx_j + i dy_j)/4
            g(i, j) = 0.25 * (cplx(xx, 0) + cplx(yy, 0) + cplx(0, xy) - cplx(0, yx));
        }
    return g;
}

// Minimal exact rational arithmetic on int64 (small operands only).
struct Rational {
    std::int64_t num = 0, den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    Rational operator+(const Rational& o) const {
        return {num * o.den + o.num * den, den * o.den};
    }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    Rational operator/(const Rational& o) const { return {num * o.den, den * o.num}; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Terminating 2F1(a, -l; c; r) for integer a, c and rational r, summed in
// exact arithmetic.
inline Rational hyp2f1_terminating(std::int64_t a, std::int64_t l, std::int64_t c,
                                   const Rational& r) {
    Rational sum{1};
    Rational term{1};
    for (std::int64_t k = 0; k < l; ++k) {
        term = term * Rational(a + k) * Rational(-l + k) / Rational(c + k) /
               Rational(k + 1) * r;
        sum = sum + term;
    }
    return sum;
}

// Discrete radial eigenfunction (1-r)^{-l} 2F1(N-l, -l; m; r), exact.
inline Rational eigenfunction_rational(int n_rep, int l, int m, const Rational& r) {
    Rational f = hyp2f1_terminating(n_rep - l, l, m, r);
    Rational one_minus = Rational(1) + Rational(-1) * r;
    Rational pw{1};
    for (int k = 0; k < l; ++k) pw = pw * one_minus;
    return f / pw;
}

// Independent truncated Fock model: the full three-oscillator space cut by
// total quanta, with the su(1,1)-pair boost built directly from ladder
// amplitudes. Used as the ground-truth oracle for omega0(delta(t)).
struct BruteFock {
    // state = (m1, m2, nb), total quanta m1 + m2 + nb <= cutoff
    std::vector<std::array<int, 3>> states;
    std::map<std::array<int, 3>, int> index;

    explicit BruteFock(int cutoff) {
        for (int m1 = 0; m1 <= cutoff; ++m1)
            for (int m2 = 0; m1 + m2 <= cutoff; ++m2)
                for (int nb = 0; m1 + m2 + nb <= cutoff; ++nb) {
                    index[{m1, m2, nb}] = static_cast<int>(states.size());
                    states.push_back({m1, m2, nb});
                }
    }

    // Xhat_7 = b a_2 - a_2^dagger b^dagger acting on the enumerated basis.
    Mat x7() const {
        const int d = static_cast<int>(states.size());
        Mat m = Mat::Zero(d, d);
        for (int j = 0; j < d; ++j) {
            auto [m1, m2, nb] = states[static_cast<std::size_t>(j)];
            if (m2 > 0 && nb > 0) {
                auto it = index.find({m1, m2 - 1, nb - 1});
                if (it != index.end())
                    m(it->second, j) += std::sqrt(static_cast<double>(m2) * nb);
            }
            auto it2 = index.find({m1, m2 + 1, nb + 1});
            if (it2 != index.end())
                m(it2->second, j) -= std::sqrt(static_cast<double>(m2 + 1) * (nb + 1));
        }
        return m;
    }

    // exp(t Xhat_7)|0,0,N> evolved in small Taylor steps on the vector.
    cplx omega0_delta(int n_rep, double t) const {
        Mat m = t * x7();
        const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
        const int steps = std::max(1, static_cast<int>(std::ceil(norm / 0.3)));
        Mat ms = m / static_cast<double>(steps);
        int i0 = index.at({0, 0, n_rep});
        Vec v = Vec::Zero(static_cast<Eigen::Index>(states.size()));
        v(i0) = 1.0;
        for (int s = 0; s < steps; ++s) {
            Vec term = v;
            for (int k = 1; k <= 40; ++k) {
                term = (ms * term) / static_cast<double>(k);
                v += term;
            }
        }
        return v(i0);
    }
};

} // namespace oracles
