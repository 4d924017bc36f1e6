#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <random>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cplx>;

inline constexpr cplx I_UNIT{0.0, 1.0};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Dense matrix exponential, scaling-and-squaring with a Taylor kernel.
/// Meets ||exp(X)exp(-X) - I||_max <= 1e-12 for ||X|| <= 5.
Mat expm(const Mat& x);

/// exp(A) * v for sparse A via segmented Taylor series (series summed to
/// machine epsilon per segment).
Vec expmv(const SpMat& a, Vec v);

/// Kahan-compensated accumulator; deterministic for a fixed term order.
class KahanSum {
public:
    void add(double term) {
        double y = term - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Deterministic RNG wrapper used by tests, sampling helpers and the CLI.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 42) : eng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    cplx cgaussian() { return {gaussian(), gaussian()}; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Least-squares fit of y = X beta via normal equations; throws on a
/// condition estimate above cond_limit.
Eigen::VectorXd lsq_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        double cond_limit = 1e12);

/// Slope of the ordinary least-squares line through (x_i, y_i).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace bergman
