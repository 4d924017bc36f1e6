#include "bergman/linalg.hpp"

#include "bergman/errors.hpp"

#include <cmath>

namespace bergman {

Mat expm(const Mat& x) {
    const Eigen::Index n = x.rows();
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff(); // inf-norm
    int squarings = 0;
    if (norm > 0.25) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    }
    Mat a = x / std::pow(2.0, squarings);

    Mat result = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = (term * a) / static_cast<double>(k);
        result += term;
        if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(result))) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Vec expmv(const SpMat& a, Vec v) {
    const double norm1 = [&] {
        std::vector<double> colsum(a.cols(), 0.0);
        for (int k = 0; k < a.outerSize(); ++k)
            for (SpMat::InnerIterator it(a, k); it; ++it)
                colsum[it.col()] += std::abs(it.value());
        double m = 0.0;
        for (double c : colsum) m = std::max(m, c);
        return m;
    }();

    const double theta = 4.0;
    const int segments = std::max(1, static_cast<int>(std::ceil(norm1 / theta)));
    const double inv = 1.0 / segments;

    for (int s = 0; s < segments; ++s) {
        Vec term = v;
        double vnorm = max_abs(v);
        for (int k = 1; k <= 64; ++k) {
            term = (a * term) * (inv / k);
            v += term;
            double tnorm = max_abs(term);
            if (tnorm < 1e-18 * std::max(vnorm, max_abs(v))) break;
        }
    }
    return v;
}

Eigen::VectorXd lsq_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        double cond_limit) {
    if (x.rows() < x.cols()) {
        throw FitIllConditioned("least-squares system is underdetermined");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > cond_limit) {
        throw FitIllConditioned("least-squares design matrix condition exceeds limit");
    }
    return svd.solve(y);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace bergman
