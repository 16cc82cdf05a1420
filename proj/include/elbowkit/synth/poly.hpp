#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/errors.hpp"
#include "elbowkit/rng.hpp"

namespace elbowkit {

// Polynomial order-selection scenario; inputs are drawn uniformly on
// [-x_scale, x_scale].
struct PolyScenario {
    int N = 100;
    int true_order = 4;
    std::vector<double> coefficients = {4.05, -2.025, -2.225, 0.1, 0.1};
    double sigma_eps = 1.0;
    // inputs on [-4, 4]: wide enough that the small cubic/quartic terms
    // produce error drops comparable to the quadratic one
    double x_scale = 4.0;
    int K = 10;  // max candidate order
};

struct PolyData {
    std::vector<double> x, y;
};

inline PolyData gen_poly(const PolyScenario& s, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PolyData d;
    d.x.resize(s.N);
    d.y.resize(s.N);
    for (int n = 0; n < s.N; ++n) d.x[n] = rng.uniform(-s.x_scale, s.x_scale);
    for (int n = 0; n < s.N; ++n) {
        double acc = 0.0, pw = 1.0;
        for (double c : s.coefficients) {
            acc += c * pw;
            pw *= d.x[n];
        }
        d.y[n] = acc + s.sigma_eps * rng.gaussian();
    }
    return d;
}

namespace detail {

// Vandermonde in the scaled variable t = x / x_scale; keeps the monomial
// basis conditioned up to order ~10.
inline Eigen::MatrixXd scaled_design(const std::vector<double>& x, int order,
                                     double x_scale) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd X(n, order + 1);
    for (int i = 0; i < n; ++i) {
        const double t = x[i] / x_scale;
        double pw = 1.0;
        for (int j = 0; j <= order; ++j) {
            X(i, j) = pw;
            pw *= t;
        }
    }
    return X;
}

}  // namespace detail

// OLS fit of monomials 0..order, coefficients reported in the raw x basis.
inline std::vector<double> fit_polynomial(const PolyData& d, int order,
                                          double x_scale = 4.0) {
    const Eigen::MatrixXd X = detail::scaled_design(d.x, order, x_scale);
    Eigen::Map<const Eigen::VectorXd> y(d.y.data(), d.y.size());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < order + 1)
        throw SingularFitError("rank-deficient polynomial design matrix");
    const Eigen::VectorXd b = qr.solve(y);
    std::vector<double> coef(order + 1);
    double scale = 1.0;
    for (int j = 0; j <= order; ++j) {
        coef[j] = b(j) / scale;
        scale *= x_scale;
    }
    return coef;
}

// V(k) = N log(RSS_k / N) for OLS fits of order k = 0..K (Gaussian profile
// likelihood up to an additive constant, which cancels under normalization
// and in criterion differences).
inline ErrorCurve poly_v_curve(const PolyData& d, int K,
                               double x_scale = 4.0) {
    const int n = static_cast<int>(d.x.size());
    if (n <= K + 1) throw Error("too few samples for order K");
    Eigen::Map<const Eigen::VectorXd> y(d.y.data(), d.y.size());
    const double floor = 1e-300 * n;
    std::vector<double> v(K + 1);
    for (int k = 0; k <= K; ++k) {
        const Eigen::MatrixXd X = detail::scaled_design(d.x, k, x_scale);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        if (qr.rank() < k + 1)
            throw SingularFitError("rank-deficient design at order " +
                                   std::to_string(k));
        const double rss = (y - X * qr.solve(y)).squaredNorm();
        v[k] = n * std::log(std::max(rss, floor) / n);
    }
    return validate(v);
}

}  // namespace elbowkit
