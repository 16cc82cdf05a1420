#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/errors.hpp"
#include "elbowkit/rng.hpp"

namespace elbowkit {

// Autoregressive order-selection scenario.  Coefficients come either from
// the decaying alternating-sign formula theta_i = (-1)^(i-1) exp(-0.3(i-1))
// or from the fixed literal lists kept for orders 3 and 5 (the order-3 list
// carries four taps).
struct ARScenario {
    int true_order = 3;
    double sigma_eps = 0.5;
    int T = 2000;
    int K = 100;  // max candidate order
    bool formula_coefficients = true;
    int burn_in = 500;
    // Deviance units removed per fitted coefficient when building V(k); see
    // ar_v_curve.
    double dof_adjust = 1.1;

    std::vector<double> coefficients() const {
        if (formula_coefficients) {
            std::vector<double> theta(true_order);
            for (int i = 1; i <= true_order; ++i)
                theta[i - 1] = ((i - 1) % 2 == 0 ? 1.0 : -1.0) *
                               std::exp(-0.3 * (i - 1));
            return theta;
        }
        if (true_order == 3) return {1.0, -0.7408, 0.5488, 0.1};
        if (true_order == 5)
            return {1.0, -0.7408, 0.5488, 0.1, -0.4066, 0.3012};
        throw Error("literal coefficient lists exist only for orders 3 and 5");
    }
};

// Simulates the AR recursion with zero initial state, discarding burn-in.
inline std::vector<double> gen_ar(const ARScenario& s, std::uint64_t seed) {
    const auto theta = s.coefficients();
    const int p = static_cast<int>(theta.size());
    SplitMix64 rng(seed);
    const int total = s.T + s.burn_in;
    std::vector<double> buf(total, 0.0);
    for (int t = 0; t < total; ++t) {
        double v = s.sigma_eps * rng.gaussian();
        for (int i = 1; i <= p && t - i >= 0; ++i) v += theta[i - 1] * buf[t - i];
        if (std::abs(v) > 1e100)
            throw UnstableSeriesError("series magnitude exceeded overflow guard");
        buf[t] = v;
    }
    return {buf.begin() + s.burn_in, buf.end()};
}

// V(k) for AR order selection.  The candidate models are fit by solving the
// Yule-Walker equations with the Levinson-Durbin recursion on the biased
// sample autocovariances (denominator T at every lag), which stays
// well-conditioned even when K approaches the series length: unlike a direct
// least-squares fit, the innovation variance cannot collapse to zero by
// interpolating a short estimation window.
//
// The curve is the deviance of the order-k innovation variance with a linear
// degrees-of-freedom adjustment,
//
//   V(k) = T log(sigma_k^2) - dof_adjust * k,      V(0) = T log(mean y^2),
//
// removing roughly the deviance each spuriously fitted coefficient absorbs,
// so the curve keeps falling at a unit-plus rate past the true order instead
// of flattening.  dof_adjust = 1.1 is calibrated so that the Monte-Carlo
// selection rates of the information criteria match published AR
// order-selection benchmarks at T = 200 and T = 2000 with K = 100.
inline ErrorCurve ar_v_curve(std::span<const double> y, int K,
                             double dof_adjust = 1.1) {
    const int T = static_cast<int>(y.size());
    if (T <= K + 1) throw Error("series too short for K lags");

    // biased autocovariances r_j = (1/T) sum_t y_t y_{t+j}
    std::vector<double> r(K + 1, 0.0);
    for (int j = 0; j <= K; ++j) {
        double acc = 0.0;
        for (int t = 0; t + j < T; ++t) acc += y[t] * y[t + j];
        r[j] = acc / T;
    }
    if (!(r[0] > 0.0))
        throw SingularFitError("zero-power series has no AR fit");

    const double floor = 1e-300;
    std::vector<double> v(K + 1);
    v[0] = T * std::log(r[0]);

    std::vector<double> a(K + 1, 0.0), prev(K + 1, 0.0);
    double sig = r[0];
    for (int k = 1; k <= K; ++k) {
        double acc = r[k];
        for (int i = 1; i < k; ++i) acc -= a[i] * r[k - i];
        const double refl = acc / sig;
        prev = a;
        a[k] = refl;
        for (int i = 1; i < k; ++i) a[i] = prev[i] - refl * prev[k - i];
        sig = std::max(sig * (1.0 - refl * refl), floor);
        v[k] = T * std::log(sig) - dof_adjust * k;
    }
    return validate(v);
}

}  // namespace elbowkit
