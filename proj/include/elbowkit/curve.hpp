#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "elbowkit/errors.hpp"

namespace elbowkit {

// Non-increasing error curve V(0..K). Index offset supports curves whose
// complexity axis starts at some k_min != 0; it is added back when k* is
// reported.
struct ErrorCurve {
    std::vector<double> values;
    long k_offset = 0;
};

// Curve after subtracting the minimum. values[k] == 0 for k >= k_max and
// values[k] > 0 for k < k_max; v0 = values[0].
struct NormalizedCurve {
    std::vector<double> values;
    std::size_t k_max = 0;
    double v0 = 0.0;
    long k_offset = 0;
};

// Relative tolerance on the curve's total drop, with an absolute floor so
// constant curves still get a nonzero band.
inline double default_tolerance(std::span<const double> raw) {
    if (raw.empty()) return 1e-12;
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    return std::max(1e-9 * (*hi - *lo), 1e-12);
}

// Checks the non-increasing property within tol and clamps small violations
// with a running minimum, so the stored curve is exactly non-increasing.
inline ErrorCurve validate(std::span<const double> raw, double tol,
                           long k_offset = 0) {
    if (raw.empty()) throw EmptyCurveError("empty curve");
    if (tol < 0.0) throw Error("negative tolerance");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]))
            throw NonFiniteError("non-finite value at k=" + std::to_string(i));
    }
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        if (raw[i + 1] - raw[i] > tol)
            throw NonMonotoneError("curve rises at k=" + std::to_string(i + 1) +
                                   " by " + std::to_string(raw[i + 1] - raw[i]));
    }
    ErrorCurve c;
    c.values.assign(raw.begin(), raw.end());
    c.k_offset = k_offset;
    double running_min = c.values.front();
    for (auto& v : c.values) {
        running_min = std::min(running_min, v);
        v = running_min;
    }
    return c;
}

inline ErrorCurve validate(std::span<const double> raw) {
    return validate(raw, default_tolerance(raw));
}

// Subtracts the minimum and finds k_max, the first index attaining it.
// The input is exactly non-increasing, so the comparison is exact.
inline NormalizedCurve normalize(const ErrorCurve& c) {
    NormalizedCurve nc;
    const double vmin = c.values.back();
    nc.values.resize(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i)
        nc.values[i] = c.values[i] - vmin;
    // values.back() == 0 after the subtraction, so this terminates with
    // values[k_max] == 0 exactly.
    nc.k_max = 0;
    while (nc.values[nc.k_max] > 0.0) ++nc.k_max;
    nc.v0 = nc.values.front();
    nc.k_offset = c.k_offset;
    return nc;
}

}  // namespace elbowkit
