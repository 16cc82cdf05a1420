#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/detect.hpp"
#include "elbowkit/errors.hpp"

namespace elbowkit {

// The straight line from (0, v0) to (k_max, 0).  k_max >= 1 iff v0 > 0 on a
// normalized curve, so one degeneracy check covers both.
struct ChordFrame {
    double v0 = 0.0;
    std::size_t k_max = 0;

    static ChordFrame from(const NormalizedCurve& nc) {
        if (nc.k_max == 0)
            throw DegenerateCurveError("k_max == 0: no chord");
        return {nc.v0, nc.k_max};
    }

    double slope() const { return -v0 / static_cast<double>(k_max); }
    double value_at(double k) const { return v0 + slope() * k; }
    // Note: the paper's extension weight reuses the same Greek letter; this
    // is the chord angle only.
    double chord_angle() const {
        return std::atan(v0 / static_cast<double>(k_max));
    }
};

// Area of the two-segment piecewise-linear approximation through
// (0,V(0)), (k,V(k)), (k_max,0): two triangles plus a rectangle.
inline double area_cost(const NormalizedCurve& nc, std::size_t k) {
    const auto chord = ChordFrame::from(nc);
    const double kd = static_cast<double>(k);
    const double vk = nc.values[k];
    const double a1 = kd * (chord.v0 - vk) / 2.0;
    const double a2 = kd * vk;
    const double a3 = (static_cast<double>(chord.k_max) - kd) * vk / 2.0;
    return a1 + a2 + a3;
}

// d(k) = v(k) - V(k), signed: negative where the curve rises above the chord.
inline double vertical_distance(const NormalizedCurve& nc, std::size_t k) {
    return ChordFrame::from(nc).value_at(static_cast<double>(k)) - nc.values[k];
}

// r(k) = k' - k where k' is the abscissa at which the chord reaches V(k).
inline double horizontal_distance(const NormalizedCurve& nc, std::size_t k) {
    const auto chord = ChordFrame::from(nc);
    const double k_prime = -static_cast<double>(chord.k_max) / chord.v0 *
                           (nc.values[k] - chord.v0);
    return k_prime - static_cast<double>(k);
}

// Point-to-chord distance, signed positive when the point lies below the
// chord.  Computed directly from the line equation rather than via d or r.
inline double euclidean_distance(const NormalizedCurve& nc, std::size_t k) {
    const auto chord = ChordFrame::from(nc);
    const double km = static_cast<double>(chord.k_max);
    const double num = chord.v0 * km - chord.v0 * static_cast<double>(k) -
                       km * nc.values[k];
    return num / std::hypot(chord.v0, km);
}

enum class ElbowMethod { Area, Vertical, Horizontal, Euclidean };

inline const char* method_name(ElbowMethod m) {
    switch (m) {
        case ElbowMethod::Area: return "area";
        case ElbowMethod::Vertical: return "vertical";
        case ElbowMethod::Horizontal: return "horizontal";
        case ElbowMethod::Euclidean: return "euclidean";
    }
    return "?";
}

// Elbow via one of the four derivations.  Area is minimized, the distances
// are maximized; ties go to the largest index.  `costs` holds the method's
// per-k objective.
inline ElbowResult elbow_by(ElbowMethod method, const NormalizedCurve& nc) {
    const auto chord = ChordFrame::from(nc);
    std::vector<double> obj(chord.k_max + 1);
    for (std::size_t k = 0; k <= chord.k_max; ++k) {
        switch (method) {
            case ElbowMethod::Area: obj[k] = area_cost(nc, k); break;
            case ElbowMethod::Vertical: obj[k] = vertical_distance(nc, k); break;
            case ElbowMethod::Horizontal: obj[k] = horizontal_distance(nc, k); break;
            case ElbowMethod::Euclidean: obj[k] = euclidean_distance(nc, k); break;
        }
    }
    // Negate maximization objectives so one min-picker handles all four.
    std::vector<double> costs = obj;
    if (method != ElbowMethod::Area)
        for (auto& v : costs) v = -v;
    auto r = detail::pick_min(std::move(costs), chord.v0 / static_cast<double>(chord.k_max),
                              nc.k_offset);
    r.costs = std::move(obj);
    return r;
}

struct TangentResult {
    double k_star = 0.0;
    bool degenerate = false;  // linear curve: every point is tangent
};

// Continuous counterpart of the elbow: solve df(k*) = -v0/k_max by bisection.
// f must be convex and strictly decreasing with f(0)=v0, f(k_max)=0, so df is
// increasing and the residual df(k) + v0/k_max crosses zero once.
inline TangentResult continuous_tangent_elbow(
    const std::function<double(double)>& /*f*/,
    const std::function<double(double)>& df, double k_max, double v0,
    double tol = 1e-10) {
    if (k_max <= 0.0 || v0 <= 0.0)
        throw DegenerateCurveError("need k_max > 0 and v0 > 0");
    const double target = -v0 / k_max;
    auto residual = [&](double k) { return df(k) - target; };
    double lo = 0.0, hi = k_max;
    double rlo = residual(lo), rhi = residual(hi);
    if (std::abs(rlo) <= tol && std::abs(rhi) <= tol)
        return {k_max / 2.0, true};  // f linear, the whole segment ties
    if (rlo > tol || rhi < -tol)
        throw NoRootError("derivative never crosses the chord slope");
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2.0;
        const double rm = residual(mid);
        if (std::abs(rm) <= tol) return {mid, false};
        if (rm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw NoRootError("bisection did not reach tolerance");
}

}  // namespace elbowkit
