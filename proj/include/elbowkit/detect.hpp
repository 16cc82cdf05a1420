#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/errors.hpp"

namespace elbowkit {

enum class CriterionKind { Uaed, Bic, Aic, Hqic, CustomLambda, AlphaUaed };

// A penalty-slope policy for the cost C(k) = V(k) + lambda * k.
struct Criterion {
    CriterionKind kind = CriterionKind::Uaed;
    long n_data = 0;      // BIC/HQIC
    double lambda = 0.0;  // CustomLambda
    double alpha = 0.5;   // AlphaUaed, in [0,1]

    static Criterion uaed() { return {CriterionKind::Uaed}; }
    static Criterion bic(long n) { return {CriterionKind::Bic, n}; }
    static Criterion aic() { return {CriterionKind::Aic}; }
    static Criterion hqic(long n) { return {CriterionKind::Hqic, n}; }
    static Criterion custom(double lambda) {
        return {CriterionKind::CustomLambda, 0, lambda};
    }
    static Criterion alpha_uaed(double a) {
        return {CriterionKind::AlphaUaed, 0, 0.0, a};
    }

    const char* name() const {
        switch (kind) {
            case CriterionKind::Uaed: return "uaed";
            case CriterionKind::Bic: return "bic";
            case CriterionKind::Aic: return "aic";
            case CriterionKind::Hqic: return "hqic";
            case CriterionKind::CustomLambda: return "lambda";
            case CriterionKind::AlphaUaed: return "alpha-uaed";
        }
        return "?";
    }
};

struct ElbowResult {
    long k_star = 0;              // includes the curve's k_offset
    std::vector<double> costs;    // C(0..k_max), internal indexing
    std::vector<long> ties;       // ascending, include k_offset; k_star == ties.back()
    double lambda_used = 0.0;
};

// The slope lambda of the linear complexity penalty.  UAED-family slopes
// need k_max >= 1; callers must short-circuit constant curves to k* = 0
// before asking for a slope.
inline double penalty_slope(const Criterion& crit, const NormalizedCurve& nc) {
    switch (crit.kind) {
        case CriterionKind::Uaed:
            if (nc.k_max == 0)
                throw DegenerateCurveError("k_max == 0: constant curve");
            return nc.v0 / static_cast<double>(nc.k_max);
        case CriterionKind::Bic:
            if (crit.n_data < 1)
                throw InvalidNError("BIC requires n_data >= 1");
            return std::log(static_cast<double>(crit.n_data));
        case CriterionKind::Aic:
            return 2.0;
        case CriterionKind::Hqic:
            // N = 2 would give log(log 2) < 0, a negative penalty.
            if (crit.n_data < 3)
                throw InvalidNError("HQIC requires n_data >= 3");
            return std::log(std::log(static_cast<double>(crit.n_data)));
        case CriterionKind::CustomLambda:
            if (crit.lambda < 0.0) throw Error("lambda must be >= 0");
            return crit.lambda;
        case CriterionKind::AlphaUaed: {
            if (crit.alpha < 0.0 || crit.alpha > 1.0)
                throw Error("alpha must be in [0,1]");
            if (crit.alpha == 0.0)
                throw Error("alpha == 0 is handled by the decision rule");
            if (nc.k_max == 0)
                throw DegenerateCurveError("k_max == 0: constant curve");
            return (1.0 - crit.alpha) / crit.alpha * nc.v0 /
                   static_cast<double>(nc.k_max);
        }
    }
    throw Error("unknown criterion");
}

// C(k) = V(k) + lambda * k for k = 0..k_max.
inline std::vector<double> cost_vector(const NormalizedCurve& nc,
                                       double lambda) {
    if (lambda < 0.0) throw Error("lambda must be >= 0");
    std::vector<double> costs(nc.k_max + 1);
    for (std::size_t k = 0; k <= nc.k_max; ++k)
        costs[k] = nc.values[k] + lambda * static_cast<double>(k);
    return costs;
}

// Relative band on the cost range so the straight-line case reliably yields
// its full tie set.
inline double tie_tolerance(std::span<const double> costs) {
    const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    return std::max(1e-9 * (*hi - *lo), 1e-12);
}

namespace detail {

// Minimizers of `costs` within tie_tolerance, largest one picked as k*.
inline ElbowResult pick_min(std::vector<double> costs, double lambda_used,
                            long k_offset) {
    ElbowResult r;
    r.lambda_used = lambda_used;
    const double best = *std::min_element(costs.begin(), costs.end());
    const double tol = tie_tolerance(costs);
    for (std::size_t k = 0; k < costs.size(); ++k)
        if (costs[k] <= best + tol) r.ties.push_back(static_cast<long>(k) + k_offset);
    r.k_star = r.ties.back();
    r.costs = std::move(costs);
    return r;
}

}  // namespace detail

// k* = argmin_k C(k) over 0..k_max; ties resolved to the largest minimizer.
inline ElbowResult elbow(const NormalizedCurve& nc, const Criterion& crit) {
    const bool uaed_family = crit.kind == CriterionKind::Uaed ||
                             crit.kind == CriterionKind::AlphaUaed;
    if (nc.k_max == 0 && uaed_family) {
        ElbowResult r;
        r.k_star = nc.k_offset;
        r.costs = {0.0};
        r.ties = {nc.k_offset};
        r.lambda_used = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    if (crit.kind == CriterionKind::AlphaUaed) {
        if (crit.alpha < 0.0 || crit.alpha > 1.0)
            throw Error("alpha must be in [0,1]");
        if (crit.alpha == 0.0) {  // all priority on model size
            ElbowResult r;
            r.k_star = nc.k_offset;
            r.ties = {nc.k_offset};
            r.costs = {nc.values[0]};
            r.lambda_used = std::numeric_limits<double>::infinity();
            return r;
        }
        // alpha == 1 reduces to lambda = 0, whose unique minimizer on
        // 0..k_max is k_max; no special case needed.
    }
    const double lambda = penalty_slope(crit, nc);
    return detail::pick_min(cost_vector(nc, lambda), lambda, nc.k_offset);
}

inline ElbowResult elbow_on_raw(std::span<const double> raw,
                                const Criterion& crit, double tol) {
    return elbow(normalize(validate(raw, tol)), crit);
}

inline ElbowResult elbow_on_raw(std::span<const double> raw,
                                const Criterion& crit) {
    return elbow(normalize(validate(raw)), crit);
}

}  // namespace elbowkit
