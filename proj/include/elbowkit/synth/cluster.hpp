#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/errors.hpp"
#include "elbowkit/rng.hpp"

namespace elbowkit {

using Point2 = std::array<double, 2>;

// Mixture of five bivariate Gaussians used for the cluster-count experiment.
struct MixtureScenario {
    int n_points = 2500;
    int K = 50;         // max cluster index; k clusters = index + 1
    int restarts = 200; // averaging runs per cluster count

    struct Component {
        Point2 mean;
        std::array<double, 3> cov;  // sxx, sxy, syy (symmetric PD)
    };
    std::vector<Component> components = {
        {{3.0, 0.0}, {0.3, 0.0, 2.0}},
        {{14.0, 5.0}, {1.5, 0.7, 1.5}},
        {{-5.0, -10.0}, {1.5, 0.7, 1.5}},
        {{10.0, -10.0}, {1.5, 0.0, 1.5}},
        {{-5.0, 5.0}, {1.0, -0.8, 1.0}},
    };
};

inline std::vector<Point2> gen_mixture(const MixtureScenario& s,
                                       std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Point2> pts(s.n_points);
    for (auto& p : pts) {
        const auto& c = s.components[rng.below(s.components.size())];
        // 2x2 Cholesky of [sxx sxy; sxy syy]
        const double l11 = std::sqrt(c.cov[0]);
        const double l21 = c.cov[1] / l11;
        const double l22 = std::sqrt(c.cov[2] - l21 * l21);
        const double g1 = rng.gaussian(), g2 = rng.gaussian();
        p[0] = c.mean[0] + l11 * g1;
        p[1] = c.mean[1] + l21 * g1 + l22 * g2;
    }
    return pts;
}

struct KMeansResult {
    std::vector<int> assignment;
    double inner_variance_sum = 0.0;  // sum over clusters of var(j)
};

// Lloyd's algorithm from k-means++ seeding, run to an assignment fixpoint or
// the iteration cap.  An emptied cluster is re-seeded at the point farthest
// from its current centroid.
inline KMeansResult kmeans(std::span<const Point2> points, int k,
                           std::uint64_t seed, int max_iters = 300) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw Error("no points");
    if (k < 1) throw Error("k must be >= 1");
    if (k > n) k = n;

    SplitMix64 rng(seed);
    std::vector<Point2> centroids(k);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());

    // k-means++ seeding
    centroids[0] = points[rng.below(n)];
    for (int j = 1; j < k; ++j) {
        double total = 0.0;
        const auto& c = centroids[j - 1];
        for (int i = 0; i < n; ++i) {
            const double dx = points[i][0] - c[0], dy = points[i][1] - c[1];
            d2[i] = std::min(d2[i], dx * dx + dy * dy);
            total += d2[i];
        }
        if (total <= 0.0) {  // all remaining points coincide with a centroid
            centroids[j] = points[rng.below(n)];
            continue;
        }
        double target = rng.uniform() * total;
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            target -= d2[i];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centroids[j] = points[pick];
    }

    std::vector<int> assign(n, -1);
    std::vector<int> counts(k);
    std::vector<Point2> sums(k);
    for (int it = 0; it < max_iters; ++it) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int bj = 0;
            for (int j = 0; j < k; ++j) {
                const double dx = points[i][0] - centroids[j][0];
                const double dy = points[i][1] - centroids[j][1];
                const double d = dx * dx + dy * dy;
                if (d < best) {
                    best = d;
                    bj = j;
                }
            }
            if (assign[i] != bj) {
                assign[i] = bj;
                changed = true;
            }
        }
        if (!changed && it > 0) break;

        std::fill(counts.begin(), counts.end(), 0);
        std::fill(sums.begin(), sums.end(), Point2{0.0, 0.0});
        for (int i = 0; i < n; ++i) {
            counts[assign[i]]++;
            sums[assign[i]][0] += points[i][0];
            sums[assign[i]][1] += points[i][1];
        }
        for (int j = 0; j < k; ++j) {
            if (counts[j] == 0) {
                // farthest point from its own centroid takes over
                double far_d = -1.0;
                int far_i = 0;
                for (int i = 0; i < n; ++i) {
                    const auto& c = centroids[assign[i]];
                    const double dx = points[i][0] - c[0];
                    const double dy = points[i][1] - c[1];
                    const double d = dx * dx + dy * dy;
                    if (d > far_d) {
                        far_d = d;
                        far_i = i;
                    }
                }
                centroids[j] = points[far_i];
                changed = true;
            } else {
                centroids[j][0] = sums[j][0] / counts[j];
                centroids[j][1] = sums[j][1] / counts[j];
            }
        }
        if (!changed) break;
    }

    // within-cluster variance: mean squared distance to the cluster centroid
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(sums.begin(), sums.end(), Point2{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        counts[assign[i]]++;
        sums[assign[i]][0] += points[i][0];
        sums[assign[i]][1] += points[i][1];
    }
    KMeansResult res;
    res.assignment = assign;
    for (int j = 0; j < k; ++j) {
        if (counts[j] == 0) continue;
        const double mx = sums[j][0] / counts[j], my = sums[j][1] / counts[j];
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (assign[i] != j) continue;
            const double dx = points[i][0] - mx, dy = points[i][1] - my;
            acc += dx * dx + dy * dy;
        }
        res.inner_variance_sum += acc / counts[j];
    }
    return res;
}

// V(k) = log of the average (over `runs` restarts) of the within-cluster
// variance sum with k+1 clusters, for k = 0..K.  tol_scale widens the
// monotonicity tolerance relative to the curve's drop: restart averaging
// leaves Monte-Carlo noise that the default band would reject.
inline ErrorCurve cluster_v_curve(std::span<const Point2> points, int K,
                                  int runs, std::uint64_t seed,
                                  double tol_scale = 0.05) {
    if (K < 0 || runs < 1) throw Error("need K >= 0 and runs >= 1");
    std::vector<double> v(K + 1);
    for (int k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (int r = 0; r < runs; ++r)
            acc += kmeans(points, k + 1,
                          derive_seed(seed, static_cast<std::uint64_t>(k) * runs + r))
                       .inner_variance_sum;
        v[k] = std::log(acc / runs);
    }
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return validate(v, std::max(tol_scale * (*hi - *lo), 1e-12));
}

}  // namespace elbowkit
