#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "elbowkit/detect.hpp"
#include "elbowkit/errors.hpp"
#include "elbowkit/rng.hpp"
#include "elbowkit/synth/ar.hpp"
#include "elbowkit/synth/cluster.hpp"
#include "elbowkit/synth/poly.hpp"

namespace elbowkit {

enum class ExperimentKind { Ar, Poly, Cluster };

inline const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Ar: return "ar";
        case ExperimentKind::Poly: return "poly";
        case ExperimentKind::Cluster: return "cluster";
    }
    return "?";
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Ar;
    ARScenario ar;
    PolyScenario poly;
    MixtureScenario mixture;
    std::vector<Criterion> methods = {Criterion::uaed()};
    int runs = 1000;
    std::uint64_t base_seed = 0;
    int threads = 0;  // 0 = auto (hardware, capped by ELBOWKIT_THREADS)

    int max_k() const {
        switch (kind) {
            case ExperimentKind::Ar: return ar.K;
            case ExperimentKind::Poly: return poly.K;
            case ExperimentKind::Cluster: return mixture.K;
        }
        return 0;
    }

    // index of the correct decision in the histogram
    int true_k() const {
        switch (kind) {
            case ExperimentKind::Ar: return ar.true_order;
            case ExperimentKind::Poly: return poly.true_order;
            case ExperimentKind::Cluster:
                return static_cast<int>(mixture.components.size()) - 1;
        }
        return 0;
    }
};

// Best: highest p_A in the experiment; the rest bucket by rate.
inline std::string ranking_label(double p_a, bool is_best) {
    if (p_a < 0.0 || p_a > 1.0) throw Error("p_A must be in [0,1]");
    if (is_best) return "Best";
    if (p_a >= 0.95) return "Excellent";
    if (p_a >= 0.80) return "Good";
    if (p_a >= 0.50) return "Fair";
    if (p_a >= 0.20) return "Poor";
    if (p_a >= 0.10) return "Bad";
    return "Very bad";
}

struct MethodReport {
    std::string name;
    std::vector<long> histogram;  // counts over k = 0..max_k, sum == runs
    double p_a = 0.0;
    std::string label;
    bool best = false;
};

struct ExperimentReport {
    int schema_version = 1;
    ExperimentConfig config;
    std::vector<MethodReport> methods;
    double duration_seconds = 0.0;
};

namespace detail {

inline int resolve_threads(int requested, int runs) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    if (const char* env = std::getenv("ELBOWKIT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, std::min(n, runs));
}

// one run: generate data with the derived seed, build V(k), decide per method
inline std::vector<int> single_run(const ExperimentConfig& cfg,
                                   std::uint64_t seed) {
    ErrorCurve curve;
    switch (cfg.kind) {
        case ExperimentKind::Ar:
            curve = ar_v_curve(gen_ar(cfg.ar, seed), cfg.ar.K,
                               cfg.ar.dof_adjust);
            break;
        case ExperimentKind::Poly:
            curve = poly_v_curve(gen_poly(cfg.poly, seed), cfg.poly.K,
                                 cfg.poly.x_scale);
            break;
        case ExperimentKind::Cluster: {
            const auto pts = gen_mixture(cfg.mixture, seed);
            curve = cluster_v_curve(pts, cfg.mixture.K, cfg.mixture.restarts,
                                    derive_seed(seed, 1));
            break;
        }
    }
    const auto nc = normalize(curve);
    std::vector<int> decisions;
    decisions.reserve(cfg.methods.size());
    for (const auto& m : cfg.methods)
        decisions.push_back(static_cast<int>(elbow(nc, m).k_star));
    return decisions;
}

}  // namespace detail

// Runs the Monte-Carlo experiment.  Runs are independent with per-run
// derived seeds and results are aggregated by run index, so the report does
// not depend on the worker count.  A failed run aborts the experiment with
// its seed in the message.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw Error("runs must be >= 1");
    if (cfg.methods.empty()) throw Error("method list is empty");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<std::vector<int>> decisions(cfg.runs);
    const int workers = detail::resolve_threads(cfg.threads, cfg.runs);

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::uint64_t failed_seed = 0;
    auto worker = [&](int w) {
        for (int r = w; r < cfg.runs; r += workers) {
            const std::uint64_t seed = derive_seed(cfg.base_seed, r);
            try {
                decisions[r] = detail::single_run(cfg, seed);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                    failed_seed = seed;
                }
                return;
            }
        }
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw Error("run with seed " + std::to_string(failed_seed) +
                        " failed: " + e.what());
        }
    }

    ExperimentReport rep;
    rep.config = cfg;
    const int K = cfg.max_k();
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        MethodReport mr;
        mr.name = cfg.methods[m].name();
        mr.histogram.assign(K + 1, 0);
        for (int r = 0; r < cfg.runs; ++r) {
            const int k = decisions[r][m];
            if (k < 0 || k > K) throw Error("decision out of range");
            mr.histogram[k]++;
        }
        mr.p_a = static_cast<double>(mr.histogram[cfg.true_k()]) / cfg.runs;
        rep.methods.push_back(std::move(mr));
    }
    double best_pa = 0.0;
    for (const auto& m : rep.methods) best_pa = std::max(best_pa, m.p_a);
    for (auto& m : rep.methods) {
        m.best = m.p_a == best_pa;
        m.label = ranking_label(m.p_a, m.best);
    }
    rep.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

// Stable-field-order JSON; the duration field is the only nondeterministic
// part and can be omitted for byte-compare tests.
inline nlohmann::ordered_json report_to_json(const ExperimentReport& rep,
                                             bool include_duration = true) {
    nlohmann::ordered_json j;
    j["schema_version"] = rep.schema_version;
    j["experiment"] = experiment_name(rep.config.kind);
    nlohmann::ordered_json sc;
    switch (rep.config.kind) {
        case ExperimentKind::Ar:
            sc["true_order"] = rep.config.ar.true_order;
            sc["sigma_eps"] = rep.config.ar.sigma_eps;
            sc["T"] = rep.config.ar.T;
            sc["K"] = rep.config.ar.K;
            sc["formula_coefficients"] = rep.config.ar.formula_coefficients;
            break;
        case ExperimentKind::Poly:
            sc["N"] = rep.config.poly.N;
            sc["true_order"] = rep.config.poly.true_order;
            sc["sigma_eps"] = rep.config.poly.sigma_eps;
            sc["K"] = rep.config.poly.K;
            break;
        case ExperimentKind::Cluster:
            sc["n_points"] = rep.config.mixture.n_points;
            sc["components"] = rep.config.mixture.components.size();
            sc["K"] = rep.config.mixture.K;
            sc["restarts"] = rep.config.mixture.restarts;
            break;
    }
    j["scenario"] = sc;
    j["runs"] = rep.config.runs;
    j["base_seed"] = rep.config.base_seed;
    j["true_k"] = rep.config.true_k();
    j["methods"] = nlohmann::ordered_json::array();
    for (const auto& m : rep.methods) {
        nlohmann::ordered_json mj;
        mj["name"] = m.name;
        mj["p_a"] = m.p_a;
        mj["label"] = m.label;
        mj["best"] = m.best;
        mj["histogram"] = m.histogram;
        j["methods"].push_back(mj);
    }
    if (include_duration) j["duration_seconds"] = rep.duration_seconds;
    return j;
}

// columns: k, then one count column per method
inline std::string histogram_to_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "k";
    for (const auto& m : rep.methods) out << "," << m.name;
    out << "\n";
    const std::size_t rows = rep.methods.front().histogram.size();
    for (std::size_t k = 0; k < rows; ++k) {
        out << k;
        for (const auto& m : rep.methods) out << "," << m.histogram[k];
        out << "\n";
    }
    return out.str();
}

}  // namespace elbowkit
