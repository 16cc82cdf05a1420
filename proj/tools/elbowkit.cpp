// elbowkit: elbow detection and information-criterion comparison on error
// curves, plus Monte-Carlo reproduction of the synthetic experiments.
//
// Exit codes: 0 success (stdout is JSON), 1 I/O error, 2 validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elbowkit/bench.hpp"
#include "elbowkit/curve.hpp"
#include "elbowkit/curve_file.hpp"
#include "elbowkit/detect.hpp"
#include "elbowkit/errors.hpp"

namespace ek = elbowkit;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

ek::ParsedCurve load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return ek::parse_curve_file(in);
}

ek::ErrorCurve ingest(const ek::ParsedCurve& pc, std::optional<double> tol) {
    const double t = tol ? *tol : ek::default_tolerance(pc.values);
    return ek::validate(pc.values, t, pc.k_offset);
}

void maybe_dump(const ek::ErrorCurve& c, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    ek::write_curve_file(out, c);
}

ordered_json result_json(const ek::ElbowResult& r) {
    ordered_json j;
    j["k_star"] = r.k_star;
    j["ties"] = r.ties;
    j["lambda"] = r.lambda_used;
    j["costs"] = r.costs;
    return j;
}

struct DetectOpts {
    std::string path;
    std::string criterion = "uaed";
    long n = 0;
    double lambda = 0.0;
    double alpha = 0.5;
    std::optional<double> tol;
    std::string dump_curve;
};

ek::Criterion make_criterion(const DetectOpts& o) {
    if (o.criterion == "uaed") return ek::Criterion::uaed();
    if (o.criterion == "aic") return ek::Criterion::aic();
    if (o.criterion == "bic") {
        if (o.n <= 0) throw ek::InvalidNError("--criterion bic requires --n");
        return ek::Criterion::bic(o.n);
    }
    if (o.criterion == "hqic") {
        if (o.n <= 0) throw ek::InvalidNError("--criterion hqic requires --n");
        return ek::Criterion::hqic(o.n);
    }
    if (o.criterion == "lambda") return ek::Criterion::custom(o.lambda);
    if (o.criterion == "alpha-uaed") return ek::Criterion::alpha_uaed(o.alpha);
    throw ek::Error("unknown criterion: " + o.criterion);
}

int cmd_detect(const DetectOpts& o) {
    const auto curve = ingest(load_curve(o.path), o.tol);
    maybe_dump(curve, o.dump_curve);
    const auto res = ek::elbow(ek::normalize(curve), make_criterion(o));
    std::cout << result_json(res).dump(2) << "\n";
    return kExitOk;
}

int cmd_compare(const DetectOpts& o) {
    const auto curve = ingest(load_curve(o.path), o.tol);
    maybe_dump(curve, o.dump_curve);
    const auto nc = ek::normalize(curve);

    std::vector<ek::Criterion> crits = {ek::Criterion::uaed()};
    if (o.n > 0) {
        crits.push_back(ek::Criterion::bic(o.n));
        crits.push_back(ek::Criterion::aic());
        crits.push_back(ek::Criterion::hqic(o.n));
    } else {
        crits.push_back(ek::Criterion::aic());
    }
    if (o.alpha != 0.5) crits.push_back(ek::Criterion::alpha_uaed(o.alpha));

    ordered_json rows = ordered_json::array();
    for (const auto& c : crits) {
        const auto res = ek::elbow(nc, c);
        ordered_json row;
        row["criterion"] = c.name();
        row["lambda"] = res.lambda_used;
        row["k_star"] = res.k_star;
        row["tie"] = res.ties.size() > 1;
        row["ties"] = res.ties;
        rows.push_back(row);
    }
    ordered_json j;
    j["k_max"] = nc.k_max;
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

struct ExperimentOpts {
    std::string kind;
    int order = 3;
    double sigma = 0.5;
    int T = 2000;
    int K = -1;  // -1: per-kind default
    int N = 100;
    int restarts = 200;
    int runs = 1000;
    std::uint64_t seed = 0;
    int threads = 0;
    bool verbatim_coefficients = false;
    std::string out;
};

int cmd_experiment(const ExperimentOpts& o) {
    ek::ExperimentConfig cfg;
    cfg.runs = o.runs;
    cfg.base_seed = o.seed;
    cfg.threads = o.threads;
    if (o.kind == "ar") {
        cfg.kind = ek::ExperimentKind::Ar;
        cfg.ar.true_order = o.order;
        cfg.ar.sigma_eps = o.sigma;
        cfg.ar.T = o.T;
        if (o.K > 0) cfg.ar.K = o.K;
        cfg.ar.formula_coefficients = !o.verbatim_coefficients;
        cfg.methods = {ek::Criterion::uaed(),
                       ek::Criterion::bic(cfg.ar.T),
                       ek::Criterion::aic(),
                       ek::Criterion::hqic(cfg.ar.T)};
    } else if (o.kind == "poly") {
        cfg.kind = ek::ExperimentKind::Poly;
        cfg.poly.N = o.N;
        if (o.K > 0) cfg.poly.K = o.K;
        cfg.methods = {ek::Criterion::uaed(), ek::Criterion::bic(cfg.poly.N),
                       ek::Criterion::aic(), ek::Criterion::hqic(cfg.poly.N)};
    } else if (o.kind == "cluster") {
        cfg.kind = ek::ExperimentKind::Cluster;
        if (o.K > 0) cfg.mixture.K = o.K;
        cfg.mixture.restarts = o.restarts;
        // the log-of-variances curve has no likelihood, so only the
        // chord-based detector applies
        cfg.methods = {ek::Criterion::uaed()};
    } else {
        throw ek::Error("unknown experiment kind: " + o.kind);
    }

    const auto rep = ek::run_experiment(cfg);
    const auto j = ek::report_to_json(rep);

    if (!o.out.empty()) {
        std::ofstream jf(o.out + ".json");
        std::ofstream cf(o.out + ".csv");
        if (!jf || !cf)
            throw std::ios_base::failure("cannot write report files at " + o.out);
        jf << j.dump(2) << "\n";
        cf << ek::histogram_to_csv(rep);
    }

    // human-readable summary goes to stderr; stdout stays machine-readable
    std::fprintf(stderr, "%-12s %-10s %-10s\n", "method", "p_A", "label");
    for (const auto& m : rep.methods)
        std::fprintf(stderr, "%-12s %-10.4f %-10s\n", m.name.c_str(), m.p_a,
                     m.label.c_str());

    std::cout << j.dump(2) << "\n";
    if (o.kind == "cluster") {
        // decision histogram index k means k+1 clusters
        const auto& h = rep.methods.front().histogram;
        const auto it = std::max_element(h.begin(), h.end());
        std::fprintf(stderr, "modal cluster count: %ld\n",
                     static_cast<long>(it - h.begin()) + 1);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elbow detection and model-order selection on error curves"};
    app.require_subcommand(1);

    DetectOpts det;
    auto add_curve_opts = [](CLI::App* cmd, DetectOpts& o) {
        cmd->add_option("path", o.path, "curve file (k,value)")->required();
        cmd->add_option("--n", o.n, "number of data points (BIC/HQIC)");
        cmd->add_option("--alpha", o.alpha, "weight for the alpha extension");
        cmd->add_option("--tol", o.tol,
                        "absolute monotonicity tolerance (default: relative)");
        cmd->add_option("--dump-curve", o.dump_curve,
                        "write the validated curve to this path");
    };

    auto* detect = app.add_subcommand("detect", "elbow of a curve file");
    add_curve_opts(detect, det);
    detect->add_option("--criterion", det.criterion,
                       "uaed|bic|aic|hqic|lambda|alpha-uaed");
    detect->add_option("--lambda", det.lambda, "slope for --criterion lambda");

    DetectOpts cmp;
    auto* compare =
        app.add_subcommand("compare", "k* under UAED/BIC/AIC/HQIC");
    add_curve_opts(compare, cmp);

    ExperimentOpts exp;
    auto* experiment =
        app.add_subcommand("experiment", "Monte-Carlo experiment");
    experiment->add_option("kind", exp.kind, "ar|poly|cluster")->required();
    experiment->add_option("--order", exp.order, "true AR order");
    experiment->add_option("--sigma", exp.sigma, "noise std (ar)");
    experiment->add_option("--T", exp.T, "series length (ar)");
    experiment->add_option("--N", exp.N, "sample count (poly)");
    experiment->add_option("--K", exp.K, "max candidate index");
    experiment->add_option("--restarts", exp.restarts,
                           "k-means restarts per cluster count");
    experiment->add_option("--runs", exp.runs, "Monte-Carlo runs");
    experiment->add_option("--seed", exp.seed, "base seed");
    experiment->add_option("--threads", exp.threads, "worker threads (0=auto)");
    experiment->add_flag("--verbatim-coefficients", exp.verbatim_coefficients,
                         "use the literal AR coefficient lists");
    experiment->add_option("--out", exp.out,
                           "basename for .json/.csv report files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) return cmd_detect(det);
        if (compare->parsed()) return cmd_compare(cmp);
        if (experiment->parsed()) return cmd_experiment(exp);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ek::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
