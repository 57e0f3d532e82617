// boundarylab: decision-boundary analysis toolkit.
//
// Subcommands: raster, bound, stability, usefulness, symmetry, attack.
// Each run writes its outputs plus a manifest.json with the fully resolved
// configuration into the output directory. Exit codes: 0 success, 1 bad
// config or failed --check, 2 I/O trouble.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boundarylab/attack.hpp"
#include "boundarylab/classifier_registry.hpp"
#include "boundarylab/config.hpp"
#include "boundarylab/core.hpp"
#include "boundarylab/features.hpp"
#include "boundarylab/filterbank.hpp"
#include "boundarylab/image_io.hpp"
#include "boundarylab/measure.hpp"
#include "boundarylab/raster.hpp"
#include "boundarylab/rng.hpp"
#include "boundarylab/stability.hpp"
#include "boundarylab/symmetry.hpp"

using nlohmann::json;
using namespace boundarylab;

namespace {

namespace fs = std::filesystem;

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string out_path(const RunConfig& run, const std::string& name) {
    return (fs::path(run.output_dir) / name).string();
}

void check_failed(const std::string& what) {
    throw ConfigError("--check failed: " + what);
}

int parse_bounded_int(const RunConfig& run, const std::string& key, std::int64_t lo,
                      std::int64_t hi) {
    std::int64_t v = parse_i64(run.params.at(key), key);
    if (v < lo || v > hi)
        throw ConfigError("'" + key + "' must be in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return static_cast<int>(v);
}

std::unique_ptr<DecisionFunction> classifier_from(const RunConfig& run,
                                                  const std::string& key) {
    try {
        return make_classifier(run.params.at(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad '") + key + "': " + e.what());
    }
}

// raster: label map, instability map and box counts for a 2-D classifier.
json run_raster(const RunConfig& run) {
    const std::string& mode_str = run.params.at("mode");
    if (mode_str != "l1" && mode_str != "dot")
        throw ConfigError("'mode' must be l1 or dot");
    std::string bank_spec = run.params.at("bank");
    if (bank_spec == "paper_filter_bank" && mode_str == "dot")
        bank_spec += ":dot";
    std::unique_ptr<DecisionFunction> clf;
    try {
        clf = make_classifier(bank_spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad 'bank': ") + e.what());
    }

    int width = parse_bounded_int(run, "width", 1, 8192);
    int height = parse_bounded_int(run, "height", 1, 8192);
    std::vector<double> ext = parse_real_list(run.params.at("extent"), "extent");
    if (ext.size() != 4) throw ConfigError("'extent' must be x0,y0,x1,y1");
    Extent extent{ext[0], ext[1], ext[2], ext[3]};
    int neighborhood = parse_bounded_int(run, "neighborhood", 4, 8);
    if (neighborhood != 4 && neighborhood != 8)
        throw ConfigError("'neighborhood' must be 4 or 8");
    std::vector<std::int64_t> depth_list = parse_int_list(run.params.at("depths"), "depths");
    std::vector<int> depths(depth_list.begin(), depth_list.end());

    LabelRaster raster;
    InstabilityMap inst;
    BoxCountResult box;
    try {
        raster = rasterize(*clf, extent, width, height, run.threads);
        inst = unstable_cells(raster, neighborhood);
        box = refine_and_count(*clf, extent, depths, run.threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_ppm(raster, out_path(run, "labels.ppm"));
    write_instability_pgm(inst, out_path(run, "unstable.pgm"));
    write_boxcount_csv(box, out_path(run, "boxcount.csv"));

    json results;
    results["label_counts"] = label_histogram(raster);
    results["unstable_count"] = inst.unstable_count;
    results["unstable_fraction"] = inst.unstable_fraction;
    if (box.dimension_defined)
        results["dimension_estimate"] = box.dimension_estimate;
    else
        results["dimension_estimate"] = nullptr;
    json levels = json::array();
    for (const auto& l : box.levels)
        levels.push_back({{"depth", l.depth}, {"boundary_cells", l.boundary_cells}});
    results["boxcount"] = levels;

    if (run.check && inst.unstable_count == 0)
        check_failed("expected a nonempty unstable-cell set");
    return results;
}

// bound: symmetry-count times ball-volume curves, or the resolution variant.
json run_bound(const RunConfig& run) {
    const std::string& kind = run.params.at("kind");
    double eps = parse_real(run.params.at("eps"), "eps");
    if (!(eps > 0.0)) throw ConfigError("'eps' must be > 0");

    json results;
    if (kind == "curve") {
        const std::string& cls_name = run.params.at("class");
        SymmetryClass cls;
        if (cls_name == "image_poly")
            cls = SymmetryClass::image_poly();
        else if (cls_name == "graph_factorial")
            cls = SymmetryClass::graph_factorial();
        else
            throw ConfigError("'class' must be image_poly or graph_factorial");
        bool preimage = parse_bool(run.params.at("preimage"), "preimage");

        std::vector<std::int64_t> k_list = parse_int_list(run.params.at("k"), "k");
        std::vector<int> ks;
        for (std::int64_t k : k_list) {
            if (k < 1 || k > 10000000) throw ConfigError("'k' values must be in [1, 1e7]");
            ks.push_back(static_cast<int>(k));
        }
        std::vector<BoundCurvePoint> curve;
        try {
            curve = bound_curve(ks, eps, cls, preimage);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        write_bound_curve_csv(curve, out_path(run, "bound_curve.csv"));
        results["rows"] = curve.size();
        results["first_log_bound"] = curve.front().log_orbit_bound;
        results["last_log_bound"] = curve.back().log_orbit_bound;

        if (run.check && curve.size() >= 2) {
            // The documented dichotomy concerns the tail; check the upper
            // half of the requested range.
            std::size_t start = curve.size() / 2;
            for (std::size_t i = start; i + 1 < curve.size(); ++i) {
                double a = curve[i].log_orbit_bound;
                double b = curve[i + 1].log_orbit_bound;
                if (cls.kind == SymmetryClass::Kind::kImagePoly && !(b < a))
                    check_failed("image_poly bound must decrease over the tail");
                if (cls.kind == SymmetryClass::Kind::kGraphFactorial && !(b > a))
                    check_failed("graph_factorial bound must increase over the tail");
            }
        }
    } else if (kind == "mitigation") {
        int channels = parse_bounded_int(run, "channels", 1, 3);
        if (channels == 2) throw ConfigError("'channels' must be 1 or 3");
        std::vector<std::int64_t> m_list = parse_int_list(run.params.at("m"), "m");
        std::vector<int> ms;
        for (std::int64_t m : m_list) {
            if (m < 1 || m > 4096) throw ConfigError("'m' values must be in [1, 4096]");
            ms.push_back(static_cast<int>(m));
        }
        std::vector<MitigationRow> rows;
        try {
            rows = resolution_mitigation_curve(ms, channels, eps);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        write_mitigation_csv(rows, out_path(run, "mitigation.csv"));
        results["rows"] = rows.size();
        results["first_log_bound"] = rows.front().bound.log_orbit_bound;
        results["last_log_bound"] = rows.back().bound.log_orbit_bound;

        if (run.check) {
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                if (rows[i].m < 8) continue;
                if (!(rows[i + 1].bound.log_orbit_bound < rows[i].bound.log_orbit_bound))
                    check_failed("mitigation bound must decrease from m=8 onward");
            }
        }
    } else {
        throw ConfigError("'kind' must be curve or mitigation");
    }
    return results;
}

json run_stability(const RunConfig& run) {
    std::unique_ptr<DecisionFunction> clf = classifier_from(run, "classifier");
    double eps = parse_real(run.params.at("eps"), "eps");
    std::int64_t samples = parse_i64(run.params.at("samples"), "samples");
    if (samples < 1 || samples > 100000000)
        throw ConfigError("'samples' must be in [1, 1e8]");
    int directions = parse_bounded_int(run, "directions", 1, 65536);
    int steps = parse_bounded_int(run, "steps", 1, 65536);

    StabilityReport report;
    try {
        report = unstable_fraction(*clf, eps, samples, directions, steps, run.seed,
                                   run.threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_stability_json(report, out_path(run, "stability.json"));

    json results;
    results["unstable_count"] = report.unstable_count;
    results["unstable_fraction"] = report.unstable_fraction;
    results["ci_low"] = report.ci_low;
    results["ci_high"] = report.ci_high;

    if (run.check &&
        !(report.ci_low <= report.unstable_fraction &&
          report.unstable_fraction <= report.ci_high))
        check_failed("confidence interval must bracket the estimate");
    return results;
}

json run_usefulness(const RunConfig& run) {
    const std::string& data_spec = run.params.at("data");
    LabeledDataset data;
    if (data_spec == "synthetic1d") {
        std::int64_t n = parse_i64(run.params.at("n"), "n");
        if (n < 1 || n > 10000000) throw ConfigError("'n' must be in [1, 1e7]");
        // 1-D points with the label set by the sign of x0 - 0.5.
        for (std::int64_t i = 0; i < n; ++i) {
            RandomStream rng = seeded_stream(run.seed, static_cast<std::uint64_t>(i));
            double x = rng.next_double();
            data.points.push_back(Point({x}));
            data.labels.push_back(x > 0.5 ? 1.0 : -1.0);
        }
    } else {
        try {
            data = read_dataset_csv(data_spec);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("bad dataset: ") + e.what());
        }
    }

    double delta_radius = parse_real(run.params.at("delta"), "delta");
    if (delta_radius < 0.0) throw ConfigError("'delta' must be >= 0");
    int iters = parse_bounded_int(run, "iters", 1, 1000);

    std::vector<std::pair<std::string, ScalarFeature>> features;
    std::size_t start = 0;
    const std::string& list = run.params.at("features");
    while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        std::string name = comma == std::string::npos ? list.substr(start)
                                                      : list.substr(start, comma - start);
        try {
            features.push_back(make_feature(name));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }

    PerturbationSet delta;
    delta.radius = delta_radius;
    std::vector<FeatureUsefulness> table;
    try {
        table = fragility_scan(features, data, delta, iters, run.threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_fragility_csv(table, out_path(run, "fragility.csv"));

    json results;
    json rows = json::array();
    for (const auto& r : table) {
        rows.push_back({{"feature", r.feature_id},
                        {"rho", r.rho},
                        {"gamma", r.gamma},
                        {"gap", r.rho - r.gamma},
                        {"exact", r.exact}});
    }
    results["features"] = rows;

    if (run.check) {
        for (std::size_t i = 0; i + 1 < table.size(); ++i) {
            if ((table[i].rho - table[i].gamma) < (table[i + 1].rho - table[i + 1].gamma))
                check_failed("fragility table must be sorted by gap");
        }
        for (const auto& r : table) {
            if (r.gamma > r.rho + 1e-9) check_failed("gamma must not exceed rho");
        }
    }
    return results;
}

json run_symmetry(const RunConfig& run) {
    int m = parse_bounded_int(run, "m", 1, 64);
    int n = parse_bounded_int(run, "n", 1, 64);
    bool point_ops = parse_bool(run.params.at("point_ops"), "point_ops");
    std::int64_t samples = parse_i64(run.params.at("samples"), "samples");
    if (samples < 1 || samples > 10000000) throw ConfigError("'samples' must be in [1, 1e7]");

    std::string clf_spec = run.params.at("classifier");
    if (clf_spec == "mean") clf_spec = "mean:" + std::to_string(m * n);
    std::unique_ptr<DecisionFunction> clf;
    try {
        clf = make_classifier(clf_spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad 'classifier': ") + e.what());
    }

    std::vector<GridTransform> transforms = enumerate_group(m, n, point_ops);
    InvarianceReport report;
    try {
        report = check_invariance(*clf, m, n, transforms, samples, run.seed, run.threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_invariance_csv(report, transforms, out_path(run, "transforms.csv"));

    std::int64_t total_violations = 0;
    for (const auto& row : report.rows) total_violations += row.violations;

    json results;
    results["transforms"] = transforms.size();
    results["total_violations"] = total_violations;

    if (run.check) {
        std::size_t expected = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
        if (point_ops) expected *= (m == n) ? 8 : 4;
        if (transforms.size() != expected)
            check_failed("transform count does not match the group order");
    }
    return results;
}

json run_attack(const RunConfig& run) {
    std::unique_ptr<DecisionFunction> clf = classifier_from(run, "classifier");
    std::vector<double> orig = parse_real_list(run.params.at("x_orig"), "x_orig");
    std::vector<double> seed_pt = parse_real_list(run.params.at("x_seed"), "x_seed");
    double tol = parse_real(run.params.at("tol"), "tol");
    if (!(tol > 0.0)) throw ConfigError("'tol' must be > 0");
    std::vector<std::int64_t> budgets = parse_int_list(run.params.at("budgets"), "budgets");
    int nseeds = parse_bounded_int(run, "nseeds", 1, 4096);
    std::int64_t max_rounds = parse_i64(run.params.at("max_rounds"), "max_rounds");
    if (max_rounds < 0) throw ConfigError("'max_rounds' must be >= 0");

    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < nseeds; ++i)
        seeds.push_back(run.seed + static_cast<std::uint64_t>(i));

    Point x_orig, x_seed;
    std::vector<BudgetSweepRow> rows;
    AttackTrace trace;
    try {
        x_orig = Point(orig);
        x_seed = Point(seed_pt);
        rows = budget_sweep(*clf, x_orig, x_seed, tol, budgets, seeds, max_rounds,
                            run.threads);
        // Reference trace at the largest budget with the base seed.
        ThrottlePolicy policy;
        policy.max_queries = budgets.back();
        CountingOracle oracle(*clf, policy);
        trace = boundary_attack(oracle, x_orig, x_seed, tol, seeds[0], max_rounds);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_sweep_csv(rows, out_path(run, "sweep.csv"));
    write_trace_csv(trace, out_path(run, "trace.csv"));

    json results;
    json sweep = json::array();
    for (const auto& r : rows) {
        sweep.push_back({{"budget", r.budget},
                         {"mean_final_distance", r.mean_final_distance},
                         {"success_rate", r.success_rate}});
    }
    results["sweep"] = sweep;
    results["trace_queries"] = trace.queries_used;
    results["trace_final_distance"] = trace.final_distance;
    results["trace_success"] = trace.success;

    if (run.check) {
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            if (rows[i + 1].mean_final_distance > rows[i].mean_final_distance + 1e-12)
                check_failed("mean final distance must not increase with budget");
            if (rows[i + 1].success_rate < rows[i].success_rate)
                check_failed("success rate must not decrease with budget");
        }
        for (std::size_t i = 1; i < trace.query_log.size(); ++i) {
            if (trace.query_log[i].second > trace.query_log[i - 1].second)
                check_failed("trace best distance must be non-increasing");
        }
    }
    return results;
}

int run_main(int argc, char** argv) {
    CLI::App app{"decision-boundary instability toolkit"};
    app.require_subcommand(1);

    std::string config_path, seed_flag, threads_flag, out_flag;
    bool check_flag = false;
    app.add_option("--config", config_path, "config file (key=value with [sections])");
    app.add_option("--seed", seed_flag, "64-bit seed (default 42)");
    app.add_option("--threads", threads_flag, "worker count or auto");
    app.add_option("--out", out_flag, "output directory (default out)");
    app.add_flag("--check", check_flag, "assert documented properties, exit 1 on violation");

    static const std::map<std::string, std::string> blurbs = {
        {"raster", "label map, instability mask and box-counting dimension"},
        {"bound", "symmetry-count against ball-volume bound curves"},
        {"stability", "empirical epsilon-stability with a Wilson interval"},
        {"usefulness", "robust versus fragile feature usefulness scan"},
        {"symmetry", "grid symmetry group enumeration and invariance check"},
        {"attack", "query-budgeted boundary-distance attack sweep"},
    };
    std::map<std::string, std::vector<std::string>> kv_args;
    for (const std::string& name : subcommand_names()) {
        CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
        sub->add_option("params", kv_args[name], "key=value parameters");
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        std::string sub_name = app.get_subcommands().front()->get_name();
        SectionMap file_config;
        if (!config_path.empty()) file_config = parse_config_file(config_path);
        RunConfig run = resolve_run(sub_name, file_config, kv_args[sub_name], seed_flag,
                                    threads_flag, out_flag, check_flag);

        std::error_code ec;
        fs::create_directories(run.output_dir, ec);
        if (ec) throw IoError("cannot create output directory: " + run.output_dir);

        json results;
        if (sub_name == "raster") results = run_raster(run);
        else if (sub_name == "bound") results = run_bound(run);
        else if (sub_name == "stability") results = run_stability(run);
        else if (sub_name == "usefulness") results = run_usefulness(run);
        else if (sub_name == "symmetry") results = run_symmetry(run);
        else if (sub_name == "attack") results = run_attack(run);

        json manifest;
        manifest["subcommand"] = run.subcommand;
        manifest["seed"] = run.seed;
        manifest["threads"] = run.threads;
        manifest["check"] = run.check;
        manifest["params"] = run.params;
        manifest["results"] = results;
        manifest["timestamp"] = iso_timestamp();

        std::ofstream mf(out_path(run, "manifest.json"));
        if (!mf) throw IoError("cannot write manifest.json");
        mf << manifest.dump(2) << '\n';
        mf.flush();
        if (!mf) throw IoError("manifest write failed");
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) { return run_main(argc, argv); }
