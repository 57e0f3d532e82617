#include "boundarylab/attack.hpp"

#include <cmath>
#include <fstream>

#include "boundarylab/image_io.hpp"
#include "boundarylab/parallel.hpp"
#include "boundarylab/rng.hpp"

namespace boundarylab {

CountingOracle::CountingOracle(const DecisionFunction& f, ThrottlePolicy policy)
    : f_(&f), policy_(policy) {
    if (policy_.max_queries < 0)
        throw std::invalid_argument("max_queries must be >= 0");
    if ((policy_.window_size > 0) != (policy_.window_limit > 0))
        throw std::invalid_argument("window_size and window_limit go together");
    if (policy_.window_size < 0 || policy_.window_limit < 0)
        throw std::invalid_argument("window shape must be >= 0");
}

Label CountingOracle::evaluate(const Point& x) const {
    if (count_ >= policy_.max_queries) throw BudgetExhausted();
    if (policy_.window_size > 0 && count_ % policy_.window_size >= policy_.window_limit)
        throw BudgetExhausted();
    ++count_;
    return f_->evaluate(x);
}

namespace {

void log_query(AttackTrace& trace, const CountingOracle& oracle, double best) {
    trace.query_log.emplace_back(oracle.queries(), best);
}

// Bisects [x_orig, adv] until the bracket along the segment is narrower than
// tolerance; adv must already be verified adversarial. Updates the global
// best whenever an outer (adversarial-side) endpoint lands closer to x_orig.
// Returns normally only after reaching the tolerance; BudgetExhausted
// escapes with best/trace already consistent.
void bisect_segment(CountingOracle& oracle, const Point& x_orig, const Label& la,
                    const std::vector<double>& adv, double tolerance,
                    AttackTrace& trace, std::vector<double>& best,
                    double& best_dist) {
    int d = x_orig.dim();
    double seg_len = 0.0;
    for (int i = 0; i < d; ++i) {
        double diff = adv[static_cast<std::size_t>(i)] - x_orig[i];
        seg_len += diff * diff;
    }
    seg_len = std::sqrt(seg_len);

    double ta = 0.0;
    double tb = 1.0;
    std::vector<double> mid(static_cast<std::size_t>(d));
    while ((tb - ta) * seg_len > tolerance) {
        double tm = 0.5 * (ta + tb);
        for (int i = 0; i < d; ++i)
            mid[static_cast<std::size_t>(i)] =
                x_orig[i] + tm * (adv[static_cast<std::size_t>(i)] - x_orig[i]);
        Label lm = oracle.evaluate(Point(mid));
        if (lm == la) {
            ta = tm;
        } else {
            tb = tm;
            double cand = tb * seg_len;
            if (cand < best_dist) {
                best_dist = cand;
                best = mid;
            }
        }
        log_query(trace, oracle, best_dist);
    }
}

}  // namespace

AttackTrace boundary_attack(CountingOracle& oracle, const Point& x_orig,
                            const Point& x_seed, double tolerance,
                            std::uint64_t seed, std::int64_t max_rounds) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (max_rounds < 0) throw std::invalid_argument("max_rounds must be >= 0");
    if (x_orig.dim() != oracle.dim() || x_seed.dim() != oracle.dim())
        throw std::invalid_argument("dimension mismatch");

    int d = x_orig.dim();
    AttackTrace trace;
    trace.seed = seed;

    std::vector<double> best = x_seed.coords;  // candidate until verified
    double best_dist = distance(x_orig, x_seed);
    bool verified = false;
    Label la(0, 2);
    bool have_la = false;

    RandomStream rng = seeded_stream(seed, 0);
    try {
        la = oracle.evaluate(x_orig);
        have_la = true;
        Label lb = oracle.evaluate(x_seed);
        if (la == lb)
            throw std::invalid_argument("seed point must have a different label");
        verified = true;
        log_query(trace, oracle, best_dist);

        bisect_segment(oracle, x_orig, la, x_seed.coords, tolerance, trace, best,
                       best_dist);
        trace.success = true;

        if (d >= 2) {
            std::vector<double> g(static_cast<std::size_t>(d));
            std::vector<double> trial(static_cast<std::size_t>(d));
            double scale = 0.1;
            int consecutive_fails = 0;
            for (std::int64_t round = 0; round < max_rounds; ++round) {
                // Unit direction orthogonal to (best - x_orig).
                double axis_norm = best_dist;
                for (;;) {
                    double dot = 0.0;
                    for (int i = 0; i < d; ++i) {
                        g[static_cast<std::size_t>(i)] = rng.next_gaussian();
                        dot += g[static_cast<std::size_t>(i)] *
                               (best[static_cast<std::size_t>(i)] - x_orig[i]);
                    }
                    dot /= axis_norm * axis_norm;
                    double norm2 = 0.0;
                    for (int i = 0; i < d; ++i) {
                        g[static_cast<std::size_t>(i)] -=
                            dot * (best[static_cast<std::size_t>(i)] - x_orig[i]);
                        norm2 += g[static_cast<std::size_t>(i)] *
                                 g[static_cast<std::size_t>(i)];
                    }
                    if (norm2 > 1e-24) {
                        double inv = 1.0 / std::sqrt(norm2);
                        for (auto& v : g) v *= inv;
                        break;
                    }
                }

                double eta = scale * best_dist;
                if (eta < 1e-6) eta = 1e-6;
                for (int i = 0; i < d; ++i) {
                    double v = best[static_cast<std::size_t>(i)] +
                               eta * g[static_cast<std::size_t>(i)];
                    if (v < 0.0) v = 0.0;
                    if (v > 1.0) v = 1.0;
                    trial[static_cast<std::size_t>(i)] = v;
                }

                Label lt = oracle.evaluate(Point(trial));
                log_query(trace, oracle, best_dist);
                if (lt != la) {
                    bisect_segment(oracle, x_orig, la, trial, tolerance, trace, best,
                                   best_dist);
                    consecutive_fails = 0;
                } else if (++consecutive_fails == 3) {
                    scale *= 0.5;
                    consecutive_fails = 0;
                }
            }
        }
    } catch (const BudgetExhausted&) {
        // graceful halt; everything recorded so far stays valid
    }

    trace.queries_used = oracle.queries();
    trace.final_distance = best_dist;
    if (!verified) trace.success = false;
    if (verified) {
        trace.best_point = Point(best);
        // Post-hoc consistency check, outside the budget.
        if (have_la && oracle.inner().evaluate(trace.best_point) == la)
            throw std::logic_error("best point lost its adversarial label");
    }
    return trace;
}

std::vector<BudgetSweepRow> budget_sweep(const DecisionFunction& f,
                                         const Point& x_orig, const Point& x_seed,
                                         double tolerance,
                                         const std::vector<std::int64_t>& budgets,
                                         const std::vector<std::uint64_t>& seeds,
                                         std::int64_t max_rounds, int threads) {
    if (budgets.empty()) throw std::invalid_argument("need at least one budget");
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (budgets[i] < 0) throw std::invalid_argument("budgets must be >= 0");
        if (i > 0 && budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("budgets must be strictly increasing");
    }

    std::int64_t cells = static_cast<std::int64_t>(budgets.size()) *
                         static_cast<std::int64_t>(seeds.size());
    std::vector<double> finals(static_cast<std::size_t>(cells), 0.0);
    std::vector<std::uint8_t> wins(static_cast<std::size_t>(cells), 0);
    parallel_for(cells, threads, [&](std::int64_t cell) {
        std::size_t bi = static_cast<std::size_t>(cell) / seeds.size();
        std::size_t si = static_cast<std::size_t>(cell) % seeds.size();
        ThrottlePolicy policy;
        policy.max_queries = budgets[bi];
        CountingOracle oracle(f, policy);
        AttackTrace trace =
            boundary_attack(oracle, x_orig, x_seed, tolerance, seeds[si], max_rounds);
        finals[static_cast<std::size_t>(cell)] = trace.final_distance;
        wins[static_cast<std::size_t>(cell)] = trace.success ? 1 : 0;
    });

    std::vector<BudgetSweepRow> rows;
    rows.reserve(budgets.size());
    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        BudgetSweepRow row;
        row.budget = budgets[bi];
        row.seeds = static_cast<int>(seeds.size());
        double sum = 0.0;
        std::int64_t won = 0;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            sum += finals[bi * seeds.size() + si];
            won += wins[bi * seeds.size() + si];
        }
        row.mean_final_distance = sum / static_cast<double>(seeds.size());
        row.success_rate = static_cast<double>(won) / static_cast<double>(seeds.size());
        rows.push_back(row);
    }
    return rows;
}

void write_trace_csv(const AttackTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "query_index,best_distance\n";
    for (const auto& [index, dist] : trace.query_log)
        out << index << ',' << format_double(dist) << '\n';
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_sweep_csv(const std::vector<BudgetSweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "budget,mean_final_distance,success_rate,seeds\n";
    for (const auto& r : rows) {
        out << r.budget << ',' << format_double(r.mean_final_distance) << ','
            << format_double(r.success_rate) << ',' << r.seeds << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace boundarylab
