#include "boundarylab/stability.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "boundarylab/image_io.hpp"
#include "boundarylab/parallel.hpp"
#include "boundarylab/rng.hpp"

namespace boundarylab {

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("successes outside [0, trials]");
    // z for a central 95% normal interval
    constexpr double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double lo = center - half;
    double hi = center + half;
    // The degenerate endpoints are exact: rounding must not leave residue.
    if (successes == 0) lo = 0.0;
    if (successes == trials) hi = 1.0;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

namespace {

// Draws a uniformly random unit direction; retries the (astronomically
// rare) near-zero gaussian vector to keep the normalization well-defined.
void random_unit_vector(RandomStream& rng, std::vector<double>& dir) {
    for (;;) {
        double norm2 = 0.0;
        for (auto& v : dir) {
            v = rng.next_gaussian();
            norm2 += v * v;
        }
        if (norm2 > 1e-24) {
            double inv = 1.0 / std::sqrt(norm2);
            for (auto& v : dir) v *= inv;
            return;
        }
    }
}

bool probe_is_stable(const DecisionFunction& f, const Point& x, const Label& base,
                     double epsilon, int directions, int steps, RandomStream& rng) {
    int d = x.dim();
    std::vector<double> dir(static_cast<std::size_t>(d));
    // One probe point reused across the loop; coordinates are clamped by
    // hand, so the constructor's validation is not needed again.
    Point probe = x;
    for (int di = 0; di < directions; ++di) {
        random_unit_vector(rng, dir);
        for (int s = 1; s <= steps; ++s) {
            double r = epsilon * static_cast<double>(s) / static_cast<double>(steps);
            for (int i = 0; i < d; ++i) {
                double v = x[i] + r * dir[static_cast<std::size_t>(i)];
                if (v < 0.0) v = 0.0;
                if (v > 1.0) v = 1.0;
                probe.coords[static_cast<std::size_t>(i)] = v;
            }
            if (f.evaluate(probe) != base) return false;
        }
    }
    return true;
}

}  // namespace

bool is_epsilon_stable(const DecisionFunction& f, const Point& x, double epsilon,
                       int directions, int steps_per_direction, std::uint64_t seed) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (directions < 1) throw std::invalid_argument("directions must be >= 1");
    if (steps_per_direction < 1) throw std::invalid_argument("steps must be >= 1");
    if (x.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
    Label base = f.evaluate(x);
    RandomStream rng = seeded_stream(seed, 0);
    return probe_is_stable(f, x, base, epsilon, directions, steps_per_direction, rng);
}

StabilityReport unstable_fraction(const DecisionFunction& f, double epsilon,
                                  std::int64_t samples, int directions, int steps,
                                  std::uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (directions < 1 || steps < 1)
        throw std::invalid_argument("directions and steps must be >= 1");

    int d = f.dim();
    std::vector<std::uint8_t> unstable(static_cast<std::size_t>(samples), 0);
    // Streams 2i and 2i+1 belong to sample i: one for the sample point, one
    // for its probes. The split keeps results identical however samples are
    // distributed over threads.
    parallel_for(samples, threads, [&](std::int64_t i) {
        RandomStream point_rng = seeded_stream(seed, 2 * static_cast<std::uint64_t>(i));
        RandomStream probe_rng =
            seeded_stream(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        std::vector<double> coords(static_cast<std::size_t>(d));
        for (auto& v : coords) v = point_rng.next_double();
        Point x(coords);
        Label base = f.evaluate(x);
        if (!probe_is_stable(f, x, base, epsilon, directions, steps, probe_rng))
            unstable[static_cast<std::size_t>(i)] = 1;
    });

    StabilityReport report;
    report.epsilon = epsilon;
    report.samples = samples;
    for (std::uint8_t u : unstable) report.unstable_count += u;
    report.unstable_fraction =
        static_cast<double>(report.unstable_count) / static_cast<double>(samples);
    auto ci = wilson_interval(report.unstable_count, samples);
    report.ci_low = ci.first;
    report.ci_high = ci.second;
    report.seed = seed;
    report.directions = directions;
    report.steps = steps;
    return report;
}

BoundaryDistanceEstimate distance_to_boundary(const DecisionFunction& f,
                                              const Point& x, const Point& x_adv,
                                              double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (x.dim() != f.dim() || x_adv.dim() != f.dim())
        throw std::invalid_argument("dimension mismatch");
    Label la = f.evaluate(x);
    Label lb = f.evaluate(x_adv);
    if (la == lb) throw std::invalid_argument("endpoints must have different labels");

    int d = x.dim();
    double seg_len = distance(x, x_adv);
    BoundaryDistanceEstimate est;
    est.tolerance = tolerance;
    est.direction.assign(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i)
        est.direction[static_cast<std::size_t>(i)] = (x_adv[i] - x[i]) / seg_len;

    // Bracket [ta, tb] in segment parameter; label(ta side) == la throughout.
    double ta = 0.0;
    double tb = 1.0;
    std::vector<double> mid(static_cast<std::size_t>(d));
    while ((tb - ta) * seg_len > tolerance) {
        double tm = 0.5 * (ta + tb);
        for (int i = 0; i < d; ++i)
            mid[static_cast<std::size_t>(i)] = x[i] + tm * (x_adv[i] - x[i]);
        ++est.queries_used;
        if (f.evaluate(Point(mid)) == la)
            ta = tm;
        else
            tb = tm;
    }

    std::vector<double> inner(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        inner[static_cast<std::size_t>(i)] = x[i] + ta * (x_adv[i] - x[i]);
    est.point = Point(inner);
    est.distance = ta * seg_len;
    return est;
}

void write_stability_json(const StabilityReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "{\n"
        << "  \"epsilon\": " << format_double(report.epsilon) << ",\n"
        << "  \"samples\": " << report.samples << ",\n"
        << "  \"unstable_count\": " << report.unstable_count << ",\n"
        << "  \"unstable_fraction\": " << format_double(report.unstable_fraction) << ",\n"
        << "  \"ci_low\": " << format_double(report.ci_low) << ",\n"
        << "  \"ci_high\": " << format_double(report.ci_high) << ",\n"
        << "  \"seed\": " << report.seed << ",\n"
        << "  \"directions\": " << report.directions << ",\n"
        << "  \"steps\": " << report.steps << "\n"
        << "}\n";
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace boundarylab
