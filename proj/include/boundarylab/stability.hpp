#ifndef BOUNDARYLAB_STABILITY_HPP
#define BOUNDARYLAB_STABILITY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "boundarylab/core.hpp"

namespace boundarylab {

// 95% Wilson score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials);

struct StabilityReport {
    double epsilon = 0.0;
    std::int64_t samples = 0;
    std::int64_t unstable_count = 0;
    double unstable_fraction = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    int directions = 0;
    int steps = 0;
};

// Probes the epsilon-ball around x (clipped to the cube) with `directions`
// random unit vectors times `steps_per_direction` radii evenly spaced in
// (0, epsilon]. Returns false as soon as any probe changes label. A true
// result means no violation was found, not a proof of stability.
bool is_epsilon_stable(const DecisionFunction& f, const Point& x, double epsilon,
                       int directions, int steps_per_direction, std::uint64_t seed);

// Monte Carlo estimate of the measure of epsilon-unstable points: uniform
// samples over the cube, each probed via its own substreams so the result
// is independent of the thread schedule.
StabilityReport unstable_fraction(const DecisionFunction& f, double epsilon,
                                  std::int64_t samples, int directions, int steps,
                                  std::uint64_t seed, int threads = 1);

struct BoundaryDistanceEstimate {
    Point point;                    // same-label bracket endpoint nearest the boundary
    double distance = 0.0;          // |x - point|
    std::vector<double> direction;  // unit vector from x toward x_adv
    std::int64_t queries_used = 0;  // bisection evaluations, endpoints excluded
    double tolerance = 0.0;
};

// Bisects the segment [x, x_adv] until the bracket around the label change
// is narrower than `tolerance`. Requires f(x) != f(x_adv).
BoundaryDistanceEstimate distance_to_boundary(const DecisionFunction& f,
                                              const Point& x, const Point& x_adv,
                                              double tolerance);

// Single JSON object with keys epsilon, samples, unstable_count,
// unstable_fraction, ci_low, ci_high, seed, directions, steps.
void write_stability_json(const StabilityReport& report, const std::string& path);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_STABILITY_HPP
