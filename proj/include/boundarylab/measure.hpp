#ifndef BOUNDARYLAB_MEASURE_HPP
#define BOUNDARYLAB_MEASURE_HPP

#include <string>
#include <vector>

#include "boundarylab/symmetry.hpp"

namespace boundarylab {

// Natural log of the Lebesgue measure of a k-ball of radius epsilon:
// (k/2)·ln(pi) − lnΓ(k/2 + 1) + k·ln(epsilon). Stays finite where the raw
// volume would under- or overflow (the curves run to k in the tens of
// thousands).
double log_ball_volume(int k, double epsilon);

// Log measure of the union bound over a symmetry orbit: class log-count at
// dimension k plus the ball log-volume. A union of N balls has measure at
// most N times one ball.
double orbit_volume_bound(int k, double epsilon, const SymmetryClass& sym_class);

struct BoundCurvePoint {
    int k = 0;
    double epsilon = 0.0;
    double log_sym_count = 0.0;
    double log_ball_volume = 0.0;
    double log_orbit_bound = 0.0;         // sum of the two above
    double log_orbit_bound_capped = 0.0;  // min(bound, 0): the cube has measure 1
};

// Bound per dimension in k_range. With preimage_adjusted, each feature-space
// point stands for about k input points, so ln(k) joins the symmetry count.
std::vector<BoundCurvePoint> bound_curve(const std::vector<int>& k_range,
                                         double epsilon,
                                         const SymmetryClass& sym_class,
                                         bool preimage_adjusted = false);

// Average number of input-space points per feature-space point: k/r.
double feature_preimage_factor(int k, int r);

struct MitigationRow {
    int m = 0;
    long long k = 0;  // channels * m^2
    BoundCurvePoint bound;
};

// Image-grid bound as a function of resolution: k = channels * m^2 with the
// quadratic symmetry class.
std::vector<MitigationRow> resolution_mitigation_curve(const std::vector<int>& m_range,
                                                       int channels, double epsilon);

// CSV with header k,epsilon,log_sym_count,log_ball_volume,log_orbit_bound,
// log_orbit_bound_capped.
void write_bound_curve_csv(const std::vector<BoundCurvePoint>& curve,
                           const std::string& path);

// Same columns preceded by m.
void write_mitigation_csv(const std::vector<MitigationRow>& rows,
                          const std::string& path);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_MEASURE_HPP
