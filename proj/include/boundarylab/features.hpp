#ifndef BOUNDARYLAB_FEATURES_HPP
#define BOUNDARYLAB_FEATURES_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "boundarylab/core.hpp"

namespace boundarylab {

using ScalarFeature = std::function<double(const Point&)>;

struct LabeledDataset {
    std::vector<Point> points;
    std::vector<double> labels;  // each exactly -1 or +1

    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
    int dim() const { return points.empty() ? 0 : points[0].dim(); }

    // Throws unless lengths match, labels are +-1 and dimensions agree.
    void validate() const;
};

// L-infinity perturbations of a fixed radius. Radius 0 collapses the search
// to the identity perturbation.
struct PerturbationSet {
    enum class Norm { kLInf };
    enum class Search { kCornersPlusCoordinateDescent };

    Norm norm = Norm::kLInf;
    double radius = 0.0;
    Search search = Search::kCornersPlusCoordinateDescent;
};

// Exact corner search is used up to this dimension (4096 corners), a
// coordinate-descent heuristic beyond it.
constexpr int kExactSearchMaxDim = 12;

struct FeatureUsefulness {
    std::string feature_id;
    double rho = 0.0;
    double gamma = 0.0;
    PerturbationSet delta_spec;
    bool exact = true;  // false when gamma came from the heuristic search
};

// Empirical correlation with the label: (1/n) * sum_i y_i * feature(x_i).
double rho_useful(const ScalarFeature& feature, const LabeledDataset& data);

// Worst-case counterpart: each point is pushed within the perturbation set
// (clipped to the cube) to minimise y_i * feature(x_i + delta). Dimensions
// up to kExactSearchMaxDim search the zero perturbation plus all corners;
// higher dimensions run coord_iters sweeps of coordinate descent, so the
// result is an upper bound on the true minimum there.
double gamma_robust(const ScalarFeature& feature, const LabeledDataset& data,
                    const PerturbationSet& delta, int coord_iters = 3,
                    int threads = 1);

// (rho, gamma) per feature, sorted by gap rho - gamma descending with the
// feature name as tiebreak.
std::vector<FeatureUsefulness> fragility_scan(
    const std::vector<std::pair<std::string, ScalarFeature>>& features,
    const LabeledDataset& data, const PerturbationSet& delta, int coord_iters = 3,
    int threads = 1);

// CSV columns x0..x{d-1},y with y in {-1, 1}; 0/1 labels are remapped to -1/+1.
LabeledDataset read_dataset_csv(const std::string& path);

// CSV with header feature,rho,gamma,gap,exact.
void write_fragility_csv(const std::vector<FeatureUsefulness>& rows,
                         const std::string& path);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_FEATURES_HPP
