#ifndef BOUNDARYLAB_SYMMETRY_HPP
#define BOUNDARYLAB_SYMMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "boundarylab/core.hpp"
#include "boundarylab/raster.hpp"

namespace boundarylab {

// Isometries of the m x n grid viewed as cell permutations. Rotations other
// than 180 degrees and the diagonal flips exist only on square grids.
enum class PointOp {
    kIdentity,
    kRot90,
    kRot180,
    kRot270,
    kFlipH,          // mirror columns
    kFlipV,          // mirror rows
    kTranspose,
    kAntiTranspose,
};

const char* point_op_name(PointOp op);

// A toroidal translation composed with a point op: cell -> op(cell) + (dr,dc)
// mod (m,n). The set of all such maps is closed under composition.
struct GridTransform {
    int m = 1;
    int n = 1;
    int dr = 0;
    int dc = 0;
    PointOp op = PointOp::kIdentity;
};

// All m*n translations, each composed with every applicable point op when
// include_point_ops is set (8 ops for square grids, 4 otherwise). Point ops
// iterate in enum order, translations in row-major order within each op.
std::vector<GridTransform> enumerate_group(int m, int n, bool include_point_ops);

// perm[i] = flat index the cell at flat index i moves to.
std::vector<int> permutation_table(const GridTransform& t);

// Deduplicates parameterizations that induce the same cell permutation.
// Output order follows first appearance in the input.
std::vector<std::vector<int>> collapse_to_permutations(
    const std::vector<GridTransform>& transforms);

LabelRaster apply_transform(const GridTransform& t, const LabelRaster& raster);

// Same permutation on a point whose coordinates are a flattened m x n grid.
Point apply_transform(const GridTransform& t, const Point& x);

struct InvarianceRow {
    GridTransform transform;
    std::int64_t violations = 0;
};

struct InvarianceReport {
    std::vector<InvarianceRow> rows;
    std::int64_t samples = 0;
};

// Counts sampled grid points x with f(t(x)) != f(x) for each transform.
// Sampling is uniform over the cube with per-sample streams, so the report
// is identical for every thread count.
InvarianceReport check_invariance(const DecisionFunction& f, int m, int n,
                                  const std::vector<GridTransform>& transforms,
                                  std::int64_t samples, std::uint64_t seed,
                                  int threads = 1);

void write_invariance_csv(const InvarianceReport& report,
                          const std::vector<GridTransform>& transforms,
                          const std::string& path);

// Images of one ball centre under a transform set.
struct OrbitDescriptor {
    std::vector<Point> centers;      // one per transform, in input order
    double epsilon = 0.0;
    std::size_t distinct_count = 0;  // centers up to exact coordinate equality
};

OrbitDescriptor orbit_of_ball(const Point& center, int m, int n, double epsilon,
                              const std::vector<GridTransform>& transforms);

// Minimum Euclidean distance from z to any orbit centre.
double nearest_orbit_distance(const Point& z, const OrbitDescriptor& orbit);

// Log-cardinality models for label-preserving symmetry families: quadratic
// in k for image grids, factorial in k for graph vertex permutations.
struct SymmetryClass {
    enum class Kind { kImagePoly, kGraphFactorial };

    Kind kind = Kind::kImagePoly;

    // Natural-log count as a function of input dimension k.
    double log_count(double k) const;
    const char* name() const;

    static SymmetryClass image_poly() { return {Kind::kImagePoly}; }
    static SymmetryClass graph_factorial() { return {Kind::kGraphFactorial}; }
};

}  // namespace boundarylab

#endif  // BOUNDARYLAB_SYMMETRY_HPP
