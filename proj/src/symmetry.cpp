#include "boundarylab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "boundarylab/image_io.hpp"
#include "boundarylab/parallel.hpp"
#include "boundarylab/rng.hpp"

namespace boundarylab {

const char* point_op_name(PointOp op) {
    switch (op) {
        case PointOp::kIdentity: return "identity";
        case PointOp::kRot90: return "rot90";
        case PointOp::kRot180: return "rot180";
        case PointOp::kRot270: return "rot270";
        case PointOp::kFlipH: return "flip_h";
        case PointOp::kFlipV: return "flip_v";
        case PointOp::kTranspose: return "transpose";
        case PointOp::kAntiTranspose: return "anti_transpose";
    }
    return "identity";
}

namespace {

// Destination of cell (r, c) under a point op, before translation. Square
// grids admit all eight ops; otherwise only those mapping m x n to itself.
void apply_point_op(PointOp op, int m, int n, int r, int c, int& out_r, int& out_c) {
    out_r = r;
    out_c = c;
    switch (op) {
        case PointOp::kIdentity: out_r = r; out_c = c; return;
        case PointOp::kRot90: out_r = c; out_c = m - 1 - r; return;
        case PointOp::kRot180: out_r = m - 1 - r; out_c = n - 1 - c; return;
        case PointOp::kRot270: out_r = n - 1 - c; out_c = r; return;
        case PointOp::kFlipH: out_r = r; out_c = n - 1 - c; return;
        case PointOp::kFlipV: out_r = m - 1 - r; out_c = c; return;
        case PointOp::kTranspose: out_r = c; out_c = r; return;
        case PointOp::kAntiTranspose: out_r = n - 1 - c; out_c = m - 1 - r; return;
    }
}

bool op_applicable(PointOp op, int m, int n) {
    switch (op) {
        case PointOp::kIdentity:
        case PointOp::kRot180:
        case PointOp::kFlipH:
        case PointOp::kFlipV:
            return true;
        default:
            return m == n;
    }
}

void validate_grid(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("grid dimensions must be >= 1");
}

}  // namespace

std::vector<GridTransform> enumerate_group(int m, int n, bool include_point_ops) {
    validate_grid(m, n);
    static const PointOp kAllOps[] = {
        PointOp::kIdentity,      PointOp::kRot90,     PointOp::kRot180,
        PointOp::kRot270,        PointOp::kFlipH,     PointOp::kFlipV,
        PointOp::kTranspose,     PointOp::kAntiTranspose,
    };
    std::vector<GridTransform> out;
    for (PointOp op : kAllOps) {
        if (op != PointOp::kIdentity && !include_point_ops) continue;
        if (!op_applicable(op, m, n)) continue;
        for (int dr = 0; dr < m; ++dr)
            for (int dc = 0; dc < n; ++dc) out.push_back({m, n, dr, dc, op});
    }
    return out;
}

std::vector<int> permutation_table(const GridTransform& t) {
    validate_grid(t.m, t.n);
    if (!op_applicable(t.op, t.m, t.n))
        throw std::invalid_argument("point op needs a square grid");
    if (t.dr < 0 || t.dr >= t.m || t.dc < 0 || t.dc >= t.n)
        throw std::invalid_argument("translation offset outside grid");
    std::vector<int> perm(static_cast<std::size_t>(t.m) * static_cast<std::size_t>(t.n));
    for (int r = 0; r < t.m; ++r) {
        for (int c = 0; c < t.n; ++c) {
            int pr, pc;
            apply_point_op(t.op, t.m, t.n, r, c, pr, pc);
            int tr = (pr + t.dr) % t.m;
            int tc = (pc + t.dc) % t.n;
            perm[static_cast<std::size_t>(r) * t.n + c] = tr * t.n + tc;
        }
    }
    return perm;
}

std::vector<std::vector<int>> collapse_to_permutations(
    const std::vector<GridTransform>& transforms) {
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    for (const auto& t : transforms) {
        std::vector<int> perm = permutation_table(t);
        if (seen.insert(perm).second) out.push_back(std::move(perm));
    }
    return out;
}

LabelRaster apply_transform(const GridTransform& t, const LabelRaster& raster) {
    if (raster.height != t.m || raster.width != t.n)
        throw std::invalid_argument("raster size does not match transform grid");
    std::vector<int> perm = permutation_table(t);
    LabelRaster out = raster;
    for (std::size_t i = 0; i < perm.size(); ++i)
        out.labels[static_cast<std::size_t>(perm[i])] = raster.labels[i];
    return out;
}

Point apply_transform(const GridTransform& t, const Point& x) {
    if (x.dim() != t.m * t.n)
        throw std::invalid_argument("point dimension does not match transform grid");
    std::vector<int> perm = permutation_table(t);
    std::vector<double> out(static_cast<std::size_t>(x.dim()));
    for (int i = 0; i < x.dim(); ++i) out[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = x[i];
    return Point(std::move(out));
}

InvarianceReport check_invariance(const DecisionFunction& f, int m, int n,
                                  const std::vector<GridTransform>& transforms,
                                  std::int64_t samples, std::uint64_t seed,
                                  int threads) {
    validate_grid(m, n);
    if (f.dim() != m * n)
        throw std::invalid_argument("classifier dimension must equal m*n");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (transforms.empty()) throw std::invalid_argument("need at least one transform");

    std::vector<std::vector<int>> perms;
    perms.reserve(transforms.size());
    for (const auto& t : transforms) {
        if (t.m != m || t.n != n)
            throw std::invalid_argument("transform grid does not match (m, n)");
        perms.push_back(permutation_table(t));
    }

    // One violation bitmap per transform; integer sums afterwards keep the
    // report independent of the thread schedule.
    std::vector<std::vector<std::uint8_t>> violated(
        transforms.size(), std::vector<std::uint8_t>(static_cast<std::size_t>(samples), 0));

    int d = f.dim();
    parallel_for(samples, threads, [&](std::int64_t s) {
        RandomStream rng = seeded_stream(seed, static_cast<std::uint64_t>(s));
        std::vector<double> coords(static_cast<std::size_t>(d));
        for (auto& v : coords) v = rng.next_double();
        Point x(coords);
        Label base = f.evaluate(x);
        std::vector<double> moved(static_cast<std::size_t>(d));
        for (std::size_t ti = 0; ti < perms.size(); ++ti) {
            const auto& perm = perms[ti];
            for (int i = 0; i < d; ++i)
                moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = coords[static_cast<std::size_t>(i)];
            if (f.evaluate(Point(moved)) != base)
                violated[ti][static_cast<std::size_t>(s)] = 1;
        }
    });

    InvarianceReport report;
    report.samples = samples;
    for (std::size_t ti = 0; ti < transforms.size(); ++ti) {
        InvarianceRow row;
        row.transform = transforms[ti];
        for (std::uint8_t v : violated[ti]) row.violations += v;
        report.rows.push_back(row);
    }
    return report;
}

void write_invariance_csv(const InvarianceReport& report,
                          const std::vector<GridTransform>& transforms,
                          const std::string& path) {
    if (report.rows.size() != transforms.size())
        throw std::invalid_argument("report/transform length mismatch");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "transform_id,translation_r,translation_c,point_op,violations,samples\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& t = transforms[i];
        out << i << ',' << t.dr << ',' << t.dc << ',' << point_op_name(t.op) << ','
            << report.rows[i].violations << ',' << report.samples << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

OrbitDescriptor orbit_of_ball(const Point& center, int m, int n, double epsilon,
                              const std::vector<GridTransform>& transforms) {
    validate_grid(m, n);
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (center.dim() != m * n)
        throw std::invalid_argument("center dimension does not match grid");
    if (transforms.empty()) throw std::invalid_argument("need at least one transform");

    OrbitDescriptor orbit;
    orbit.epsilon = epsilon;
    orbit.centers.reserve(transforms.size());
    for (const auto& t : transforms) orbit.centers.push_back(apply_transform(t, center));

    std::set<std::vector<double>> distinct;
    for (const auto& p : orbit.centers) distinct.insert(p.coords);
    orbit.distinct_count = distinct.size();
    return orbit;
}

double nearest_orbit_distance(const Point& z, const OrbitDescriptor& orbit) {
    if (orbit.centers.empty()) throw std::invalid_argument("empty orbit");
    double best = distance(z, orbit.centers[0]);
    for (std::size_t i = 1; i < orbit.centers.size(); ++i)
        best = std::min(best, distance(z, orbit.centers[i]));
    return best;
}

double SymmetryClass::log_count(double k) const {
    if (!(k >= 1.0)) throw std::invalid_argument("dimension must be >= 1");
    switch (kind) {
        case Kind::kImagePoly:
            return 2.0 * std::log(k);
        case Kind::kGraphFactorial:
            return std::lgamma(k + 1.0);
    }
    return 0.0;
}

const char* SymmetryClass::name() const {
    return kind == Kind::kImagePoly ? "image_poly" : "graph_factorial";
}

}  // namespace boundarylab
