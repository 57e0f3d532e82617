#include "boundarylab/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "boundarylab/image_io.hpp"
#include "boundarylab/parallel.hpp"

namespace boundarylab {

void LabeledDataset::validate() const {
    if (points.empty()) throw std::invalid_argument("dataset is empty");
    if (points.size() != labels.size())
        throw std::invalid_argument("point/label count mismatch");
    int d = points[0].dim();
    for (const auto& p : points) {
        if (p.dim() != d) throw std::invalid_argument("points must share one dimension");
    }
    for (double y : labels) {
        if (y != 1.0 && y != -1.0)
            throw std::invalid_argument("labels must be exactly -1 or +1");
    }
}

double rho_useful(const ScalarFeature& feature, const LabeledDataset& data) {
    data.validate();
    if (!feature) throw std::invalid_argument("feature must be callable");
    double sum = 0.0;
    for (std::int64_t i = 0; i < data.size(); ++i)
        sum += data.labels[static_cast<std::size_t>(i)] *
               feature(data.points[static_cast<std::size_t>(i)]);
    return sum / static_cast<double>(data.size());
}

namespace {

// Minimum of y * feature over the zero perturbation and all corners of the
// L-inf box, clipped to the cube. Including the zero perturbation makes
// gamma <= rho exact and gamma(radius 0) == rho bit for bit.
double corner_min(const ScalarFeature& feature, const Point& x, double y,
                  double radius) {
    double best = y * feature(x);
    if (radius <= 0.0) return best;
    int d = x.dim();
    std::vector<double> probe(static_cast<std::size_t>(d));
    std::uint64_t corners = std::uint64_t{1} << d;
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
        for (int i = 0; i < d; ++i) {
            double v = x[i] + ((mask >> i) & 1 ? radius : -radius);
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            probe[static_cast<std::size_t>(i)] = v;
        }
        best = std::min(best, y * feature(Point(probe)));
    }
    return best;
}

// Coordinate descent from the zero perturbation: each sweep tries
// {-radius, 0, +radius} per coordinate, keeping the best. Heuristic, so the
// value is an upper bound on the exhaustive minimum.
double descent_min(const ScalarFeature& feature, const Point& x, double y,
                   double radius, int sweeps) {
    int d = x.dim();
    std::vector<double> delta(static_cast<std::size_t>(d), 0.0);
    std::vector<double> probe(static_cast<std::size_t>(d));
    auto value = [&]() {
        for (int i = 0; i < d; ++i) {
            double v = x[i] + delta[static_cast<std::size_t>(i)];
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            probe[static_cast<std::size_t>(i)] = v;
        }
        return y * feature(Point(probe));
    };
    double best = value();
    if (radius <= 0.0) return best;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (int i = 0; i < d; ++i) {
            double keep = delta[static_cast<std::size_t>(i)];
            double best_offset = keep;
            for (double offset : {-radius, 0.0, radius}) {
                delta[static_cast<std::size_t>(i)] = offset;
                double v = value();
                if (v < best) {
                    best = v;
                    best_offset = offset;
                }
            }
            delta[static_cast<std::size_t>(i)] = best_offset;
        }
    }
    return best;
}

}  // namespace

double gamma_robust(const ScalarFeature& feature, const LabeledDataset& data,
                    const PerturbationSet& delta, int coord_iters, int threads) {
    data.validate();
    if (!feature) throw std::invalid_argument("feature must be callable");
    if (delta.radius < 0.0) throw std::invalid_argument("radius must be >= 0");
    if (coord_iters < 1) throw std::invalid_argument("coord_iters must be >= 1");

    bool exact = data.dim() <= kExactSearchMaxDim;
    std::vector<double> minima(static_cast<std::size_t>(data.size()), 0.0);
    parallel_for(data.size(), threads, [&](std::int64_t i) {
        const Point& x = data.points[static_cast<std::size_t>(i)];
        double y = data.labels[static_cast<std::size_t>(i)];
        minima[static_cast<std::size_t>(i)] =
            exact ? corner_min(feature, x, y, delta.radius)
                  : descent_min(feature, x, y, delta.radius, coord_iters);
    });
    double sum = 0.0;
    for (double v : minima) sum += v;
    return sum / static_cast<double>(data.size());
}

std::vector<FeatureUsefulness> fragility_scan(
    const std::vector<std::pair<std::string, ScalarFeature>>& features,
    const LabeledDataset& data, const PerturbationSet& delta, int coord_iters,
    int threads) {
    if (features.empty()) throw std::invalid_argument("need at least one feature");
    std::vector<FeatureUsefulness> rows;
    rows.reserve(features.size());
    for (const auto& [name, feature] : features) {
        FeatureUsefulness row;
        row.feature_id = name;
        row.rho = rho_useful(feature, data);
        row.gamma = gamma_robust(feature, data, delta, coord_iters, threads);
        row.delta_spec = delta;
        row.exact = data.dim() <= kExactSearchMaxDim;
        if (row.gamma > row.rho + 1e-9)
            throw std::logic_error("gamma exceeded rho; search is inconsistent");
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        double ga = a.rho - a.gamma;
        double gb = b.rho - b.gamma;
        if (ga != gb) return ga > gb;
        return a.feature_id < b.feature_id;
    });
    return rows;
}

LabeledDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("dataset file is empty");

    // Header x0..x{d-1},y fixes the dimension.
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header.back() != "y")
        throw std::invalid_argument("dataset header must be x0..x{d-1},y");
    int d = static_cast<int>(header.size()) - 1;
    for (int i = 0; i < d; ++i) {
        if (header[static_cast<std::size_t>(i)] != "x" + std::to_string(i))
            throw std::invalid_argument("dataset header must be x0..x{d-1},y");
    }

    LabeledDataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                values.push_back(v);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad number in dataset line " +
                                            std::to_string(line_no));
            }
        }
        if (values.size() != header.size())
            throw std::invalid_argument("wrong column count in dataset line " +
                                        std::to_string(line_no));
        double y = values.back();
        values.pop_back();
        if (y == 0.0) y = -1.0;  // 0/1 labels remap to -1/+1
        if (y != 1.0 && y != -1.0)
            throw std::invalid_argument("bad label in dataset line " +
                                        std::to_string(line_no));
        data.points.push_back(Point(std::move(values)));
        data.labels.push_back(y);
    }
    data.validate();
    return data;
}

void write_fragility_csv(const std::vector<FeatureUsefulness>& rows,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "feature,rho,gamma,gap,exact\n";
    for (const auto& r : rows) {
        out << r.feature_id << ',' << format_double(r.rho) << ','
            << format_double(r.gamma) << ',' << format_double(r.rho - r.gamma) << ','
            << (r.exact ? 1 : 0) << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace boundarylab
