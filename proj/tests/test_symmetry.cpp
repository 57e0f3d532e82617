#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "boundarylab/classifier_registry.hpp"
#include "boundarylab/rng.hpp"
#include "boundarylab/symmetry.hpp"
#include "doctest.h"

using namespace boundarylab;

namespace {

std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
  // Apply inner first, then outer: cell i lands on outer[inner[i]].
  std::vector<int> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

std::vector<int> identity_perm(int size) {
  std::vector<int> id(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) id[static_cast<std::size_t>(i)] = i;
  return id;
}

LabelRaster make_raster(int m, int n, const std::vector<int>& labels, int label_count) {
  LabelRaster r;
  r.width = n;
  r.height = m;
  r.extent = {0.0, 0.0, 1.0, 1.0};
  r.label_count = label_count;
  r.labels = labels;
  return r;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("group sizes count translations times point ops") {
  CHECK(enumerate_group(2, 3, false).size() == 6);
  CHECK(enumerate_group(2, 3, true).size() == 24);   // non-square keeps 4 ops
  CHECK(enumerate_group(2, 2, true).size() == 32);   // square grids keep all 8
  CHECK(enumerate_group(3, 3, true).size() == 72);
  CHECK(enumerate_group(1, 1, false).size() == 1);
  CHECK_THROWS_AS(enumerate_group(0, 3, false), std::invalid_argument);
}

TEST_CASE("translation moves rows cyclically") {
  GridTransform t{2, 2, 1, 0, PointOp::kIdentity};
  LabelRaster r = make_raster(2, 2, {0, 1, 2, 3}, 4);
  LabelRaster moved = apply_transform(t, r);
  // [[a,b],[c,d]] shifted down one row wraps to [[c,d],[a,b]].
  CHECK(moved.labels == std::vector<int>({2, 3, 0, 1}));
}

TEST_CASE("identity transform leaves rasters unchanged") {
  GridTransform t{3, 3, 0, 0, PointOp::kIdentity};
  std::vector<int> labels(9);
  for (int i = 0; i < 9; ++i) labels[static_cast<std::size_t>(i)] = i % 3;
  LabelRaster r = make_raster(3, 3, labels, 3);
  CHECK(apply_transform(t, r).labels == labels);
}

TEST_CASE("point version matches the raster permutation") {
  GridTransform t{2, 2, 1, 0, PointOp::kIdentity};
  Point p({0.1, 0.2, 0.3, 0.4});
  Point moved = apply_transform(t, p);
  CHECK(moved.coords == std::vector<double>({0.3, 0.4, 0.1, 0.2}));
  CHECK_THROWS_AS(apply_transform(t, Point({0.1, 0.2})), std::invalid_argument);
}

TEST_CASE("rotation by 90 degrees needs a square grid") {
  GridTransform t{2, 3, 0, 0, PointOp::kRot90};
  LabelRaster r = make_raster(2, 3, {0, 1, 2, 3, 4, 5}, 6);
  CHECK_THROWS_AS(apply_transform(t, r), std::invalid_argument);
  CHECK_THROWS_AS(permutation_table(t), std::invalid_argument);
}

TEST_CASE("rot90 twice equals rot180") {
  GridTransform r90{3, 3, 0, 0, PointOp::kRot90};
  GridTransform r180{3, 3, 0, 0, PointOp::kRot180};
  auto p90 = permutation_table(r90);
  auto p180 = permutation_table(r180);
  CHECK(compose(p90, p90) == p180);
}

TEST_CASE("flips are involutions") {
  for (PointOp op : {PointOp::kFlipH, PointOp::kFlipV, PointOp::kTranspose,
                     PointOp::kAntiTranspose}) {
    GridTransform t{4, 4, 0, 0, op};
    auto perm = permutation_table(t);
    CHECK(compose(perm, perm) == identity_perm(16));
  }
}

TEST_CASE("permutation tables are bijections") {
  for (const auto& t : enumerate_group(3, 4, true)) {
    auto perm = permutation_table(t);
    std::set<int> seen(perm.begin(), perm.end());
    CHECK(seen.size() == 12);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 11);
  }
}

TEST_CASE("2x2 parameterizations collapse to the eight grid isometries") {
  auto transforms = enumerate_group(2, 2, true);
  CHECK(transforms.size() == 32);
  auto perms = collapse_to_permutations(transforms);
  CHECK(perms.size() == 8);
}

TEST_CASE("collapse preserves first appearance order") {
  auto transforms = enumerate_group(2, 2, false);
  auto perms = collapse_to_permutations(transforms);
  REQUIRE(perms.size() == 4);  // pure translations stay distinct
  CHECK(perms[0] == identity_perm(4));
}

TEST_CASE("closure identity and inverses hold for small grids") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      auto transforms = enumerate_group(m, n, true);
      auto perms = collapse_to_permutations(transforms);
      std::set<std::vector<int>> group(perms.begin(), perms.end());
      CHECK(group.count(identity_perm(m * n)) == 1);
      for (const auto& a : perms) {
        bool has_inverse = false;
        for (const auto& b : perms) {
          CHECK(group.count(compose(a, b)) == 1);
          if (compose(a, b) == identity_perm(m * n)) has_inverse = true;
        }
        CHECK(has_inverse);
      }
    }
  }
}

TEST_CASE("invariance report is clean for an invariant classifier") {
  // The mean of all cells is preserved by every cell permutation.
  auto clf = make_classifier("mean:6");
  auto transforms = enumerate_group(2, 3, true);
  InvarianceReport report = check_invariance(*clf, 2, 3, transforms, 500, 9, 1);
  REQUIRE(report.rows.size() == transforms.size());
  CHECK(report.samples == 500);
  for (const auto& row : report.rows) CHECK(row.violations == 0);
}

TEST_CASE("invariance report flags a coordinate classifier") {
  // Label = x0 > 0.5 is not invariant under a row shift on a 2x2 grid.
  auto clf = make_classifier("linear:1,0,0,0:-0.5:identity");
  std::vector<GridTransform> shift{{2, 2, 1, 0, PointOp::kIdentity}};
  InvarianceReport report = check_invariance(*clf, 2, 2, shift, 2000, 5, 1);
  REQUIRE(report.rows.size() == 1);
  // Half the samples disagree in expectation; demand well clear of zero.
  CHECK(report.rows[0].violations > 500);
}

TEST_CASE("invariance counts are thread independent") {
  auto clf = make_classifier("linear:1,0,0,0,0,0:-0.4:identity");
  auto transforms = enumerate_group(2, 3, true);
  InvarianceReport serial = check_invariance(*clf, 2, 3, transforms, 1000, 7, 1);
  InvarianceReport threaded = check_invariance(*clf, 2, 3, transforms, 1000, 7, 8);
  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    CHECK(serial.rows[i].violations == threaded.rows[i].violations);
}

TEST_CASE("orbit of a generic centre enumerates every transform image") {
  RandomStream rng(31, 0);
  std::vector<double> coords(9);
  for (auto& c : coords) c = rng.next_double();
  Point center(coords);
  auto transforms = enumerate_group(3, 3, true);
  OrbitDescriptor orbit = orbit_of_ball(center, 3, 3, 0.1, transforms);
  CHECK(orbit.centers.size() == transforms.size());
  CHECK(orbit.epsilon == 0.1);
  // A generic point has trivial stabiliser, so all images are distinct.
  CHECK(orbit.distinct_count == transforms.size());
}

TEST_CASE("constant centre has a single orbit point") {
  Point center({0.5, 0.5, 0.5, 0.5});
  auto transforms = enumerate_group(2, 2, true);
  OrbitDescriptor orbit = orbit_of_ball(center, 2, 2, 0.2, transforms);
  CHECK(orbit.centers.size() == 32);
  CHECK(orbit.distinct_count == 1);
}

TEST_CASE("nearest orbit distance is a minimum over centres") {
  auto transforms = enumerate_group(2, 2, true);
  RandomStream rng(17, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> c(4), z(4);
    for (auto& v : c) v = rng.next_double();
    for (auto& v : z) v = rng.next_double();
    Point center(c);
    Point query(z);
    OrbitDescriptor orbit = orbit_of_ball(center, 2, 2, 0.05, transforms);
    double nu = nearest_orbit_distance(query, orbit);
    double brute = distance(query, orbit.centers[0]);
    for (const auto& p : orbit.centers) brute = std::min(brute, distance(query, p));
    CHECK(nu == brute);
    // The orbit distance can never exceed the distance to the seed centre.
    CHECK(nu <= distance(query, center) + 1e-15);
  }
}

TEST_CASE("a point on its own orbit has distance zero") {
  auto transforms = enumerate_group(3, 3, true);
  RandomStream rng(23, 0);
  std::vector<double> c(9);
  for (auto& v : c) v = rng.next_double();
  Point center(c);
  OrbitDescriptor orbit = orbit_of_ball(center, 3, 3, 0.1, transforms);
  CHECK(nearest_orbit_distance(orbit.centers[5], orbit) == 0.0);
}

TEST_CASE("symmetry class log counts") {
  SymmetryClass image = SymmetryClass::image_poly();
  SymmetryClass graph = SymmetryClass::graph_factorial();
  CHECK(image.log_count(10) == doctest::Approx(2.0 * std::log(10.0)).epsilon(1e-12));
  CHECK(image.log_count(1) == 0.0);
  CHECK(graph.log_count(5) == doctest::Approx(std::log(120.0)).epsilon(1e-12));
  CHECK(graph.log_count(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(image.log_count(0), std::invalid_argument);
  CHECK_THROWS_AS(graph.log_count(-3), std::invalid_argument);
}

TEST_CASE("factorial class grows superlinearly on a log scale") {
  SymmetryClass graph = SymmetryClass::graph_factorial();
  for (double k : {8.0, 16.0, 64.0})
    CHECK(graph.log_count(2 * k) > 2.0 * graph.log_count(k));
  SymmetryClass image = SymmetryClass::image_poly();
  for (double k : {8.0, 16.0, 64.0})
    CHECK(image.log_count(2 * k) < 2.0 * image.log_count(k));
}

TEST_CASE("point op names are distinct") {
  std::set<std::string> names;
  for (PointOp op : {PointOp::kIdentity, PointOp::kRot90, PointOp::kRot180,
                     PointOp::kRot270, PointOp::kFlipH, PointOp::kFlipV,
                     PointOp::kTranspose, PointOp::kAntiTranspose})
    names.insert(point_op_name(op));
  CHECK(names.size() == 8);
}

}  // TEST_SUITE
