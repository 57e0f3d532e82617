#include <cmath>
#include <stdexcept>

#include "boundarylab/classifier_registry.hpp"
#include "boundarylab/stability.hpp"
#include "doctest.h"

using namespace boundarylab;

TEST_SUITE("stability") {

TEST_CASE("wilson interval matches high precision references") {
  // Computed independently with arbitrary-precision arithmetic.
  auto mid = wilson_interval(50, 100);
  CHECK(mid.first == doctest::Approx(0.4038315303659956382).epsilon(1e-12));
  CHECK(mid.second == doctest::Approx(0.5961684696340043618).epsilon(1e-12));

  auto skew = wilson_interval(3, 7);
  CHECK(skew.first == doctest::Approx(0.1582198552514697076).epsilon(1e-12));
  CHECK(skew.second == doctest::Approx(0.7495416354723427782).epsilon(1e-12));

  auto big = wilson_interval(8000, 100000);
  CHECK(big.first == doctest::Approx(0.07833462663065040161).epsilon(1e-12));
  CHECK(big.second == doctest::Approx(0.08169764038391935168).epsilon(1e-12));
}

TEST_CASE("wilson interval boundary cases stay inside [0,1]") {
  auto zero = wilson_interval(0, 10);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == doctest::Approx(0.2775327998628892045).epsilon(1e-12));

  auto full = wilson_interval(10, 10);
  CHECK(full.first == doctest::Approx(0.7224672001371107955).epsilon(1e-12));
  CHECK(full.second == 1.0);

  for (std::int64_t s = 0; s <= 20; ++s) {
    auto ci = wilson_interval(s, 20);
    CHECK(ci.first >= 0.0);
    CHECK(ci.second <= 1.0);
    CHECK(ci.first < ci.second);
    double p = static_cast<double>(s) / 20.0;
    CHECK(ci.first <= p);
    CHECK(ci.second >= p);
  }
  CHECK_THROWS_AS(wilson_interval(-1, 10), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}

TEST_CASE("points near the threshold are flagged unstable") {
  auto clf = make_classifier("threshold1d");
  CHECK_FALSE(is_epsilon_stable(*clf, Point({0.500001}), 0.01, 64, 8, 1));
  CHECK_FALSE(is_epsilon_stable(*clf, Point({0.495}), 0.01, 64, 8, 1));
  CHECK(is_epsilon_stable(*clf, Point({0.9}), 0.01, 64, 8, 1));
  CHECK(is_epsilon_stable(*clf, Point({0.1}), 0.05, 64, 8, 1));
}

TEST_CASE("constant classifier is stable everywhere") {
  auto clf = make_classifier("constant:3");
  CHECK(is_epsilon_stable(*clf, Point({0.2, 0.5, 0.8}), 0.5, 32, 4, 7));
  StabilityReport report = unstable_fraction(*clf, 0.3, 5000, 16, 4, 11, 1);
  CHECK(report.unstable_count == 0);
  CHECK(report.unstable_fraction == 0.0);
  CHECK(report.ci_low == 0.0);
  CHECK(report.ci_high < 0.01);
}

TEST_CASE("threshold classifier has unstable mass about two epsilon") {
  // Points within eps of x=0.5 are the unstable set, measure 2*eps.
  auto clf = make_classifier("threshold1d");
  StabilityReport report = unstable_fraction(*clf, 0.05, 20000, 64, 8, 123, 1);
  CHECK(report.epsilon == 0.05);
  CHECK(report.samples == 20000);
  CHECK(report.unstable_fraction ==
        static_cast<double>(report.unstable_count) / 20000.0);
  CHECK(report.unstable_fraction > 0.09);
  CHECK(report.unstable_fraction < 0.11);
  CHECK(report.ci_low <= report.unstable_fraction);
  CHECK(report.ci_high >= report.unstable_fraction);
  CHECK(report.seed == 123);
  CHECK(report.directions == 64);
  CHECK(report.steps == 8);
}

TEST_CASE("half plane unstable mass is a band around the line") {
  auto clf = make_classifier("halfplane2d");
  StabilityReport report = unstable_fraction(*clf, 0.02, 20000, 64, 8, 9, 1);
  CHECK(std::abs(report.unstable_fraction - 0.04) < 0.008);
}

TEST_CASE("unstable fraction grows with epsilon") {
  auto clf = make_classifier("threshold1d");
  double prev = -1.0;
  for (double eps : {0.02, 0.05, 0.1}) {
    StabilityReport report = unstable_fraction(*clf, eps, 20000, 32, 8, 77, 1);
    CHECK(report.unstable_fraction >= prev);
    prev = report.unstable_fraction;
  }
}

TEST_CASE("reports are identical across reruns and thread counts") {
  auto clf = make_classifier("threshold1d");
  StabilityReport a = unstable_fraction(*clf, 0.05, 5000, 16, 4, 42, 1);
  StabilityReport b = unstable_fraction(*clf, 0.05, 5000, 16, 4, 42, 1);
  StabilityReport c = unstable_fraction(*clf, 0.05, 5000, 16, 4, 42, 8);
  CHECK(a.unstable_count == b.unstable_count);
  CHECK(a.unstable_fraction == b.unstable_fraction);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.unstable_count == c.unstable_count);
  CHECK(a.unstable_fraction == c.unstable_fraction);
  CHECK(a.ci_low == c.ci_low);
  CHECK(a.ci_high == c.ci_high);

  bool any_differs = false;
  for (std::uint64_t s = 43; s <= 47; ++s) {
    StabilityReport d = unstable_fraction(*clf, 0.05, 5000, 16, 4, s, 1);
    if (d.unstable_count != a.unstable_count) any_differs = true;
  }
  CHECK(any_differs);
}

TEST_CASE("estimates converge to the analytic fraction across seeds") {
  auto clf = make_classifier("threshold1d");
  int within = 0;
  const int kSeeds = 20;
  for (int s = 0; s < kSeeds; ++s) {
    StabilityReport r =
        unstable_fraction(*clf, 0.05, 20000, 64, 8, static_cast<std::uint64_t>(s), 1);
    double half_width = (r.ci_high - r.ci_low) / 2.0;
    if (std::abs(r.unstable_fraction - 0.1) < 3.0 * half_width) ++within;
  }
  CHECK(within >= kSeeds - 1);
}

TEST_CASE("stability input validation") {
  auto clf = make_classifier("threshold1d");
  CHECK_THROWS_AS(unstable_fraction(*clf, 0.0, 100, 8, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(unstable_fraction(*clf, 0.05, 0, 8, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(unstable_fraction(*clf, 0.05, 100, 0, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(unstable_fraction(*clf, 0.05, 100, 8, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(is_epsilon_stable(*clf, Point({0.5}), -1.0, 8, 4, 1),
                  std::invalid_argument);
}

TEST_CASE("bisection finds the threshold distance") {
  auto clf = make_classifier("threshold1d");
  auto est = distance_to_boundary(*clf, Point({0.2}), Point({0.9}), 1e-3);
  CHECK(std::abs(est.distance - 0.3) <= 1e-3);
  CHECK(est.tolerance == 1e-3);
  // ceil(log2(0.7 / 1e-3)) bisection steps, endpoints excluded.
  CHECK(est.queries_used == 10);
  // The reported point keeps the original label and sits by the boundary.
  CHECK(clf->evaluate(est.point).index == clf->evaluate(Point({0.2})).index);
  CHECK(est.point.coords[0] < 0.5);
  CHECK(est.point.coords[0] > 0.5 - 2e-3);
  REQUIRE(est.direction.size() == 1);
  CHECK(est.direction[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bisection in two dimensions") {
  auto clf = make_classifier("halfplane2d");
  auto est = distance_to_boundary(*clf, Point({0.1, 0.5}), Point({0.9, 0.5}), 1e-4);
  CHECK(std::abs(est.distance - 0.4) <= 1e-4);
  CHECK(est.queries_used == 13);  // ceil(log2(0.8 / 1e-4))
}

TEST_CASE("bisection respects the segment length upper bound") {
  auto clf = make_classifier("threshold1d");
  for (double a : {0.1, 0.3, 0.45}) {
    for (double b : {0.55, 0.7, 0.95}) {
      auto est = distance_to_boundary(*clf, Point({a}), Point({b}), 1e-4);
      CHECK(est.distance >= 0.0);
      CHECK(est.distance <= b - a);
      CHECK(std::abs(est.distance - (0.5 - a)) <= 1e-4);
    }
  }
}

TEST_CASE("bisection rejects same label endpoints") {
  auto clf = make_classifier("threshold1d");
  CHECK_THROWS_AS(distance_to_boundary(*clf, Point({0.2}), Point({0.3}), 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(distance_to_boundary(*clf, Point({0.2}), Point({0.9}), 0.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
