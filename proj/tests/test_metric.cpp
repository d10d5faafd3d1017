#include "helpers.hpp"

#include "hinges/metric.hpp"

#include <cmath>
#include <set>

using namespace hinges;
using namespace hinges::testing;

namespace {

RVec pt1(double x) {
  RVec v(1);
  v << x;
  return v;
}

ClosedSetSample line_set(const std::vector<double>& xs, double resolution = 0.0) {
  ClosedSetSample s;
  s.space = MetricSpace::euclidean(1);
  s.resolution = resolution;
  for (double x : xs) s.points.push_back(pt1(x));
  return s;
}

}  // namespace

TEST_CASE("euclidean distance") {
  const auto space = MetricSpace::euclidean(2);
  RVec a(2), b(2);
  a << 0, 0;
  b << 3, 4;
  CHECK(space->distance(a, b) == doctest::Approx(5.0));
  CHECK(space->id == "euclidean:2");
}

TEST_CASE("grassmann distance is the gap") {
  const auto space = MetricSpace::grassmann(Field::Complex, 1);
  const double theta = 0.4;
  const Point a = subspace_of(Field::Complex, 2, {{1, 0}});
  const Point b = subspace_of(Field::Complex, 2, {{std::cos(theta), std::sin(theta)}});
  CHECK(space->distance(a, b) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
  CHECK(space->id == "grassmann:complex:1");
}

TEST_CASE("hausdorff distance of finite line sets") {
  CHECK(hausdorff_distance(line_set({0.0, 1.0}), line_set({0.25})) == doctest::Approx(0.75));
  CHECK(hausdorff_distance(line_set({0.25}), line_set({0.0, 1.0})) == doctest::Approx(0.75));
  CHECK(hausdorff_distance(line_set({0.0, 1.0}), line_set({0.0, 1.0})) == doctest::Approx(0.0));
}

TEST_CASE("hausdorff distance between subspace samples") {
  const auto space = MetricSpace::grassmann(Field::Complex, 1);
  ClosedSetSample a, b;
  a.space = space;
  b.space = space;
  a.points.push_back(subspace_of(Field::Complex, 2, {{1, 0}}));
  b.points.push_back(subspace_of(Field::Complex, 2, {{0, 1}}));
  CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff rejects bad operands") {
  CHECK_THROWS_AS(hausdorff_distance(line_set({}), line_set({0.0})), DomainError);
  ClosedSetSample other;
  other.space = MetricSpace::euclidean(2);
  RVec v(2);
  v << 0, 0;
  other.points.push_back(v);
  CHECK_THROWS_AS(hausdorff_distance(line_set({0.0}), other), DomainError);
}

TEST_CASE("point to sample distance") {
  const auto s = line_set({0.0, 2.0});
  CHECK(point_to_sample(pt1(0.5), s) == doctest::Approx(0.5));
  CHECK(point_to_sample(pt1(1.5), s) == doctest::Approx(0.5));
  CHECK_THROWS_AS(point_to_sample(pt1(0.0), line_set({})), DomainError);
}

TEST_CASE("upper and lower limits of an alternating sequence") {
  const auto a = line_set({0.0, 1.0});
  const auto b = line_set({0.0, 2.0});
  std::vector<ClosedSetSample> seq;
  for (int i = 0; i < 8; ++i) seq.push_back(i % 2 == 0 ? a : b);
  const auto probes = line_set({0.0, 1.0, 2.0});

  const auto up = limsup_set(seq, probes, 1e-6);
  REQUIRE(up.points.size() == 3);
  const auto lo = liminf_set(seq, probes, 1e-6);
  REQUIRE(lo.points.size() == 1);
  CHECK(point_to_sample(pt1(0.0), lo) == doctest::Approx(0.0));
}

TEST_CASE("limits ignore a transient prefix") {
  std::vector<ClosedSetSample> seq;
  for (int i = 0; i < 3; ++i) seq.push_back(line_set({42.0}));
  for (int i = 0; i < 13; ++i) seq.push_back(line_set({1.0}));
  const auto probes = line_set({42.0, 1.0});
  const auto up = limsup_set(seq, probes, 1e-6);
  REQUIRE(up.points.size() == 1);
  CHECK(point_to_sample(pt1(1.0), up) == doctest::Approx(0.0));
  const auto lo = liminf_set(seq, probes, 1e-6);
  REQUIRE(lo.points.size() == 1);
}

TEST_CASE("a quarter of the tail is frequent enough") {
  const auto a = line_set({0.0, 1.0});
  const auto b = line_set({0.0});
  std::vector<ClosedSetSample> seq;
  for (int i = 0; i < 16; ++i) seq.push_back(i % 4 == 0 ? a : b);
  const auto probes = line_set({0.0, 1.0});
  const auto up = limsup_set(seq, probes, 1e-6);
  CHECK(up.points.size() == 2);

  std::vector<ClosedSetSample> rare;
  rare.push_back(a);
  for (int i = 0; i < 15; ++i) rare.push_back(b);
  const auto up2 = limsup_set(rare, probes, 1e-6);
  REQUIRE(up2.points.size() == 1);
  CHECK(point_to_sample(pt1(0.0), up2) == doctest::Approx(0.0));
}

TEST_CASE("default radius is half the smallest resolution") {
  std::vector<ClosedSetSample> seq(4, line_set({0.0}, 0.5));
  auto probes = line_set({0.2, 0.3}, 0.5);
  const auto up = limsup_set(seq, probes);
  REQUIRE(up.points.size() == 1);
  CHECK(point_to_sample(pt1(0.2), up) == doctest::Approx(0.0));
}

TEST_CASE("limits match the periodic oracle on random finite spaces") {
  std::mt19937_64 rng(2024);
  const auto space = MetricSpace::euclidean(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int universe = 6 + static_cast<int>(rng() % 7);
    std::vector<Point> pts;
    for (int i = 0; i < universe; ++i) {
      RVec v(2);
      v << static_cast<double>(i), static_cast<double>((i * i) % 5);
      pts.push_back(v);
    }
    const int period = 1 + static_cast<int>(rng() % 4);
    std::vector<std::set<int>> cycle(period);
    for (auto& s : cycle)
      while (s.empty())
        for (int i = 0; i < universe; ++i)
          if (rng() % 3 == 0) s.insert(i);

    auto set_of = [&](const std::set<int>& idx) {
      ClosedSetSample s;
      s.space = space;
      for (int i : idx) s.points.push_back(pts[i]);
      return s;
    };
    std::vector<ClosedSetSample> seq;
    for (int i = 0; i < 16; ++i) seq.push_back(set_of(cycle[i % period]));

    std::set<int> uni, meet;
    for (int i = 0; i < universe; ++i) meet.insert(i);
    for (int i = 8; i < 16; ++i) {
      const auto& c = cycle[i % period];
      uni.insert(c.begin(), c.end());
      std::set<int> next;
      for (int j : c)
        if (meet.count(j)) next.insert(j);
      meet = next;
    }

    ClosedSetSample probes;
    probes.space = space;
    probes.points = pts;
    const auto up = limsup_set(seq, probes, 0.25);
    const auto lo = liminf_set(seq, probes, 0.25);
    CHECK(up.points.size() == uni.size());
    CHECK(lo.points.size() == meet.size());
    for (int i : uni) CHECK(point_to_sample(pts[i], up) == doctest::Approx(0.0));
    if (!lo.is_empty_set())
      for (int i : meet) CHECK(point_to_sample(pts[i], lo) == doctest::Approx(0.0));
  }
}

TEST_CASE("limit clusters of a convergent sequence") {
  std::vector<ClosedSetSample> seq;
  for (int j = 0; j <= 8; ++j) seq.push_back(line_set({std::pow(4.0, -j)}));
  const auto clusters = limit_clusters(seq, 0.01);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].rep == 8);
  CHECK(clusters[0].members == std::vector<int>{4, 5, 6, 7, 8});

  const auto classes = limit_classes(seq, 0.01);
  REQUIRE(classes.size() == 1);
  CHECK(point_to_sample(pt1(std::pow(4.0, -8)), classes[0]) == doctest::Approx(0.0));
}

TEST_CASE("limit clusters of an alternating sequence") {
  std::vector<ClosedSetSample> seq;
  for (int i = 0; i < 8; ++i) seq.push_back(line_set({i % 2 == 0 ? 0.0 : 5.0}));
  const auto classes = limit_classes(seq, 0.1);
  CHECK(classes.size() == 2);
}

TEST_CASE("a wandering sequence has no limit at tolerance") {
  std::vector<ClosedSetSample> seq;
  for (int i = 0; i < 4; ++i) seq.push_back(line_set({static_cast<double>(i)}));
  CHECK_THROWS_WITH_AS(limit_clusters(seq, 0.1), "unresolved limit at tolerance", DomainError);
}

TEST_CASE("metric validation accepts the euclidean plane") {
  const auto space = MetricSpace::euclidean(2);
  std::vector<Point> pts;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  for (int i = 0; i < 10; ++i) {
    RVec v(2);
    v << dist(rng), dist(rng);
    pts.push_back(v);
  }
  CHECK_NOTHROW(validate_metric_on_points(*space, pts));
}

TEST_CASE("mixed point kinds are rejected") {
  const auto space = MetricSpace::euclidean(1);
  const Point good = pt1(0.0);
  const Point bad = subspace_of(Field::Complex, 2, {{1, 0}});
  CHECK_THROWS_AS(space->distance(good, bad), DomainError);
}
