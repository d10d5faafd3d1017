#include "helpers.hpp"

#include "hinges/hinge.hpp"

#include <cmath>

using namespace hinges;
using namespace hinges::testing;

namespace {

GridSpec small_grid() {
  GridSpec g;
  g.moduli = 17;
  g.phases = 8;
  return g;
}

Hinge chain_hinge() { return hinge_with_derived_q({rel(v2()), rel(v4())}); }

std::vector<double> decade_probes(int lo, int hi) {
  std::vector<double> p;
  for (int e = lo; e <= hi; ++e) p.push_back(std::pow(10.0, e));
  return p;
}

Mat diag2(double a, double b) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

}  // namespace

TEST_CASE("derived interleaving relations of the two-step chain") {
  const auto q = derive_q({rel(v2()), rel(v4())});
  REQUIRE(q.size() == 3);
  CHECK(gap_distance(q[0].space(), v1()) < 1e-10);
  CHECK(gap_distance(q[1].space(), v3()) < 1e-10);
  CHECK(gap_distance(q[2].space(), v5()) < 1e-10);
}

TEST_CASE("inconsistent chains cannot derive interleavings") {
  CHECK_THROWS_AS(derive_q({rel(v2()), rel(v2())}), DomainError);
  CHECK_THROWS_AS(derive_q({}), UsageError);
}

TEST_CASE("the derived hinge validates") {
  const auto h = chain_hinge();
  CHECK(h.k() == 2);
  const auto report = validate_hinge(h);
  CHECK(report.pass);
  CHECK_NOTHROW(require_valid_hinge(h));
}

TEST_CASE("validation flags a reversed chain") {
  Hinge h = chain_hinge();
  std::swap(h.p[0], h.p[1]);
  const auto report = validate_hinge(h);
  CHECK_FALSE(report.pass);
  CHECK_THROWS_AS(require_valid_hinge(h), DomainError);
}

TEST_CASE("validation flags a moving end relation") {
  Hinge h = chain_hinge();
  h.q[0] = LinearRelation::graph(Field::Complex, Mat::Identity(2, 2));
  const auto report = validate_hinge(h);
  CHECK_FALSE(report.pass);
  bool fixedness_failed = false;
  for (const auto& c : report.checks)
    if (c.axiom == "fixedness" && !c.pass) fixedness_failed = true;
  CHECK(fixedness_failed);
}

TEST_CASE("validation flags wrong endpoints") {
  Hinge h = chain_hinge();
  std::swap(h.q.front(), h.q.back());
  const auto report = validate_hinge(h);
  CHECK_FALSE(report.pass);
  bool endpoint_failed = false;
  for (const auto& c : report.checks)
    if (c.axiom == "endpoints" && !c.pass) endpoint_failed = true;
  CHECK(endpoint_failed);
}

TEST_CASE("validation flags a fixed relation posing as moving") {
  Hinge h = chain_hinge();
  h.p[0] = rel(v3());
  CHECK_FALSE(validate_hinge(h).pass);
}

TEST_CASE("validation flags a chain whose kernels do not drop") {
  Hinge h;
  h.field = Field::Complex;
  h.n = 2;
  h.p = {rel(v2()), scale_relation(cplx(2, 0), rel(v2()))};
  h.q = {rel(v1()), rel(v3()), rel(v5())};
  CHECK_FALSE(validate_hinge(h).pass);
}

TEST_CASE("one-step hinge of an invertible matrix") {
  const auto h = hinge_of_invertible(Field::Complex, Mat::Identity(2, 2));
  CHECK(h.k() == 1);
  CHECK(validate_hinge(h).pass);
  CHECK(gap_distance(h.q[0].space(), v1()) < 1e-10);
  CHECK(gap_distance(h.q[1].space(), v5()) < 1e-10);
  CHECK_THROWS_AS(hinge_of_invertible(Field::Complex, Mat::Zero(2, 2)), DomainError);
}

TEST_CASE("scaling grid sizes") {
  GridSpec g;
  CHECK(scaling_grid(Field::Complex, g).size() == 33u * 16u);
  CHECK(scaling_grid(Field::Real, g).size() == 66u);
  g.positive_only = true;
  CHECK(scaling_grid(Field::Real, g).size() == 33u);
  g.moduli = 0;
  CHECK_THROWS_AS(scaling_grid(Field::Real, g), UsageError);
}

TEST_CASE("hinge sample carries the fixed points and the orbits") {
  const auto h = chain_hinge();
  const auto s = hinge_to_sample(h, small_grid());
  CHECK(s.points.size() == 3 + 2u * 17u * 8u);
  CHECK(s.resolution > 0.0);
  CHECK(point_to_sample(Point(v1()), s) == doctest::Approx(0.0));
  CHECK(point_to_sample(Point(v3()), s) == doctest::Approx(0.0));
  CHECK(point_to_sample(Point(v2()), s) == doctest::Approx(0.0));
}

TEST_CASE("orbit closure of an invertible graph includes both endpoint limits") {
  const auto g = LinearRelation::graph(Field::Complex, diag2(1, 2));
  const auto s = orbit_closure_sample(g, small_grid());
  CHECK(point_to_sample(Point(v1()), s) == doctest::Approx(0.0));
  CHECK(point_to_sample(Point(v5()), s) == doctest::Approx(0.0));
  CHECK(point_to_sample(Point(g.space()), s) == doctest::Approx(0.0));
  CHECK_THROWS_AS(orbit_closure_sample(rel(v3()), small_grid()), DomainError);
  CHECK_THROWS_AS(orbit_closure_sample(rel(v2()), small_grid()), DomainError);
}

TEST_CASE("orbit closures along a widening diagonal family settle on the hinge sample") {
  std::vector<Mat> family;
  for (int e = 1; e <= 6; ++e) family.push_back(diag2(1, std::pow(10.0, e)));
  const auto limit = limit_of_orbit_closures(Field::Complex, family, small_grid(), 0.05);
  const auto target = hinge_to_sample(chain_hinge(), small_grid());
  CHECK(hausdorff_distance(limit, target) <= 0.05);
}

TEST_CASE("an alternating family has no single limit class") {
  std::vector<Mat> family;
  for (int i = 0; i < 4; ++i) {
    family.push_back(diag2(1, 10));
    family.push_back(diag2(10, 1));
  }
  CHECK_THROWS_WITH_AS(limit_of_orbit_closures(Field::Complex, family, small_grid(), 0.05),
                       doctest::Contains("sequence has multiple limit classes"), DomainError);
}

TEST_CASE("limit hinge of the diagonal family is the two-step chain") {
  const MatrixFamily g = [](double t) { return diag2(1, t); };
  const auto h = hinge_limit(Field::Complex, g, decade_probes(1, 6), 1e-6);
  REQUIRE(h.k() == 2);
  CHECK(validate_hinge(h).pass);
  CHECK(equal_mod_scale(h.p[0], rel(v2()), 1e-6));
  CHECK(equal_mod_scale(h.p[1], rel(v4()), 1e-6));
  CHECK(gap_distance(h.q[0].space(), v1()) < 1e-6);
  CHECK(gap_distance(h.q[1].space(), v3()) < 1e-6);
  CHECK(gap_distance(h.q[2].space(), v5()) < 1e-6);
}

TEST_CASE("a constant invertible family limits onto its own graph") {
  std::mt19937_64 rng(17);
  const Mat a = gaussian(rng, Field::Complex, 3, 3) + 3.0 * Mat::Identity(3, 3);
  const MatrixFamily g = [&a](double) { return a; };
  const auto h = hinge_limit(Field::Complex, g, decade_probes(1, 4), 1e-6);
  REQUIRE(h.k() == 1);
  CHECK(equal_mod_scale(h.p[0], LinearRelation::graph(Field::Complex, a), 1e-6));
}

TEST_CASE("a family scaling as a whole is a one-step hinge") {
  const MatrixFamily g = [](double t) { return (t * Mat::Identity(2, 2)).eval(); };
  const auto h = hinge_limit(Field::Complex, g, decade_probes(1, 6), 1e-6);
  REQUIRE(h.k() == 1);
  CHECK(equal_mod_scale(h.p[0], LinearRelation::graph(Field::Complex, Mat::Identity(2, 2)),
                        1e-6));
}

TEST_CASE("limit hinge of a conjugated three-scale family") {
  std::mt19937_64 rng(23);
  const Mat u = random_unitary(rng, Field::Complex, 3);
  const Mat w = random_unitary(rng, Field::Complex, 3);
  const MatrixFamily g = [&](double t) {
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = t * t;
    d(1, 1) = t;
    d(2, 2) = 1.0;
    return (u * d * w).eval();
  };
  const auto h = hinge_limit(Field::Complex, g, decade_probes(1, 6), 1e-3);
  REQUIRE(h.k() == 3);
  CHECK(validate_hinge(h).pass);
  CHECK(h.p[0].ker().dim() == 2);
  CHECK(h.p[1].ker().dim() == 1);
  CHECK(h.p[2].ker().dim() == 0);
}

TEST_CASE("limit hinge needs enough probes and invertible members") {
  const MatrixFamily g = [](double t) { return diag2(1, t); };
  CHECK_THROWS_AS(hinge_limit(Field::Complex, g, {10.0}, 1e-6), UsageError);
  const MatrixFamily s = [](double) { return diag2(1, 0); };
  CHECK_THROWS_AS(hinge_limit(Field::Complex, s, decade_probes(1, 3), 1e-6), DomainError);
}

TEST_CASE("extraction undoes sampling") {
  const auto h = chain_hinge();
  const auto back = extract_hinge_from_sample(hinge_to_sample(h, small_grid()), 1e-6);
  CHECK(hinges_equal_mod_scale(back, h, 1e-6));

  std::mt19937_64 rng(29);
  const Mat a = gaussian(rng, Field::Complex, 2, 2) + 2.0 * Mat::Identity(2, 2);
  const auto h1 = hinge_of_invertible(Field::Complex, a);
  const auto back1 = extract_hinge_from_sample(hinge_to_sample(h1, small_grid()), 1e-6);
  CHECK(hinges_equal_mod_scale(back1, h1, 1e-6));
}

TEST_CASE("a sample of fixed points alone is not a hinge set") {
  ClosedSetSample s;
  s.space = MetricSpace::grassmann(Field::Complex, 2);
  s.points = {Point(v1()), Point(v5())};
  CHECK_THROWS_AS(extract_hinge_from_sample(s, 1e-6), DomainError);
}

TEST_CASE("hinge equality mod scale") {
  const auto h = chain_hinge();
  Hinge scaled = h;
  scaled.p[0] = scale_relation(cplx(0, 5), scaled.p[0]);
  scaled.p[1] = scale_relation(cplx(-2, 1), scaled.p[1]);
  CHECK(hinges_equal_mod_scale(h, scaled, 1e-8));
  CHECK_FALSE(hinges_equal_mod_scale(h, hinge_of_invertible(Field::Complex, Mat::Identity(2, 2)),
                                     1e-8));
}
