#include <doctest.h>

#include "oracles.hpp"

#include <poncelet/circle_space.hpp>

#include <numbers>

using namespace poncelet;

namespace {

  const CircleVector unit(1, 0, 0, -1);
  const CircleVector shifted(1, -std::sqrt(2.0), 0, 1);  // radius 1 about (sqrt2, 0)

  auto random_circle(Rng& rng) -> CircleVector
  {
    return make_circle(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 1.5));
  }

}  // namespace

TEST_CASE("q form and polar")
{
  CHECK(std::abs(q_form(unit) - Complex(-1)) < 1e-15);
  CHECK(std::abs(q_form(CircleVector(1, 0, 0, 0))) == 0.0);
  CHECK(std::abs(q_pair(unit, shifted)) < 1e-15);

  Rng rng(1);
  for (int i = 0; i < 20; ++i)
  {
    const CircleVector a = rng.vector<4>();
    const CircleVector b = rng.vector<4>();
    CHECK(q_pair(a, b) == q_pair(b, a));
    CHECK(std::abs(q_pair(a, a) - q_form(a)) < 1e-15);
    CHECK(std::abs(q_pair(a, b) - bdot(a, circle_gram() * b)) < 1e-15);
  }
}

TEST_CASE("orthogonality")
{
  CHECK(is_orthogonal(unit, shifted));
  CHECK_FALSE(is_orthogonal(unit, CircleVector(1, 0, 0, -4)));
  CHECK(std::abs(q_pair(unit, CircleVector(1, 0, 0, -4)) - Complex(-2.5)) < 1e-15);
  CHECK_FALSE(is_orthogonal(unit, unit));
  CHECK(std::abs(oracle::crossing_cosine(unit, shifted)) < 1e-12);

  Rng rng(2);
  for (int i = 0; i < 30; ++i)
  {
    const auto o = oracle::orthogonal_pair(rng);
    const auto g = oracle::crossing_pair(rng);
    CHECK(is_orthogonal(o[0], rng.disk() * o[1]));
    CHECK(std::abs(oracle::crossing_cosine(o[0], o[1])) < 1e-12);
    CHECK(is_orthogonal(g[0], g[1]) == (std::abs(oracle::crossing_cosine(g[0], g[1])) < 1e-9));
  }
}

TEST_CASE("tangent cones")
{
  Rng rng(3);
  for (int i = 0; i < 10; ++i)
  {
    const CircleVector c = random_circle(rng);
    const Matrix4 cone = tangent_cone(c);
    CHECK(numerical_rank(cone, 1e-9) == 3);
    CHECK((cone * c).norm() < 1e-12 * cone.norm());

    const Point2 p(rng.uniform(-1, 1), rng.uniform(-1, 1), 1.0);
    CHECK(numerical_rank(tangent_cone(null_circle_at(p)), 1e-9) == 1);

    // internally tangent circle from the centre and radius
    const Complex m0 = -c[1];
    const Complex m1 = -c[2];
    const Complex radius = std::sqrt(m0 * m0 + m1 * m1 - c[3]);
    const CircleVector inner =
        oracle::inner_touching(m0, m1, radius, 0.3 * radius, rng.uniform(0, 2 * std::numbers::pi));
    CHECK(form_residual(cone, inner) < 1e-9);
    CHECK(scaled_touch_residual(c, inner) < 1e-9);
  }
}

TEST_CASE("touch residual")
{
  CHECK(std::abs(touch_residual(unit, make_circle(2, 0, 1))) < 1e-14);
  CHECK(std::abs(touch_residual(unit, CircleVector(1, 0, 0, -4))) > 1e-3);
  CHECK(std::abs(touch_residual(unit, unit)) == 0.0);
}

TEST_CASE("touching families")
{
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial)
  {
    const CircleVector c1 = rng.vector<4>();
    const CircleVector c2 = rng.vector<4>();
    const auto fams = touching_families(c1, c2);
    const auto nulls = null_circles(c1, c2);
    for (const auto& f : fams)
    {
      for (int i = 0; i < 20; ++i)
      {
        const CircleVector s = f.circle(2.0 * rng.disk());
        CHECK(scaled_touch_residual(s, c1) < 1e-9);
        CHECK(scaled_touch_residual(s, c2) < 1e-9);
        CHECK(incidence_residual(f.plane, s) < 1e-9);
        const auto back = f.parameter(s);
        CHECK(proj_distance(f.circle(back), s) < 1e-8);
      }
      for (const auto& n : nulls)
        CHECK(incidence_residual(f.plane, n) < 1e-9);
    }
    // the other branch of sqrt q(c1) swaps the families
    const auto flipped = touching_family(c1, c2, 1, {}, -1, 1);
    CHECK(wedge_ratio(flipped.plane, fams[1].plane) < 1e-12);
  }
  CHECK_THROWS_AS(touching_family(CircleVector(1, 0, 0, 0), unit, 1), GeometryError);
}

TEST_CASE("null circles")
{
  const auto n = null_circles(unit, shifted);
  for (const auto& c : n)
  {
    CHECK(std::abs(q_form(c)) < 1e-14);
    CHECK(std::abs(q_pair(c, unit)) < 1e-14);
    CHECK(std::abs(q_pair(c, shifted)) < 1e-14);
  }
  // the crossing points are (1/sqrt2, +-1/sqrt2)
  const double h = 1.0 / std::sqrt(2.0);
  const CircleVector want = null_circle_at(Point2(h, h, 1));
  CHECK((proj_distance(n[0], want) < 1e-12 || proj_distance(n[1], want) < 1e-12));
  CHECK_THROWS_AS(null_circles(unit, make_circle(2, 0, 1)), GeometryError);
}

TEST_CASE("common line")
{
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial)
  {
    const CircleVector c1 = rng.vector<4>();
    const CircleVector c2 = rng.vector<4>();
    const CircleVector c3 = rng.vector<4>();
    const auto line = common_line(c1, c2, c3, 1, 1, -1);
    REQUIRE(line);
    for (const auto& [s, t] : {std::pair{1, 2}, {1, 3}, {2, 3}})
    {
      const CircleVector& a = s == 1 ? c1 : c2;
      const CircleVector& b = t == 2 ? c2 : c3;
      const int eps = (s == 2 && t == 3) ? -1 : 1;
      const Plane3 p = family_plane(a, b, eps, family_root(a), family_root(b));
      CHECK(incidence_residual(p, line->p) < 1e-9);
      CHECK(incidence_residual(p, line->q) < 1e-9);
    }
    CHECK_FALSE(common_line(c1, c2, c3, 1, 1, 1).has_value());
    // flipping one root keeps the outcome
    CHECK(common_line(c1, c2, c3, 1, 1, -1, {}, {1, -1, 1}).has_value() ==
          common_line(c1, c2, c3, 1, 1, -1).has_value());
  }
}

TEST_CASE("touching cones touch along the joining line")
{
  Rng rng(6);
  const CircleVector c1 = make_circle(0, 0, 1);
  const CircleVector c2 = oracle::inner_touching(0.0, 0.0, 1.0, 0.4, 0.7);
  REQUIRE(scaled_touch_residual(c1, c2) < 1e-12);
  const Matrix4 k1 = tangent_cone(c1);
  const Matrix4 k2 = tangent_cone(c2);
  for (int i = 0; i < 5; ++i)
  {
    const CircleVector x = c1 + rng.disk() * c2;
    CHECK(wedge_ratio(k1 * x, k2 * x) < 1e-8);
  }
}
