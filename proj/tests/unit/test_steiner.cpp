#include <doctest.h>

#include <poncelet/steiner.hpp>

#include <numbers>

using namespace poncelet;

namespace {

  // Family of circles in the annulus between radii r and R about the origin.
  auto annulus_family(double R, double r) -> TouchingFamily
  {
    const CircleVector in_between = make_circle(0.5 * (R + r), 0, 0.5 * (R - r));
    for (const int sign : {1, -1})
    {
      TouchingFamily f = touching_family(make_circle(0, 0, R), make_circle(0, 0, r), sign);
      if (incidence_residual(f.plane, in_between) < 1e-12)
        return f;
    }
    FAIL("no family contains the annulus circles");
    return {};
  }

  auto radius(const CircleVector& c) -> Complex
  {
    const CircleVector n = c / c[0];
    return std::sqrt(n[1] * n[1] + n[2] * n[2] - n[3]);
  }

}  // namespace

TEST_CASE("annulus R = 3r closes after six")
{
  const TouchingFamily f = annulus_family(3, 1);
  const CircleVector start = make_circle(2, 0, 1);
  const auto rep = steiner_chain(f, start, 0, 24);
  CHECK(rep.closed);
  CHECK(rep.order == 6);
  for (const auto& e : rep.elements)
    CHECK(std::abs(radius(e) - Complex(1)) < 1e-9);

  const SteinerMultiplier m = steiner_multiplier(f, start);
  CHECK(m.root_of_unity_order == 6);
  CHECK(std::abs(std::pow(m.value, 6) - Complex(1)) < 1e-9);
  CHECK(m.deviation < 1e-8);
}

TEST_CASE("annulus closure matches the multiplier order")
{
  for (int n : {4, 5, 8})
  {
    const double s = std::sin(std::numbers::pi / n);
    const double R = (1 + s) / (1 - s);
    const TouchingFamily f = annulus_family(R, 1);
    const CircleVector start = make_circle(0.5 * (R + 1), 0, 0.5 * (R - 1));
    const auto rep = steiner_chain(f, start, 0, 24);
    CHECK(rep.order == n);
    CHECK(steiner_multiplier(f, start).root_of_unity_order == n);
  }
}

TEST_CASE("candidates touch and steps reverse")
{
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial)
  {
    const TouchingFamily f = touching_family(rng.vector<4>(), rng.vector<4>(), trial % 2 ? 1 : -1);
    const CircleVector s0 = f.circle(rng.disk());
    for (const auto& c : steiner_candidates(f, s0))
      CHECK(scaled_touch_residual(c, s0) < 1e-9);
    const CircleVector s1 = steiner_step(f, s0, std::nullopt);
    const CircleVector s2 = steiner_step(f, s1, s0);
    CHECK(proj_distance(steiner_step(f, s1, s2), normalize(s0)) < 1e-8);
  }
}

TEST_CASE("the chain map is a multiplication")
{
  Rng rng(2);
  int measured = 0;
  for (int trial = 0; trial < 20; ++trial)
  {
    const TouchingFamily f = touching_family(rng.vector<4>(), rng.vector<4>(), 1);
    const SteinerMultiplier m = steiner_multiplier(f);
    // orbits with a multiplier far from the unit circle run into the fixed
    // points within eight steps and lose precision
    if (std::abs(m.value) < 0.2 || std::abs(m.value) > 5)
      continue;
    ++measured;
    CHECK(m.deviation < 1e-8);
    CHECK(m.ratios.size() == 8);
  }
  CHECK(measured >= 10);
}

TEST_CASE("null circle is rejected")
{
  Rng rng(3);
  const TouchingFamily f = touching_family(rng.vector<4>(), rng.vector<4>(), 1);
  const CircleVector n = f.null_circles()[0];
  CHECK_THROWS_AS(steiner_step(f, n, std::nullopt), GeometryError);
}
