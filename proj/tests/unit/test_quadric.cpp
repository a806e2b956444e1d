#include <doctest.h>

#include "oracles.hpp"

#include <poncelet/quadric.hpp>
#include <poncelet/revolution.hpp>
#include <poncelet/three_conics.hpp>

#include <algorithm>

using namespace poncelet;

namespace {

  auto diag4(Complex a, Complex b, Complex c, Complex d) -> Quadric
  {
    Quadric q = Quadric::Zero();
    q(0, 0) = a;
    q(1, 1) = b;
    q(2, 2) = c;
    q(3, 3) = d;
    return q;
  }

  auto same_line(const Line3& a, const Line3& b) -> bool
  {
    return proj_distance(plucker(a), plucker(b)) < 1e-9;
  }

  auto line_on_quadric(const Quadric& q, const Line3& l) -> bool
  {
    for (const double s : {0.0, 0.37, -2.1})
      if (form_residual(q, Point3(l.p + s * l.q)) > 1e-10)
        return false;
    return true;
  }

}  // namespace

TEST_CASE("pencil discriminant")
{
  const QuarticForm g = pencil_discriminant(Quadric::Identity(), diag4(2, 3, 0, 5));
  const QuarticForm same = pencil_discriminant(Quadric::Identity(), Quadric::Identity());
  Rng rng(2);
  for (int i = 0; i < 5; ++i)
  {
    const Complex l1 = rng.disk();
    const Complex l2 = rng.disk();
    const Complex want = l1 * (l1 + 2.0 * l2) * (l1 + 3.0 * l2) * (l1 + 5.0 * l2);
    CHECK(std::abs(g(l1, l2) - want) < 1e-12);
    CHECK(std::abs(same(l1, l2) - std::pow(l1 + l2, 4)) < 1e-12);
  }

  const Quadric a = rng.symmetric<4>();
  const Quadric b = rng.symmetric<4>();
  const QuarticForm d = pencil_discriminant(a, b);
  for (int i = 0; i < 5; ++i)
  {
    const Complex l1 = rng.disk();
    const Complex l2 = rng.disk();
    const Complex direct = Quadric(l1 * a + l2 * b).determinant();
    CHECK(std::abs(d(l1, l2) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("intersection kind")
{
  Rng rng(4);
  CHECK(intersection_kind(rng.symmetric<4>(), rng.symmetric<4>()) == IntersectionKind::SmoothElliptic);
  const RevolutionQuadric q1{0.5, 0.2, 1.0};
  const RevolutionQuadric q2{1.5, -0.3, 0.4};
  CHECK(intersection_kind(q1.matrix(), q2.matrix()) == IntersectionKind::TwoConics);
  const Quadric q = rng.symmetric<4>();
  CHECK(intersection_kind(q, q) == IntersectionKind::Degenerate);
}

TEST_CASE("lines through a point")
{
  // xw - yz
  Quadric segre = Quadric::Zero();
  segre(0, 3) = segre(3, 0) = 0.5;
  segre(1, 2) = segre(2, 1) = -0.5;
  const auto lines = lines_through_point(segre, Point3(1, 0, 0, 0));
  REQUIRE(lines.size() == 2);
  const Line3 yw{Point3(1, 0, 0, 0), Point3(0, 0, 1, 0)};
  const Line3 zw{Point3(1, 0, 0, 0), Point3(0, 1, 0, 0)};
  CHECK(((same_line(lines[0], yw) && same_line(lines[1], zw)) ||
         (same_line(lines[0], zw) && same_line(lines[1], yw))));

  const Complex i(0, 1);
  const auto sphere = lines_through_point(Quadric::Identity(), Point3(1, i, 0, 0));
  REQUIRE(sphere.size() == 2);
  for (const auto& l : sphere)
    CHECK(line_on_quadric(Quadric::Identity(), l));
  CHECK_FALSE(same_line(sphere[0], sphere[1]));

  const Quadric cone = diag4(1, 1, -1, 0);
  const auto gen = lines_through_point(cone, Point3(1, 0, 1, 0));
  REQUIRE(gen.size() == 1);
  CHECK(line_on_quadric(cone, gen[0]));
  CHECK(lines_meet_residual(gen[0], Line3{Point3(0, 0, 0, 1), Point3(1, 0, 1, 0)}) < 1e-12);

  CHECK_THROWS_AS(lines_through_point(cone, Point3(0, 0, 0, 1)), GeometryError);
  CHECK_THROWS_AS(lines_through_point(cone, Point3(1, 0, 0, 0)), GeometryError);
}

TEST_CASE("ruling involutions are involutions and stay on both quadrics")
{
  Rng rng(6);
  const Quadric a = rng.symmetric<4>();
  const Quadric b = rng.symmetric<4>();
  const Ruling r1(a, 1);
  const Ruling r2(b, -1);
  for (int i = 0; i < 50; ++i)
  {
    const Point3 e = random_point_on_base_curve(r1, b, rng);
    const Point3 f = ruling_involution(r1, b, e);
    CHECK(form_residual(a, f) < 1e-9);
    CHECK(form_residual(b, f) < 1e-9);
    CHECK(proj_distance(ruling_involution(r1, b, f), e) < 1e-8);
    const Point3 g = ruling_involution(r2, a, e);
    CHECK(proj_distance(ruling_involution(r2, a, g), e) < 1e-8);
  }
}

TEST_CASE("involution fixes a ramification point")
{
  // b = 2 (k1.x)(k2.x) + (m.x)^2 with k1, k2 vanishing on the ruling line
  // through p and m.p = 0: on that line b is (m.x)^2, a double root at p
  Rng rng(7);
  const Quadric a = rng.symmetric<4>();
  const Ruling r(a, 1);
  const Point3 p = random_point_on_quadric(a, rng);
  const Line3 l = r.line_through(p);
  Eigen::Matrix<Complex, 2, 4> span;
  span << l.p.transpose(), l.q.transpose();
  const Eigen::MatrixXcd k = null_space(span, 1e-12);
  const Plane3 m = annihilator(p) * rng.vector<3>();
  const Quadric b = k.col(0) * k.col(1).transpose() + k.col(1) * k.col(0).transpose() +
                    m * m.transpose();
  REQUIRE(form_residual(b, p) < 1e-12);
  CHECK(proj_distance(ruling_involution(r, b, p), p) < 1e-6);
}

TEST_CASE("tuned order-3 pair")
{
  Rng rng(13);
  const auto pair = oracle::tuned_quadric_pair(3, rng);
  REQUIRE(pair);
  const Ruling r1(pair->q1, 1);
  const Ruling r2(pair->q2, 1);
  CHECK(weyr_translation_order(r1, r2) == 3);

  const Point3 e = random_point_on_base_curve(r1, pair->q2, rng);
  const auto rep = weyr_chain(r1, r2, e, 12);
  CHECK(rep.closed);
  CHECK(rep.order == 3);
  for (size_t i = 0; i + 1 < rep.elements.size(); ++i)
  {
    // consecutive lines meet: Plucker pairing vanishes
    const Plucker a = rep.elements[i];
    const Plucker b = rep.elements[i + 1];
    const Complex pair_ab = a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] -
                            a[4] * b[1] + a[5] * b[0];
    CHECK(std::abs(pair_ab) < 1e-8 * a.norm() * b.norm());
  }
  // restart from the second point of the chain
  const Point3 e2 = ruling_involution(r1, pair->q2, e);
  const auto rep2 = weyr_chain(r1, r2, e2, 12);
  CHECK(rep2.order == 3);
}

TEST_CASE("generic pair is open")
{
  Rng rng(14);
  const Quadric a = rng.symmetric<4>();
  const Quadric b = rng.symmetric<4>();
  const Ruling r1(a, 1);
  const Ruling r2(b, 1);
  CHECK_FALSE(weyr_translation_order(r1, r2).has_value());
  const auto rep = weyr_chain(r1, r2, random_point_on_base_curve(r1, b, rng), 12);
  CHECK_FALSE(rep.closed);
}

TEST_CASE("order symmetry and complementary rulings")
{
  Rng rng(15);
  for (int n : {3, 4, 5})
  {
    const auto pair = oracle::tuned_quadric_pair(n, rng);
    REQUIRE(pair);
    const Ruling r1(pair->q1, 1);
    const Ruling r2(pair->q2, 1);
    CHECK(weyr_translation_order(r1, r2) == n);
    CHECK(weyr_translation_order(r2, r1) == n);
    CHECK(weyr_translation_order(r1.complementary(), r2.complementary()) == n);
  }
}

TEST_CASE("lift of a diagonal pencil")
{
  Conic d = Conic::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  d(2, 2) = 5.0;
  const QuadricLift lift = lift_conics_to_quadrics(Conic::Identity(), d);
  std::vector<double> abg;
  for (const Complex v : lift.abg)
    abg.push_back(v.real());
  std::sort(abg.begin(), abg.end());
  CHECK(abg[0] == doctest::Approx(2.0));
  CHECK(abg[1] == doctest::Approx(3.0));
  CHECK(abg[2] == doctest::Approx(5.0));
  CHECK(proj_distance(lift.p0, Point3(0, 0, 1, 0)) < 1e-15);
  CHECK(form_residual(lift.q2, lift.p0) < 1e-15);
  CHECK(quadric_rank(lift.q2) == 3);

  // branch conic of q1 from the vertex is x^2 + y^2 + t^2
  const Conic branch = branch_conic_of_projection(lift.q1, lift.p0);
  CHECK(wedge_ratio(Eigen::Map<const Eigen::VectorXcd>(branch.data(), 9),
                    Eigen::Map<const Eigen::VectorXcd>(Conic(Conic::Identity()).data(), 9)) < 1e-12);

  Conic dbl = Conic::Identity();
  dbl(2, 2) = 2.0;
  CHECK_THROWS_AS(lift_conics_to_quadrics(Conic::Identity(), dbl), GeometryError);
}

TEST_CASE("branch conics of pencil members lie in one conic pencil")
{
  Rng rng(16);
  const Conic c = rng.symmetric<3>();
  const Conic d = rng.symmetric<3>();
  const QuadricLift lift = lift_conics_to_quadrics(c, d);
  const Conic b0 = branch_conic_of_projection(lift.q1, lift.p0);
  const Conic b1 = branch_conic_of_projection(Quadric(lift.q1 + Complex(0.3, 0.2) * lift.q2), lift.p0);
  const Conic b2 = branch_conic_of_projection(Quadric(lift.q1 - Complex(0.1, 0.6) * lift.q2), lift.p0);
  CHECK(in_one_pencil(b0, b1, b2));
  CHECK_THROWS_AS(branch_conic_of_projection(lift.q1, Point3(1, Complex(0, 1), 0, 0)), GeometryError);
}

TEST_CASE("sphere projected from the point at infinity of the z axis")
{
  // x^2 + y^2 + z^2 - t^2 from (0:0:1:0) gives the great circle x^2 + y^2 - t^2
  const Conic b = branch_conic_of_projection(diag4(1, 1, 1, -1), Point3(0, 0, 1, 0));
  Conic want = Conic::Identity();
  want(2, 2) = -1.0;
  CHECK(wedge_ratio(Eigen::Map<const Eigen::VectorXcd>(b.data(), 9),
                    Eigen::Map<const Eigen::VectorXcd>(want.data(), 9)) < 1e-12);
}

TEST_CASE("bridge: lifted order equals the plane order")
{
  Rng rng(17);
  for (int n : {3, 4, 5})
  {
    const auto pair = oracle::tuned_plane_pair(n, rng);
    REQUIRE(pair);
    const QuadricLift lift = lift_conics_to_quadrics(pair->inner, pair->outer);
    const Ruling q1p(lift.q1, 1);
    const Ruling cone(lift.q2, 1);
    CHECK(weyr_translation_order(q1p, cone) == n);
    // for a cone pair flipping the smooth quadric's ruling keeps the order
    CHECK(weyr_translation_order(q1p.complementary(), cone) == n);
  }
}
