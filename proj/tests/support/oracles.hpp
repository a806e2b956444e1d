#pragma once

// Independent constructions used to check the library. Nothing here calls the
// closure code under test; tuning loops use their own iteration.

#include <poncelet/circle_space.hpp>
#include <poncelet/conic.hpp>
#include <poncelet/quadric.hpp>
#include <poncelet/revolution.hpp>
#include <poncelet/zigzag.hpp>

#include <array>
#include <optional>

namespace oracle {

  using namespace poncelet;

  //! Both points of a line meeting a conic, from a quadratic in a pencil of
  //! points on the line.
  auto meet(const Conic& c, const Line2& l) -> std::array<Point2, 2>;

  //! Plane traverse state: vertex on the outer conic, side tangent to the inner.
  struct Traverse
  {
    Point2 u;
    Line2 T;
  };

  auto traverse_start(const Conic& inner, const Point2& u, int branch) -> Traverse;
  auto traverse_step(const Conic& inner, const Conic& outer, const Traverse& s) -> Traverse;

  struct PlanePair
  {
    Conic inner;
    Conic outer;
  };

  //! A generic pair (inner, outer) whose traverse closes after exactly n steps,
  //! found by Newton along a random pencil.
  auto tuned_plane_pair(int n, Rng& rng) -> std::optional<PlanePair>;

  struct QuadricPair
  {
    Quadric q1;
    Quadric q2;
  };

  //! Smooth pair with the translation of the (+, +) rulings of order n.
  auto tuned_quadric_pair(int n, Rng& rng) -> std::optional<QuadricPair>;

  //! Translation (i2 i1)^k applied to e with the library's involution.
  auto translate(const Ruling& r1, const Ruling& r2, Point3 e, int k) -> Point3;

  //! Discriminant-pairing from polarization: D(q + q') = D + D' - 2 J.
  auto polarized_invariants(const RevolutionQuadric& q1, const RevolutionQuadric& q2)
      -> PairInvariants;

  //! Values of c2 for which (q1, (a2, b2, c2)) satisfies the closed form at
  //! (n, k); both roots of the quadratic.
  auto revolution_c2(const RevolutionQuadric& q1, Complex a2, Complex b2, int n, int k)
      -> std::array<Complex, 2>;

  //! c2 with D2 = D1.
  auto revolution_c2_order2(const RevolutionQuadric& q1, Complex a2, Complex b2) -> Complex;

  //! Real circles meeting at right angles: |c1 - c2|^2 = r1^2 + r2^2.
  auto orthogonal_pair(Rng& rng) -> std::array<CircleVector, 2>;

  //! Random real circles that cross at two points.
  auto crossing_pair(Rng& rng) -> std::array<CircleVector, 2>;

  //! Dot product of the unit normals of two real circles at one crossing
  //! point, computed in the plane from centers and radii.
  auto crossing_cosine(const CircleVector& c1, const CircleVector& c2) -> double;

  //! Circle of radius rho inside c (center m, radius R) touching it in the
  //! direction angle phi.
  auto inner_touching(Complex mx, Complex my, Complex R, Complex rho, Complex phi)
      -> CircleVector;

  //! Circle C through p1 for which the Emch traverse of f started at (s1, p1)
  //! closes after n steps.
  auto tuned_emch_circle(const TouchingFamily& f, const CircleVector& s1, const Point2& p1,
                         int n, Rng& rng) -> std::optional<CircleVector>;

  //! Radius r for which the zig-zag between c1 and c2 from p1 closes after n
  //! steps.
  auto tuned_zigzag_radius(const Circle3D& c1, const Circle3D& c2, const Point3& p1,
                           int n, Rng& rng) -> std::optional<Complex>;

  //! Affine model of the six-step composition: involutions x -> a_j - x and
  //! translations x -> x + tau_j with generic symbolic constants. True when the
  //! composition fixes every point of the model for every choice of constants.
  auto affine_closes(std::array<bool, 3> alpha, std::array<bool, 3> beta) -> bool;

}  // namespace oracle
