#pragma once

#include <poncelet/conic.hpp>
#include <poncelet/projective.hpp>

#include <array>
#include <optional>

namespace poncelet {

  //! Circle a(x^2+y^2) + 2bxz + 2cyz + dz^2 = 0 as the point (a:b:c:d) of
  //! circle space.
  using CircleVector = Eigen::Vector4cd;

  //! Gram matrix of the polar form q(C, C').
  auto circle_gram() -> Matrix4;

  auto q_form(const CircleVector& c) -> Complex;
  auto q_pair(const CircleVector& c, const CircleVector& c2) -> Complex;

  auto is_orthogonal(const CircleVector& c, const CircleVector& c2,
                     const ToleranceContext& ctx = {}) -> bool;

  //! Quadric of circles touching c: q(c) q(X) - q(c, X)^2.
  auto tangent_cone(const CircleVector& c) -> Matrix4;

  //! q(c1) q(c2) - q(c1, c2)^2.
  auto touch_residual(const CircleVector& c1, const CircleVector& c2) -> Complex;

  //! touch_residual of the unit-normalized vectors.
  auto scaled_touch_residual(const CircleVector& c1, const CircleVector& c2) -> double;

  //! The circle as a plane conic.
  auto circle_matrix(const CircleVector& c) -> Conic;

  //! The circle of radius r about (x0, y0).
  auto make_circle(Complex x0, Complex y0, Complex r) -> CircleVector;

  //! Pair of lines joining a finite point to the circular points.
  auto null_circle_at(const Point2& p) -> CircleVector;

  //! Circles through p satisfy covector . C = 0.
  auto circles_through(const Point2& p) -> Plane3;

  //! Line carrying the finite intersections of two circles.
  auto radical_line(const CircleVector& c1, const CircleVector& c2) -> Line2;

  //! The two finite intersection points of two circles.
  auto circle_intersections(const CircleVector& c1, const CircleVector& c2)
      -> std::array<Point2, 2>;

  //! Square root used for the family planes: principal branch of q on the
  //! unit-normalized vector.
  auto family_root(const CircleVector& c) -> Complex;

  //! Plane root2 * q(c1, .) + sign * root1 * q(c2, .) for unit-normalized c1, c2.
  auto family_plane(const CircleVector& c1, const CircleVector& c2, int sign,
                    Complex root1, Complex root2) -> Plane3;

  //! One of the two conics of circles touching both c1 and c2.
  struct TouchingFamily
  {
    CircleVector c1;
    CircleVector c2;
    int sign = 1;
    //! Branch of sqrt(q) used for each unit-normalized defining circle.
    Complex root1;
    Complex root2;
    Plane3 plane;
    Plane3 other_plane;
    //! Orthonormal basis of the plane (columns), the family conic in these
    //! coordinates, and the rational chart data.
    Eigen::Matrix<Complex, 4, 3> basis;
    Matrix3 conic;
    Eigen::Vector3cd base;
    Eigen::Vector3cd w1;
    Eigen::Vector3cd w2;
    //! circle(s : t) = t^2 coeff[0] + s t coeff[1] + s^2 coeff[2].
    std::array<CircleVector, 3> coeff;

    auto circle(const Eigen::Vector2cd& theta) const -> CircleVector;
    auto circle(Complex s) const -> CircleVector { return circle(Eigen::Vector2cd(s, 1.0)); }

    //! Chart parameter of a circle of the family.
    auto parameter(const CircleVector& x) const -> Eigen::Vector2cd;

    //! Binary form in (s : t) of the given degree obtained by composing f
    //! with the chart.
    template <typename F>
    auto compose(F&& f, int degree) const -> std::vector<Complex>
    {
      return binary_form_interpolate(
          [&](Complex s, Complex t) { return f(circle(Eigen::Vector2cd(s, t))); },
          degree);
    }

    //! The two circles of the family lying on the other family's plane.
    auto null_circles() const -> std::array<CircleVector, 2>;
  };

  auto touching_family(const CircleVector& c1, const CircleVector& c2, int sign,
                       const ToleranceContext& ctx = {}, int branch1 = 1,
                       int branch2 = 1) -> TouchingFamily;

  auto touching_families(const CircleVector& c1, const CircleVector& c2,
                         const ToleranceContext& ctx = {})
      -> std::array<TouchingFamily, 2>;

  //! Null circles at the two finite intersection points.
  auto null_circles(const CircleVector& c1, const CircleVector& c2,
                    const ToleranceContext& ctx = {}) -> std::array<CircleVector, 2>;

  //! Line of circle space (two spanning points).
  struct CircleLine
  {
    CircleVector p;
    CircleVector q;
  };

  //! The line shared by the planes of sign eps12, eps13, eps23, if they have
  //! one. branches multiplies the root of each circle by +-1.
  auto common_line(const CircleVector& c1, const CircleVector& c2,
                   const CircleVector& c3, int eps12, int eps13, int eps23,
                   const ToleranceContext& ctx = {},
                   std::array<int, 3> branches = {1, 1, 1})
      -> std::optional<CircleLine>;

  //! Smallest singular value ratio of the stacked plane matrix.
  auto common_line_defect(const CircleVector& c1, const CircleVector& c2,
                          const CircleVector& c3, int eps12, int eps13, int eps23,
                          std::array<int, 3> branches = {1, 1, 1}) -> double;

}  // namespace poncelet
