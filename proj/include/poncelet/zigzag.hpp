#pragma once

#include <poncelet/projective.hpp>
#include <poncelet/quadric.hpp>

#include <array>
#include <map>
#include <optional>

namespace poncelet {

  //! Sphere |X - P t|^2 = r^2 t^2 about a finite centre P = (x0 : y0 : z0 : 1).
  struct Sphere
  {
    Point3 center;
    Complex radius_sq;

    auto matrix() const -> Quadric;
  };

  //! Sphere of squared radius r2 about a finite point P (t0 != 0).
  auto sphere_about(const Point3& p, Complex r2) -> Sphere;

  //! Circle of P_3 cut from a sphere by a plane.
  struct Circle3D
  {
    Plane3 plane;
    Quadric quadric;
  };

  //! Circle with the given centre, plane normal and radius.
  auto make_circle3d(const Eigen::Vector3cd& center, const Eigen::Vector3cd& normal,
                     Complex radius) -> Circle3D;

  //! The circle x^2 + y^2 + t^2 = 0 in the plane z = 0.
  auto normal_form_circle3d() -> Circle3D;

  auto random_point_on_circle3d(const Circle3D& c, Rng& rng) -> Point3;

  //! max of the plane and quadric residuals of x.
  auto circle3d_residual(const Circle3D& c, const Point3& x) -> double;

  //! Finite points of S_{P,r} on `target`, farther-from-prev first (or sorted
  //! lexicographically without prev).
  auto zigzag_step(const Circle3D& target, Complex r, const Point3& p,
                   const std::optional<Point3>& prev, const ToleranceContext& ctx = {},
                   bool* flagged = nullptr) -> std::array<Point3, 2>;

  //! P_1 = start on c1, P_2 = candidate `branch` on c2, then alternating.
  //! Closes at n when P_{2n+1} = P_1 and P_{2n+2} = P_2.
  auto zigzag_chain(const Circle3D& c1, const Circle3D& c2, Complex r,
                    const Point3& start, int branch, int n_max,
                    const ToleranceContext& ctx = {}) -> ChainReport;

  //! Polynomial in (x, y, z, t) as exponent -> coefficient.
  struct QuarticSurface
  {
    std::map<std::array<int, 4>, Complex> terms;

    auto operator()(const Point3& p) const -> Complex;
  };

  //! Points at "distance" r from the normal-form circle.
  auto zigzag_branch_quartic(Complex r) -> QuarticSurface;

  //! Finite intersections of c1 with the branch quartic of the normal-form
  //! circle, with the points at infinity (double) removed.
  auto zigzag_branch_points(const Circle3D& c1, Complex r,
                            const ToleranceContext& ctx = {}) -> std::vector<Point3>;

}  // namespace poncelet
