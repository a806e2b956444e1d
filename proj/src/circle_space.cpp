#include <poncelet/circle_space.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace poncelet {

  auto circle_gram() -> Matrix4
  {
    Matrix4 g = Matrix4::Zero();
    g(0, 3) = g(3, 0) = 0.5;
    g(1, 1) = g(2, 2) = -1.0;
    return g;
  }

  auto q_form(const CircleVector& c) -> Complex
  {
    return c[0] * c[3] - c[1] * c[1] - c[2] * c[2];
  }

  auto q_pair(const CircleVector& c, const CircleVector& c2) -> Complex
  {
    return 0.5 * (c[0] * c2[3] + c[3] * c2[0]) - (c[1] * c2[1] + c[2] * c2[2]);
  }

  auto is_orthogonal(const CircleVector& c, const CircleVector& c2,
                     const ToleranceContext& ctx) -> bool
  {
    const Complex p = q_pair(c, c2);
    const double scale = std::max({std::abs(q_form(c)), std::abs(q_form(c2)), std::abs(p)});
    if (scale == 0.0)
      return true;
    return std::abs(p) < ctx.rel_tol * scale;
  }

  auto tangent_cone(const CircleVector& c) -> Matrix4
  {
    const Matrix4 g = circle_gram();
    const CircleVector gc = g * c;
    return q_form(c) * g - gc * gc.transpose();
  }

  auto touch_residual(const CircleVector& c1, const CircleVector& c2) -> Complex
  {
    const Complex p = q_pair(c1, c2);
    return q_form(c1) * q_form(c2) - p * p;
  }

  auto scaled_touch_residual(const CircleVector& c1, const CircleVector& c2) -> double
  {
    const double n = c1.norm() * c2.norm();
    if (n == 0.0)
      return 0.0;
    return std::abs(touch_residual(c1, c2)) / (n * n);
  }

  auto circle_matrix(const CircleVector& c) -> Conic
  {
    Conic m;
    m << c[0], 0.0, c[1],
         0.0, c[0], c[2],
         c[1], c[2], c[3];
    return m;
  }

  auto make_circle(Complex x0, Complex y0, Complex r) -> CircleVector
  {
    return CircleVector(1.0, -x0, -y0, x0 * x0 + y0 * y0 - r * r);
  }

  auto null_circle_at(const Point2& p) -> CircleVector
  {
    return CircleVector(p[2] * p[2], -p[0] * p[2], -p[1] * p[2],
                        p[0] * p[0] + p[1] * p[1]);
  }

  auto circles_through(const Point2& p) -> Plane3
  {
    return Plane3(p[0] * p[0] + p[1] * p[1], 2.0 * p[0] * p[2], 2.0 * p[1] * p[2],
                  p[2] * p[2]);
  }

  auto radical_line(const CircleVector& c1, const CircleVector& c2) -> Line2
  {
    const Complex a1 = c1[0];
    const Complex a2 = c2[0];
    return Line2(2.0 * (a2 * c1[1] - a1 * c2[1]), 2.0 * (a2 * c1[2] - a1 * c2[2]),
                 a2 * c1[3] - a1 * c2[3]);
  }

  auto circle_intersections(const CircleVector& c1, const CircleVector& c2)
      -> std::array<Point2, 2>
  {
    const Line2 l = radical_line(c1, c2);
    if (l.norm() <= 1e-14 * c1.norm() * c2.norm())
      fail(ErrorCode::DegenerateConfiguration, "circles are proportional");
    const CircleVector& host = std::abs(c1[0]) >= std::abs(c2[0]) ? c1 : c2;
    return line_conic_intersection(circle_matrix(host), l);
  }

  auto family_root(const CircleVector& c) -> Complex
  {
    return std::sqrt(q_form(c / c.norm()));
  }

  auto family_plane(const CircleVector& c1, const CircleVector& c2, int sign,
                    Complex root1, Complex root2) -> Plane3
  {
    const Matrix4 g = circle_gram();
    return root2 * (g * (c1 / c1.norm())) +
           static_cast<double>(sign) * root1 * (g * (c2 / c2.norm()));
  }

  auto TouchingFamily::circle(const Eigen::Vector2cd& theta) const -> CircleVector
  {
    const Complex s = theta[0];
    const Complex t = theta[1];
    return t * t * coeff[0] + s * t * coeff[1] + s * s * coeff[2];
  }

  auto TouchingFamily::parameter(const CircleVector& x) const -> Eigen::Vector2cd
  {
    Eigen::Matrix<Complex, 4, 3> m;
    m << coeff[0], coeff[1], coeff[2];
    // coordinates (t^2, st, s^2) of x in the monomial basis
    const Eigen::Vector3cd v = m.colPivHouseholderQr().solve(x);
    if (std::abs(v[0]) >= std::abs(v[2]))
      return normalize(Eigen::Vector2cd(v[1], v[0]));
    return normalize(Eigen::Vector2cd(v[2], v[1]));
  }

  auto TouchingFamily::null_circles() const -> std::array<CircleVector, 2>
  {
    const Line2 l = basis.transpose() * other_plane;
    const auto pts = line_conic_intersection(conic, l);
    return {basis * pts[0], basis * pts[1]};
  }

  auto touching_family(const CircleVector& c1, const CircleVector& c2, int sign,
                       const ToleranceContext& ctx, int branch1, int branch2)
      -> TouchingFamily
  {
    if (c1.norm() == 0.0 || c2.norm() == 0.0)
      fail(ErrorCode::NullInput, "zero circle vector");
    const Complex q1 = q_form(c1 / c1.norm());
    const Complex q2 = q_form(c2 / c2.norm());
    if (std::abs(q1) < ctx.rel_tol || std::abs(q2) < ctx.rel_tol)
      fail(ErrorCode::NullInput, "touching families need q != 0 on both circles");
    if (scaled_touch_residual(c1, c2) < ctx.rel_tol)
      fail(ErrorCode::TangentPair, "the defining circles touch");

    TouchingFamily f;
    f.c1 = c1;
    f.c2 = c2;
    f.sign = sign >= 0 ? 1 : -1;
    f.root1 = static_cast<double>(branch1) * family_root(c1);
    f.root2 = static_cast<double>(branch2) * family_root(c2);
    f.plane = family_plane(c1, c2, f.sign, f.root1, f.root2);
    f.other_plane = family_plane(c1, c2, -f.sign, f.root1, f.root2);

    f.basis = annihilator(f.plane);
    f.conic = f.basis.transpose() * tangent_cone(c1 / c1.norm()) * f.basis;
    f.conic = unit_scale(f.conic);

    const Line2 l = f.basis.transpose() * f.other_plane;
    f.base = normalize(line_conic_intersection(f.conic, l)[0]);
    const Eigen::MatrixXcd w = annihilator(f.base.conjugate());
    f.w1 = w.col(0);
    f.w2 = w.col(1);

    const Matrix3& k = f.conic;
    const Eigen::Vector3cd& n = f.base;
    const Complex a = bdot(f.w1, k * f.w1);
    const Complex b = bdot(f.w1, k * f.w2);
    const Complex c = bdot(f.w2, k * f.w2);
    const Complex d = bdot(n, k * f.w1);
    const Complex e = bdot(n, k * f.w2);
    f.coeff[0] = f.basis * (-a * n + 2.0 * d * f.w1);
    f.coeff[1] = f.basis * (-2.0 * b * n + 2.0 * e * f.w1 + 2.0 * d * f.w2);
    f.coeff[2] = f.basis * (-c * n + 2.0 * e * f.w2);
    return f;
  }

  auto touching_families(const CircleVector& c1, const CircleVector& c2,
                         const ToleranceContext& ctx) -> std::array<TouchingFamily, 2>
  {
    return {touching_family(c1, c2, 1, ctx), touching_family(c1, c2, -1, ctx)};
  }

  auto null_circles(const CircleVector& c1, const CircleVector& c2,
                    const ToleranceContext& ctx) -> std::array<CircleVector, 2>
  {
    const auto pts = circle_intersections(c1, c2);
    if (proj_distance(pts[0], pts[1]) < std::sqrt(ctx.rel_tol))
      fail(ErrorCode::TangentPair, "the circles touch");
    if (std::abs(pts[0][2]) < ctx.rel_tol || std::abs(pts[1][2]) < ctx.rel_tol)
      fail(ErrorCode::DegenerateConfiguration, "intersection point at infinity");
    return {null_circle_at(pts[0]), null_circle_at(pts[1])};
  }

  namespace {

    auto stacked_planes(const CircleVector& c1, const CircleVector& c2,
                        const CircleVector& c3, int eps12, int eps13, int eps23,
                        std::array<int, 3> branches) -> Eigen::Matrix<Complex, 3, 4>
    {
      const Complex r1 = static_cast<double>(branches[0]) * family_root(c1);
      const Complex r2 = static_cast<double>(branches[1]) * family_root(c2);
      const Complex r3 = static_cast<double>(branches[2]) * family_root(c3);
      Eigen::Matrix<Complex, 3, 4> m;
      m.row(0) = family_plane(c1, c2, eps12, r1, r2).normalized().transpose();
      m.row(1) = family_plane(c1, c3, eps13, r1, r3).normalized().transpose();
      m.row(2) = family_plane(c2, c3, eps23, r2, r3).normalized().transpose();
      return m;
    }

  }  // namespace

  auto common_line_defect(const CircleVector& c1, const CircleVector& c2,
                          const CircleVector& c3, int eps12, int eps13, int eps23,
                          std::array<int, 3> branches) -> double
  {
    const Eigen::MatrixXcd m = stacked_planes(c1, c2, c3, eps12, eps13, eps23, branches);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    return s[2] / s[0];
  }

  auto common_line(const CircleVector& c1, const CircleVector& c2,
                   const CircleVector& c3, int eps12, int eps13, int eps23,
                   const ToleranceContext& ctx, std::array<int, 3> branches)
      -> std::optional<CircleLine>
  {
    if (common_line_defect(c1, c2, c3, eps12, eps13, eps23, branches) >= std::sqrt(ctx.rel_tol))
      return std::nullopt;
    const Eigen::MatrixXcd m = stacked_planes(c1, c2, c3, eps12, eps13, eps23, branches);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::MatrixXcd v = svd.matrixV();
    return CircleLine{v.col(2), v.col(3)};
  }

}  // namespace poncelet
