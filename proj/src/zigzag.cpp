#include <poncelet/zigzag.hpp>

#include <poncelet/conic.hpp>
#include <poncelet/polynomial.hpp>

#include <limits>

namespace poncelet {

  namespace {

    using Poly = std::map<std::array<int, 4>, Complex>;

    auto poly_add(Poly a, const Poly& b, Complex scale = 1.0) -> Poly
    {
      for (const auto& [k, v] : b)
        a[k] += scale * v;
      return a;
    }

    auto poly_times(const Poly& a, const Poly& b) -> Poly
    {
      Poly out;
      for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b)
        {
          std::array<int, 4> k{};
          for (int i = 0; i < 4; ++i)
            k[i] = ka[i] + kb[i];
          out[k] += va * vb;
        }
      return out;
    }

    auto square_of(int var) -> Poly
    {
      std::array<int, 4> k{};
      k[var] = 2;
      return {{k, 1.0}};
    }

    auto lex_less(const Point3& a, const Point3& b) -> bool
    {
      const Point3 na = normalize(a);
      const Point3 nb = normalize(b);
      for (int i = 0; i < 4; ++i)
      {
        if (std::abs(na[i].real() - nb[i].real()) > 1e-9)
          return na[i].real() < nb[i].real();
        if (std::abs(na[i].imag() - nb[i].imag()) > 1e-9)
          return na[i].imag() < nb[i].imag();
      }
      return false;
    }

  }  // namespace

  auto Sphere::matrix() const -> Quadric
  {
    const Complex t0 = center[3];
    Quadric m = Quadric::Zero();
    Complex sq = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      m(i, i) = t0 * t0;
      m(i, 3) = m(3, i) = -t0 * center[i];
      sq += center[i] * center[i];
    }
    m(3, 3) = sq - radius_sq * t0 * t0;
    return m;
  }

  auto sphere_about(const Point3& p, Complex r2) -> Sphere
  {
    if (std::abs(p[3]) < 1e-14 * p.norm())
      fail(ErrorCode::DegenerateConfiguration, "sphere centre at infinity");
    return {p, r2};
  }

  auto make_circle3d(const Eigen::Vector3cd& center, const Eigen::Vector3cd& normal,
                     Complex radius) -> Circle3D
  {
    Circle3D c;
    c.plane << normal, -bdot(normal, center);
    c.quadric = sphere_about(Point3(center[0], center[1], center[2], 1.0),
                             radius * radius).matrix();
    return c;
  }

  auto normal_form_circle3d() -> Circle3D
  {
    return {Plane3(0.0, 0.0, 1.0, 0.0), Quadric::Identity()};
  }

  auto random_point_on_circle3d(const Circle3D& c, Rng& rng) -> Point3
  {
    const Eigen::Matrix<Complex, 4, 3> b = annihilator(c.plane);
    const Conic k = b.transpose() * c.quadric * b;
    return normalize(Point3(b * random_point_on_conic(k, rng)));
  }

  auto circle3d_residual(const Circle3D& c, const Point3& x) -> double
  {
    return std::max(std::abs(bdot(c.plane, x)) / (c.plane.norm() * x.norm()),
                    form_residual(c.quadric, x));
  }

  auto zigzag_step(const Circle3D& target, Complex r, const Point3& p,
                   const std::optional<Point3>& prev, const ToleranceContext& ctx,
                   bool* flagged) -> std::array<Point3, 2>
  {
    const Quadric s = sphere_about(p, r * r).matrix();
    const Quadric& sig = target.quadric;
    if (std::abs(sig(0, 0)) == 0.0)
      fail(ErrorCode::DegenerateConfiguration, "target quadric is not a sphere");
    const Quadric m = s - (s(0, 0) / sig(0, 0)) * sig;
    const Plane3 radical(2.0 * m(3, 0), 2.0 * m(3, 1), 2.0 * m(3, 2), m(3, 3));
    if (radical.norm() < 1e-14 * s.norm())
      fail(ErrorCode::DegenerateConfiguration, "sphere concentric with the target");

    Eigen::Matrix<Complex, 2, 4> planes;
    planes.row(0) = target.plane.normalized().transpose();
    planes.row(1) = radical.normalized().transpose();
    const Eigen::MatrixXcd line = null_space(planes, 1e-12);
    if (line.cols() != 2)
      fail(ErrorCode::DegenerateConfiguration, "radical plane equals the circle plane");
    const Point3 a = line.col(0);
    const Point3 b = line.col(1);
    const auto roots = binary_quadratic_roots(bdot(a, sig * a), 2.0 * bdot(a, sig * b),
                                              bdot(b, sig * b));
    std::array<Point3, 2> out{normalize(Point3(roots[0][0] * a + roots[0][1] * b)),
                              normalize(Point3(roots[1][0] * a + roots[1][1] * b))};
    const bool tangent = proj_distance(out[0], out[1]) < std::sqrt(ctx.rel_tol);
    if (flagged != nullptr)
      *flagged = tangent || r == Complex(0.0);
    if (tangent && r != Complex(0.0))
      fail(ErrorCode::TangentSphere, "the sphere touches the target circle");
    if (prev)
    {
      if (proj_distance(out[1], *prev) > proj_distance(out[0], *prev))
        std::swap(out[0], out[1]);
    }
    else if (lex_less(out[1], out[0]))
      std::swap(out[0], out[1]);
    return out;
  }

  auto zigzag_chain(const Circle3D& c1, const Circle3D& c2, Complex r,
                    const Point3& start, int branch, int n_max,
                    const ToleranceContext& ctx) -> ChainReport
  {
    ctx.validate();
    ChainReport rep;
    rep.residual = std::numeric_limits<double>::infinity();
    const Point3 p1 = normalize(start);
    bool flag = false;
    const Point3 p2 = zigzag_step(c2, r, p1, std::nullopt, ctx, &flag)[branch == 0 ? 0 : 1];
    rep.elements.push_back(p1);
    rep.elements.push_back(p2);
    Point3 prev = p1;
    Point3 cur = p2;
    for (int k = 1; k <= n_max; ++k)
    {
      // two half steps: back to c1, then to c2
      for (int h = 0; h < 2; ++h)
      {
        const Circle3D& target = h == 0 ? c1 : c2;
        const Point3 next = zigzag_step(target, r, cur, prev, ctx, &flag)[0];
        if (flag)
          rep.flagged_steps.push_back(k);
        prev = cur;
        cur = next;
        rep.elements.push_back(cur);
      }
      rep.steps = k;
      const double res = std::max(proj_distance(prev, p1), proj_distance(cur, p2));
      rep.residual = res;
      if (res < ctx.closure_tol)
      {
        rep.closed = true;
        rep.order = k;
        return rep;
      }
    }
    return rep;
  }

  auto QuarticSurface::operator()(const Point3& p) const -> Complex
  {
    Complex acc = 0.0;
    for (const auto& [k, v] : terms)
    {
      Complex m = v;
      for (int i = 0; i < 4; ++i)
        m *= std::pow(p[i], k[i]);
      acc += m;
    }
    return acc;
  }

  auto zigzag_branch_quartic(Complex r) -> QuarticSurface
  {
    const Poly x2 = square_of(0);
    const Poly y2 = square_of(1);
    const Poly z2 = square_of(2);
    const Poly t2 = square_of(3);
    const Poly u = poly_add(poly_add(poly_add(x2, y2), z2), t2, -r * r);
    Poly out;
    out = poly_add(out, poly_times(u, u), -0.25);
    out = poly_add(out, poly_times(t2, u), 0.5);
    out = poly_add(out, poly_times(x2, t2), -1.0);
    out = poly_add(out, poly_times(y2, t2), -1.0);
    out = poly_add(out, poly_times(t2, t2), -0.25);
    QuarticSurface q;
    for (const auto& [k, v] : out)
      if (v != Complex(0.0))
        q.terms[k] = v;
    return q;
  }

  auto zigzag_branch_points(const Circle3D& c1, Complex r, const ToleranceContext& ctx)
      -> std::vector<Point3>
  {
    const Eigen::Matrix<Complex, 4, 3> b = annihilator(c1.plane);
    const Conic k = b.transpose() * c1.quadric * b;
    Rng rng(0);
    const Point2 n = random_point_on_conic(k, rng);
    const Eigen::MatrixXcd w = annihilator(n.conjugate());
    const Eigen::Vector3cd w1 = w.col(0);
    const Eigen::Vector3cd w2 = w.col(1);
    auto point = [&](Complex s, Complex t) -> Point3 {
      const Eigen::Vector3cd d = t * w1 + s * w2;
      return b * (-bdot(d, k * d) * n + 2.0 * bdot(n, k * d) * d);
    };
    const QuarticSurface y = zigzag_branch_quartic(r);
    const auto form = binary_form_interpolate(
        [&](Complex s, Complex t) { return y(point(s, t)); }, 8);
    std::vector<Point3> out;
    for (const auto& root : binary_form_roots(form, ctx.rel_tol))
    {
      const Point3 p = normalize(point(root.point[0], root.point[1]));
      if (std::abs(p[3]) < std::sqrt(ctx.rel_tol))
        continue;
      for (int m = 0; m < root.multiplicity; ++m)
        out.push_back(p);
    }
    return out;
  }

}  // namespace poncelet
