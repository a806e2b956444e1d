#include <poncelet/quadric.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace poncelet {

  namespace {

    auto lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) -> bool
    {
      for (Eigen::Index i = 0; i < a.size(); ++i)
      {
        if (a[i].real() != b[i].real())
          return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag())
          return a[i].imag() < b[i].imag();
      }
      return false;
    }

    auto point_on_line_and_quadric(const Quadric& q, const Point3& a, const Point3& b)
        -> std::array<Point3, 2>
    {
      const auto r = binary_quadratic_roots(bdot(a, q * a), 2.0 * bdot(a, q * b),
                                            bdot(b, q * b));
      return {normalize(Point3(r[0][0] * a + r[0][1] * b)),
              normalize(Point3(r[1][0] * a + r[1][1] * b))};
    }

    void require_on(const Quadric& q, const Point3& p, const ToleranceContext& ctx)
    {
      if (form_residual(q, p) > std::sqrt(ctx.closure_tol))
        fail(ErrorCode::PointNotOnQuadric, "point is not on the quadric");
    }

    auto cone_vertex(const Quadric& q) -> Point3
    {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(q, Eigen::ComputeFullV);
      return normalize(Point3(svd.matrixV().col(3)));
    }

    //! Fixed points used to place reference lines; any generic choice works,
    //! but it must not change between calls.
    const Point3 kRefA1(Complex(0.71, 0.13), Complex(-0.29, 0.52), Complex(0.37, -0.61),
                        Complex(0.83, 0.21));
    const Point3 kRefB1(Complex(-0.44, 0.67), Complex(0.91, -0.18), Complex(0.26, 0.33),
                        Complex(-0.57, -0.72));
    const Point3 kRefA2(Complex(0.19, -0.88), Complex(0.63, 0.41), Complex(-0.77, 0.09),
                        Complex(0.35, 0.58));
    const Point3 kRefB2(Complex(0.52, 0.31), Complex(-0.68, -0.47), Complex(0.14, 0.86),
                        Complex(0.93, -0.24));

  }  // namespace

  auto plucker(const Line3& l) -> Plucker
  {
    static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    Plucker out;
    for (int k = 0; k < 6; ++k)
    {
      const int i = pairs[k][0], j = pairs[k][1];
      out[k] = l.p[i] * l.q[j] - l.p[j] * l.q[i];
    }
    return out;
  }

  auto lines_meet_residual(const Line3& a, const Line3& b) -> double
  {
    return normalized_det4(a.p, a.q, b.p, b.q);
  }

  auto to_string(IntersectionKind k) -> const char*
  {
    switch (k)
    {
      case IntersectionKind::SmoothElliptic: return "SmoothElliptic";
      case IntersectionKind::TwoConics: return "TwoConics";
      case IntersectionKind::Degenerate: return "Degenerate";
    }
    return "?";
  }

  auto QuarticForm::operator()(Complex l1, Complex l2) const -> Complex
  {
    return binary_form_eval(std::vector<Complex>(c.begin(), c.end()), Eigen::Vector2cd(l1, l2));
  }

  auto pencil_discriminant(const Quadric& q1, const Quadric& q2) -> QuarticForm
  {
    const auto coeffs = binary_form_interpolate(
        [&](Complex l1, Complex l2) { return (l1 * q1 + l2 * q2).determinant(); }, 4);
    QuarticForm out;
    std::copy(coeffs.begin(), coeffs.end(), out.c.begin());
    // Extreme coefficients are exact determinants; use them directly.
    out.c[4] = q1.determinant();
    out.c[0] = q2.determinant();
    return out;
  }

  auto quadric_rank(const Quadric& q, const ToleranceContext& ctx) -> int
  {
    return numerical_rank(q, ctx.rel_tol);
  }

  auto intersection_kind(const Quadric& q1, const Quadric& q2, const ToleranceContext& ctx)
      -> IntersectionKind
  {
    const Quadric a = unit_scale(q1);
    const Quadric b = unit_scale(q2);
    if (wedge_ratio(Eigen::Map<const Eigen::VectorXcd>(a.data(), 16),
                    Eigen::Map<const Eigen::VectorXcd>(b.data(), 16)) < ctx.rel_tol)
      return IntersectionKind::Degenerate;
    const QuarticForm d = pencil_discriminant(a, b);
    const auto roots = binary_form_roots(std::vector<Complex>(d.c.begin(), d.c.end()),
                                         ctx.rel_tol);
    int doubles = 0;
    bool split = false;
    for (const auto& r : roots)
    {
      if (r.multiplicity >= 3)
        return IntersectionKind::Degenerate;
      if (r.multiplicity == 2)
      {
        ++doubles;
        const Quadric m = r.point[0] * a + r.point[1] * b;
        split = numerical_rank(m, std::sqrt(ctx.rel_tol)) == 2;
      }
    }
    if (doubles == 0)
      return IntersectionKind::SmoothElliptic;
    if (doubles == 1 && split)
      return IntersectionKind::TwoConics;
    return IntersectionKind::Degenerate;
  }

  auto lines_through_point(const Quadric& q, const Point3& p, const ToleranceContext& ctx)
      -> std::vector<Line3>
  {
    const Quadric qn = unit_scale(q);
    require_on(qn, p, ctx);
    const Point3 pn = normalize(p);
    const int rank = quadric_rank(qn, ctx);
    if (rank < 3)
      fail(ErrorCode::DegenerateConic, "quadric has rank below 3");
    if (rank == 3)
    {
      const Point3 v = cone_vertex(qn);
      if (proj_distance(v, pn) < std::sqrt(ctx.closure_tol))
        fail(ErrorCode::SingularPoint, "point is the vertex of the cone");
      return {Line3{pn, v}};
    }
    // Lines through p lie in the tangent plane H = Qp; on a complement of p
    // inside H the form restricts to a binary quadratic.
    const Eigen::Vector4cd h = qn * pn;
    const Eigen::MatrixXcd n = annihilator(h);
    const Eigen::Vector3cd coef = n.adjoint() * pn;
    const Eigen::MatrixXcd comp = annihilator(coef.conjugate());
    const Point3 v1 = n * comp.col(0);
    const Point3 v2 = n * comp.col(1);
    const auto r = binary_quadratic_roots(bdot(v1, qn * v1), 2.0 * bdot(v1, qn * v2),
                                          bdot(v2, qn * v2));
    std::vector<Line3> out;
    for (const auto& rr : r)
      out.push_back({pn, normalize(Point3(rr[0] * v1 + rr[1] * v2))});
    if (lex_less(normalize(plucker(out[1])), normalize(plucker(out[0]))))
      std::swap(out[0], out[1]);
    return out;
  }

  Ruling::Ruling(const Quadric& q, int sign, const ToleranceContext& ctx)
    : q_(unit_scale(q)), sign_(sign >= 0 ? 1 : -1), ctx_(ctx)
  {
    const int rank = quadric_rank(q_, ctx_);
    if (rank < 3)
      fail(ErrorCode::DegenerateConic, "ruling needs a quadric of rank >= 3");
    cone_ = rank == 3;
    if (cone_)
      return;
    const Point3 p1 = point_on_line_and_quadric(q_, kRefA1, kRefB1)[0];
    const auto lines = lines_through_point(q_, p1, ctx_);
    at_first_ = sign_ > 0 ? std::array<Line3, 2>{lines[0], lines[1]}
                          : std::array<Line3, 2>{lines[1], lines[0]};
    finish_references();
  }

  auto Ruling::containing(const Quadric& q, const Line3& line, const ToleranceContext& ctx)
      -> Ruling
  {
    Ruling r;
    r.q_ = unit_scale(q);
    r.ctx_ = ctx;
    const int rank = quadric_rank(r.q_, ctx);
    if (rank < 3)
      fail(ErrorCode::DegenerateConic, "ruling needs a quadric of rank >= 3");
    r.cone_ = rank == 3;
    if (r.cone_)
      return r;
    const auto lines = lines_through_point(r.q_, line.p, ctx);
    const Plucker target = plucker(line);
    const bool first = proj_distance(plucker(lines[0]), target)
        <= proj_distance(plucker(lines[1]), target);
    r.at_first_ = first ? std::array<Line3, 2>{lines[0], lines[1]}
                        : std::array<Line3, 2>{lines[1], lines[0]};
    r.sign_ = first ? 1 : -1;
    r.finish_references();
    return r;
  }

  void Ruling::finish_references()
  {
    const Point3 p2 = point_on_line_and_quadric(q_, kRefA2, kRefB2)[0];
    auto lines = lines_through_point(q_, p2, ctx_);
    const double s0 = lines_meet_residual(lines[0], at_first_[0]);
    const double s1 = lines_meet_residual(lines[1], at_first_[0]);
    if (s1 > s0)
      std::swap(lines[0], lines[1]);
    at_second_ = {lines[0], lines[1]};
  }

  auto Ruling::line_through(const Point3& p) const -> Line3
  {
    const auto lines = lines_through_point(q_, p, ctx_);
    if (cone_)
      return lines[0];
    auto score = [&](const Line3& l) {
      return std::max(lines_meet_residual(l, at_first_[0]),
                      lines_meet_residual(l, at_second_[0]));
    };
    return score(lines[0]) >= score(lines[1]) ? lines[0] : lines[1];
  }

  auto Ruling::complementary() const -> Ruling
  {
    Ruling r = *this;
    if (cone_)
      return r;
    r.sign_ = -sign_;
    std::swap(r.at_first_[0], r.at_first_[1]);
    std::swap(r.at_second_[0], r.at_second_[1]);
    return r;
  }

  auto ruling_involution(const Ruling& r, const Quadric& other, const Point3& p,
                         const ToleranceContext& ctx) -> Point3
  {
    const Quadric o = unit_scale(other);
    require_on(o, p, ctx);
    const Line3 l = r.line_through(p);
    const Point3 pn = normalize(p);
    const Point3& d = l.q;
    // x = alpha p + beta d on the line; o(x) = beta (2 alpha p^T O d + beta d^T O d).
    const Point3 x = -bdot(d, o * d) * pn + 2.0 * bdot(pn, o * d) * d;
    if (x.norm() < 1e-14)
      return pn;
    return normalize(x);
  }

  auto random_point_on_quadric(const Quadric& q, Rng& rng) -> Point3
  {
    const Point3 a = rng.vector<4>();
    const Point3 b = rng.vector<4>();
    return point_on_line_and_quadric(q, a, b)[0];
  }

  auto random_point_on_base_curve(const Ruling& r1, const Quadric& q2, Rng& rng) -> Point3
  {
    const Point3 p = random_point_on_quadric(r1.quadric(), rng);
    const Line3 l = r1.line_through(p);
    return point_on_line_and_quadric(unit_scale(q2), l.p, l.q)[0];
  }

  auto weyr_translation_order(const Ruling& r1, const Ruling& r2,
                              const ToleranceContext& ctx, std::uint64_t seed)
      -> std::optional<int>
  {
    ctx.validate();
    if (intersection_kind(r1.quadric(), r2.quadric(), ctx) == IntersectionKind::Degenerate)
      fail(ErrorCode::DegenerateIntersection, "base curve is degenerate");
    Rng rng(seed);
    constexpr int samples = 5;
    std::vector<Point3> start;
    for (int i = 0; i < samples; ++i)
      start.push_back(random_point_on_base_curve(r1, r2.quadric(), rng));
    std::vector<Point3> x = start;
    for (int n = 1; n <= ctx.max_order; ++n)
    {
      int closed = 0;
      for (int i = 0; i < samples; ++i)
      {
        x[i] = ruling_involution(r2, r1.quadric(),
                                 ruling_involution(r1, r2.quadric(), x[i], ctx), ctx);
        if (proj_distance(x[i], start[i]) < ctx.closure_tol)
          ++closed;
      }
      if (closed == samples)
        return n;
      if (closed > 0)
        fail(ErrorCode::ToleranceFailure,
             "base points disagree on the order at n = " + std::to_string(n));
    }
    return std::nullopt;
  }

  auto weyr_chain(const Ruling& r1, const Ruling& r2, const Point3& e, int n_max,
                  const ToleranceContext& ctx) -> ChainReport
  {
    ctx.validate();
    ChainReport rep;
    const Line3 first = r1.line_through(e);
    const Plucker first_pl = normalize(plucker(first));
    rep.elements.push_back(first_pl);
    Point3 x = normalize(e);
    Line3 prev = first;
    for (int k = 1; k <= n_max; ++k)
    {
      const Point3 y = ruling_involution(r1, r2.quadric(), x, ctx);
      const Line3 even = r2.line_through(y);
      if (lines_meet_residual(prev, even) > std::sqrt(ctx.closure_tol))
        rep.flagged_steps.push_back(2 * k);
      rep.elements.push_back(normalize(plucker(even)));
      x = ruling_involution(r2, r1.quadric(), y, ctx);
      const Line3 odd = r1.line_through(x);
      if (lines_meet_residual(even, odd) > std::sqrt(ctx.closure_tol))
        rep.flagged_steps.push_back(2 * k + 1);
      rep.elements.push_back(normalize(plucker(odd)));
      prev = odd;
      rep.steps = k;
      rep.residual = proj_distance(plucker(odd), first_pl);
      if (rep.residual < ctx.closure_tol)
      {
        rep.closed = true;
        rep.order = k;
        return rep;
      }
    }
    return rep;
  }

  auto lift_conics_to_quadrics(const Conic& c, const Conic& d, const ToleranceContext& ctx)
      -> QuadricLift
  {
    const Conic cn = unit_scale(c);
    const Conic dn = unit_scale(d);
    if (!is_smooth(cn, ctx))
      fail(ErrorCode::NonGenericPencil, "first conic is singular");
    Eigen::ComplexEigenSolver<Matrix3> solver(cn.inverse() * dn);
    if (solver.info() != Eigen::Success)
      fail(ErrorCode::NonGenericPencil, "simultaneous diagonalization failed");
    std::array<int, 3> order{0, 1, 2};
    const auto& ev = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      if (ev[i].real() != ev[j].real())
        return ev[i].real() < ev[j].real();
      return ev[i].imag() < ev[j].imag();
    });
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(ev[i] - ev[j]) < std::sqrt(ctx.rel_tol) * (1.0 + std::abs(ev[i])))
          fail(ErrorCode::NonGenericPencil, "pencil has a multiple root");

    QuadricLift out;
    const double cscale = c.norm();
    for (int k = 0; k < 3; ++k)
    {
      Eigen::Vector3cd v = solver.eigenvectors().col(order[k]);
      const Complex n = bdot(v, c * v);
      if (std::abs(n) < ctx.rel_tol * cscale * v.squaredNorm())
        fail(ErrorCode::NonGenericPencil, "eigenvector is isotropic for the first conic");
      v /= std::sqrt(n);
      out.basis.col(k) = v;
      out.abg[k] = bdot(v, d * v);
    }
    out.q1 = Quadric::Identity();
    out.q2 = Quadric::Zero();
    out.q2(0, 0) = out.abg[0];
    out.q2(1, 1) = out.abg[1];
    out.q2(3, 3) = out.abg[2];
    out.p0 = Point3(0.0, 0.0, 1.0, 0.0);
    return out;
  }

  auto project_from(const Point3& p0, const Point3& x) -> Point2
  {
    const auto k = pivot_index(p0);
    const Point3 y = x - (x[k] / p0[k]) * p0;
    Point2 out;
    int j = 0;
    for (int i = 0; i < 4; ++i)
      if (i != k)
        out[j++] = y[i];
    return out;
  }

  auto branch_conic_of_projection(const Quadric& qm, const Point3& p0,
                                  const ToleranceContext& ctx) -> Conic
  {
    const Quadric q = unit_scale(qm);
    const Complex s = bdot(p0, q * p0);
    if (std::abs(s) < ctx.rel_tol * p0.squaredNorm())
      fail(ErrorCode::VertexOnQuadric, "projection center lies on the quadric");
    const Eigen::Vector4cd h = q * p0;
    // Tangent cone from p0; its vertex is p0, so any complementary plane
    // carries the branch conic.
    const Quadric cone = s * q - h * h.transpose();
    const auto k = pivot_index(p0);
    Conic out;
    int ii = 0;
    for (int i = 0; i < 4; ++i)
    {
      if (i == k)
        continue;
      int jj = 0;
      for (int j = 0; j < 4; ++j)
      {
        if (j == k)
          continue;
        out(ii, jj++) = cone(i, j);
      }
      ++ii;
    }
    return out;
  }

}  // namespace poncelet
