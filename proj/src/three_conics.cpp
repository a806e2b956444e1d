#include <poncelet/three_conics.hpp>

#include <Eigen/QR>

#include <cmath>

namespace poncelet {

  namespace {

    auto upper(const Conic& c) -> Eigen::Matrix<Complex, 6, 1>
    {
      const Conic n = unit_scale(c);
      Eigen::Matrix<Complex, 6, 1> v;
      v << n(0, 0), n(0, 1), n(0, 2), n(1, 1), n(1, 2), n(2, 2);
      return v;
    }

    //! Ordinary traverse read as a tangent sequence (c1 = c2).
    auto single_conic_sequence(const Conic& c, const Conic& c1, const TangentChainState& start,
                               int n_max, const ToleranceContext& ctx) -> ChainReport
    {
      ChainReport rep;
      TangentChainState s{normalize(start.u), normalize(start.T)};
      rep.elements.push_back(s.u);
      rep.elements.push_back(s.T);
      for (int k = 1; k <= n_max; ++k)
      {
        for (int half = 0; half < 2; ++half)
        {
          bool flag = false;
          s = poncelet_step(c1, c, s, ctx, &flag);
          if (flag)
            rep.flagged_steps.push_back(2 * k - 1 + half);
          rep.elements.push_back(s.u);
          rep.elements.push_back(s.T);
        }
        rep.steps = k;
        rep.residual = proj_distance(s.T, start.T);
        if (rep.residual < ctx.closure_tol)
        {
          rep.closed = true;
          rep.order = k;
          break;
        }
      }
      return rep;
    }

  }  // namespace

  auto in_one_pencil(const Conic& c, const Conic& c1, const Conic& c2,
                     const ToleranceContext& ctx) -> bool
  {
    Eigen::Matrix<Complex, 3, 6> m;
    m.row(0) = upper(c).transpose();
    m.row(1) = upper(c1).transpose();
    m.row(2) = upper(c2).transpose();
    return numerical_rank(m, std::sqrt(ctx.rel_tol)) <= 2;
  }

  auto three_conics_chain(const Conic& c, const Conic& c1, const Conic& c2,
                          const TangentChainState& start, int branch2, int n_max,
                          const ToleranceContext& ctx, const std::optional<Line2>& t2)
      -> ChainReport
  {
    ctx.validate();
    if (!in_one_pencil(c, c1, c2, ctx))
      fail(ErrorCode::NotCoaxalPencil, "the three conics do not lie in one pencil");
    if (wedge_ratio(upper(c1), upper(c2)) < std::sqrt(ctx.rel_tol))
      return single_conic_sequence(c, c1, start, n_max, ctx);

    // c = a c1 + b c2
    Eigen::Matrix<Complex, 6, 2> basis;
    basis.col(0) = upper(c1) * c1.norm();
    basis.col(1) = upper(c2) * c2.norm();
    const Eigen::Matrix<Complex, 6, 1> target = upper(c) * c.norm();
    const Eigen::Vector2cd ab = basis.colPivHouseholderQr().solve(target);
    const double scale = ab.norm();
    if (std::abs(ab[0]) < std::sqrt(ctx.rel_tol) * scale
        || std::abs(ab[1]) < std::sqrt(ctx.rel_tol) * scale)
      fail(ErrorCode::PencilDegenerate, "the vertex conic must differ from both tangent conics");

    // Lift: c1 -> x^2 + y^2 + z^2 + t^2, c2 -> alpha x^2 + beta y^2 + k z^2 + gamma t^2,
    // with k chosen so that a q1 + b q2 is the cone over c with vertex (0:0:1:0).
    const QuadricLift lift = lift_conics_to_quadrics(c1, c2, ctx);
    const Quadric q1 = lift.q1;
    Quadric q2 = lift.q2;
    q2(2, 2) = -ab[0] / ab[1];
    const Matrix3 to_lift = lift.basis.inverse();

    auto image = [&](const Point3& x) -> Point2 {
      return normalize(Point2(lift.basis * Eigen::Vector3cd(x[0], x[1], x[3])));
    };
    auto image_line = [&](const Line3& l) -> Line2 {
      return normalize(cross(image(l.p), image(l.q)));
    };
    auto ruling_matching = [&](const Quadric& q, const Point3& p, const Line2& t) {
      const auto lines = lines_through_point(q, p, ctx);
      const Line3& best = lines.size() < 2
              || proj_distance(image_line(lines[0]), t) <= proj_distance(image_line(lines[1]), t)
          ? lines[0] : lines[1];
      return Ruling::containing(q, best, ctx);
    };

    const Eigen::Vector3cd X = to_lift * normalize(start.u);
    const Complex z = std::sqrt(-(X[0] * X[0] + X[1] * X[1] + X[2] * X[2]));
    const Point3 e = normalize(Point3(X[0], X[1], z, X[2]));
    const Line2 t1 = normalize(start.T);
    const Ruling r1 = ruling_matching(q1, e, t1);
    const Point3 e2 = ruling_involution(r1, q2, e, ctx);
    const Point2 p2 = image(e2);
    const Line2 second = t2 ? normalize(*t2)
                            : tangent_lines_from_point(c2, p2, ctx).lines[branch2 == 0 ? 0 : 1];
    const Ruling r2 = ruling_matching(q2, e2, second);

    ChainReport rep;
    rep.elements.push_back(normalize(start.u));
    rep.elements.push_back(t1);
    Point3 x = e;
    for (int k = 1; k <= n_max; ++k)
    {
      const Point3 y = ruling_involution(r1, q2, x, ctx);
      const Line2 even = image_line(r2.line_through(y));
      rep.elements.push_back(image(y));
      rep.elements.push_back(even);
      x = ruling_involution(r2, q1, y, ctx);
      const Line2 odd = image_line(r1.line_through(x));
      rep.elements.push_back(image(x));
      rep.elements.push_back(odd);
      if (tangency_residual(c2, even) > std::sqrt(ctx.closure_tol)
          || tangency_residual(c1, odd) > std::sqrt(ctx.closure_tol))
        rep.flagged_steps.push_back(k);
      rep.steps = k;
      rep.residual = proj_distance(odd, t1);
      if (rep.residual < ctx.closure_tol)
      {
        rep.closed = true;
        rep.order = k;
        break;
      }
    }
    return rep;
  }

}  // namespace poncelet
