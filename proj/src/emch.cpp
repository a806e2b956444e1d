#include <poncelet/emch.hpp>

#include <limits>

namespace poncelet {

  namespace {

    auto other_family_circle(const TouchingFamily& f, const Point2& p,
                             const CircleVector& s) -> CircleVector
    {
      const Plane3 pi = circles_through(p);
      const std::vector<Complex> form{bdot(pi, f.coeff[0]), bdot(pi, f.coeff[1]),
                                      bdot(pi, f.coeff[2])};
      const auto lin = binary_form_deflate(form, f.parameter(s));
      return normalize(f.circle(Eigen::Vector2cd(-lin[0], lin[1])));
    }

    auto other_point(const CircleVector& s, const CircleVector& c, const Point2& p,
                     const ToleranceContext& ctx) -> Point2
    {
      const Line2 l = radical_line(s, c);
      const CircleVector& host = std::abs(c[0]) >= std::abs(s[0]) ? c : s;
      return normalize(second_intersection(circle_matrix(host), l, p, ctx));
    }

    auto state_vector(const EmchState& s) -> Eigen::VectorXcd
    {
      Eigen::VectorXcd v(7);
      v << s.S, s.P;
      return v;
    }

  }  // namespace

  auto make_emch_state(const CircleVector& c, const CircleVector& s, int branch)
      -> EmchState
  {
    const auto pts = circle_intersections(s, c);
    return {normalize(s), normalize(pts[branch == 0 ? 0 : 1])};
  }

  auto emch_step(const TouchingFamily& f, const CircleVector& c, const EmchState& s,
                 const ToleranceContext& ctx, bool* flagged) -> EmchState
  {
    const CircleVector s2 = other_family_circle(f, s.P, s.S);
    if (proj_distance(s2, s.S) < std::sqrt(ctx.rel_tol))
      fail(ErrorCode::BranchPoint, "the two family circles through P coincide");
    const Point2 p2 = other_point(s2, c, s.P, ctx);
    if (flagged != nullptr)
      *flagged = form_residual(circle_matrix(s2), p2) > ctx.closure_tol ||
                 form_residual(circle_matrix(c), p2) > ctx.closure_tol ||
                 proj_distance(p2, s.P) < std::sqrt(ctx.rel_tol);
    return {s2, p2};
  }

  auto emch_step_back(const TouchingFamily& f, const CircleVector& c,
                      const EmchState& s, const ToleranceContext& ctx) -> EmchState
  {
    const Point2 p0 = other_point(s.S, c, s.P, ctx);
    const CircleVector s0 = other_family_circle(f, p0, s.S);
    return {s0, p0};
  }

  auto emch_chain(const TouchingFamily& f, const CircleVector& c,
                  const EmchState& start, int n_max, const ToleranceContext& ctx)
      -> ChainReport
  {
    ctx.validate();
    ChainReport rep;
    rep.residual = std::numeric_limits<double>::infinity();
    const EmchState first{normalize(start.S), normalize(start.P)};
    EmchState s = first;
    rep.elements.push_back(state_vector(s));
    for (int k = 1; k <= n_max; ++k)
    {
      bool flag = false;
      s = emch_step(f, c, s, ctx, &flag);
      if (flag)
        rep.flagged_steps.push_back(k);
      rep.elements.push_back(state_vector(s));
      rep.steps = k;
      const double res = std::max(proj_distance(s.S, first.S), proj_distance(s.P, first.P));
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

  auto emch_branch_circles(const TouchingFamily& f, const CircleVector& c,
                           const ToleranceContext& ctx) -> std::vector<CircleVector>
  {
    const CircleVector cn = c / c.norm();
    const auto form = f.compose([&](const CircleVector& x) { return touch_residual(x, cn); }, 4);
    std::vector<CircleVector> out;
    for (const auto& r : binary_form_roots(form, ctx.rel_tol))
      for (int m = 0; m < r.multiplicity; ++m)
        out.push_back(normalize(f.circle(r.point)));
    return out;
  }

}  // namespace poncelet
