#include <poncelet/steiner.hpp>

#include <algorithm>
#include <limits>

namespace poncelet {

  namespace {

    auto lex_less(const CircleVector& a, const CircleVector& b) -> bool
    {
      const CircleVector na = normalize(a);
      const CircleVector nb = normalize(b);
      for (int i = 0; i < 4; ++i)
      {
        if (std::abs(na[i].real() - nb[i].real()) > 1e-9)
          return na[i].real() < nb[i].real();
        if (std::abs(na[i].imag() - nb[i].imag()) > 1e-9)
          return na[i].imag() < nb[i].imag();
      }
      return false;
    }

    auto chart(const Eigen::Vector2cd& theta, const Eigen::Vector2cd& zero,
               const Eigen::Vector2cd& pole) -> Complex
    {
      auto det = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
        return a[0] * b[1] - a[1] * b[0];
      };
      return det(theta, zero) / det(theta, pole);
    }

  }  // namespace

  auto steiner_candidates(const TouchingFamily& f, const CircleVector& s,
                          const ToleranceContext& ctx) -> std::array<CircleVector, 2>
  {
    const CircleVector sn = s / s.norm();
    if (std::abs(q_form(sn)) < ctx.rel_tol)
      fail(ErrorCode::NullCircleHit, "the chain reached a null circle of the pair");
    auto form = f.compose([&](const CircleVector& x) { return touch_residual(x, sn); }, 4);
    const Eigen::Vector2cd theta = f.parameter(s);
    form = binary_form_deflate(binary_form_deflate(form, theta), theta);
    const auto roots = binary_quadratic_roots(form[2], form[1], form[0]);
    std::array<CircleVector, 2> out{normalize(f.circle(roots[0])),
                                    normalize(f.circle(roots[1]))};
    if (lex_less(out[1], out[0]))
      std::swap(out[0], out[1]);
    return out;
  }

  auto steiner_step(const TouchingFamily& f, const CircleVector& s,
                    const std::optional<CircleVector>& prev,
                    const ToleranceContext& ctx, int branch, bool* flagged)
      -> CircleVector
  {
    const auto cand = steiner_candidates(f, s, ctx);
    const double gap = proj_distance(cand[0], cand[1]);
    if (flagged != nullptr)
      *flagged = gap < std::sqrt(ctx.rel_tol);
    if (!prev)
      return cand[branch == 0 ? 0 : 1];
    return proj_distance(cand[0], *prev) >= proj_distance(cand[1], *prev) ? cand[0]
                                                                          : cand[1];
  }

  auto steiner_chain(const TouchingFamily& f, const CircleVector& start, int branch,
                     int n_max, const ToleranceContext& ctx) -> ChainReport
  {
    ctx.validate();
    ChainReport rep;
    rep.residual = std::numeric_limits<double>::infinity();
    const CircleVector s0 = normalize(start);
    rep.elements.push_back(s0);
    bool flag = false;
    const CircleVector s1 = steiner_step(f, s0, std::nullopt, ctx, branch, &flag);
    if (flag)
      rep.flagged_steps.push_back(1);
    CircleVector prev = s0;
    CircleVector cur = s1;
    for (int k = 1; k <= n_max; ++k)
    {
      if (k > 1)
      {
        const CircleVector next = steiner_step(f, cur, prev, ctx, 0, &flag);
        if (flag)
          rep.flagged_steps.push_back(k);
        prev = cur;
        cur = next;
      }
      rep.elements.push_back(cur);
      rep.steps = k;
      const double res = proj_distance(cur, s0);
      rep.residual = res;
      if (res < ctx.closure_tol)
      {
        const CircleVector after = steiner_step(f, cur, prev, ctx);
        rep.residual = std::max(res, proj_distance(after, s1));
        if (rep.residual < ctx.closure_tol)
        {
          rep.closed = true;
          rep.order = k;
          return rep;
        }
      }
    }
    return rep;
  }

  namespace {

    auto measure(const TouchingFamily& f, const CircleVector& start,
                 std::optional<CircleVector> prev, int steps,
                 const ToleranceContext& ctx) -> SteinerMultiplier
    {
      if (steps < 1)
        fail(ErrorCode::InvalidOrder, "need at least one step");
      const auto fixed = f.null_circles();
      const Eigen::Vector2cd zero = f.parameter(fixed[0]);
      const Eigen::Vector2cd pole = f.parameter(fixed[1]);
      if (proj_distance(zero, pole) < std::sqrt(ctx.rel_tol))
        fail(ErrorCode::DegenerateConfiguration, "the null circles coincide");

      SteinerMultiplier out;
      CircleVector cur = normalize(start);
      Complex w = chart(f.parameter(cur), zero, pole);
      for (int k = 0; k < steps; ++k)
      {
        const CircleVector next = steiner_step(f, cur, prev, ctx);
        const Complex wn = chart(f.parameter(next), zero, pole);
        if (std::abs(w) == 0.0 || !std::isfinite(std::abs(wn / w)))
          fail(ErrorCode::DegenerateConfiguration, "chain hit a fixed point of the chart");
        out.ratios.push_back(wn / w);
        prev = cur;
        cur = next;
        w = wn;
      }
      const Complex lambda = out.ratios.front();
      for (const Complex r : out.ratios)
        out.deviation = std::max(out.deviation, std::abs(r - lambda) / std::abs(lambda));

      Complex v = lambda;
      if (std::abs(std::abs(v) - 1.0) > ctx.rel_tol ? std::abs(v) > 1.0 : v.imag() < 0.0)
        v = 1.0 / v;
      out.value = v;
      Complex p = 1.0;
      for (int k = 1; k <= ctx.max_order; ++k)
      {
        p *= v;
        if (std::abs(p - 1.0) < ctx.closure_tol)
        {
          out.root_of_unity_order = k;
          break;
        }
      }
      return out;
    }

  }  // namespace

  auto steiner_multiplier(const TouchingFamily& f, const CircleVector& start, int steps,
                          const ToleranceContext& ctx) -> SteinerMultiplier
  {
    return measure(f, start, std::nullopt, steps, ctx);
  }

  auto steiner_multiplier(const TouchingFamily& f, const ToleranceContext& ctx)
      -> SteinerMultiplier
  {
    const int steps = 8;
    const auto fixed = f.null_circles();
    const Eigen::Vector2cd zero = f.parameter(fixed[0]);
    const Eigen::Vector2cd pole = f.parameter(fixed[1]);
    auto at = [&](Complex w) { return f.circle(Eigen::Vector2cd(zero - w * pole)); };
    // one step from chart value 1 gives the direction; restart at
    // lambda^(-steps/2) with an explicit predecessor so the orbit stays clear
    // of both fixed points
    const Complex lambda = measure(f, at(1.0), std::nullopt, 1, ctx).ratios.front();
    const Complex w0 = std::pow(lambda, -0.5 * steps);
    return measure(f, at(w0), at(w0 / lambda), steps, ctx);
  }

}  // namespace poncelet
