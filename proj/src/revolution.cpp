#include <poncelet/revolution.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace poncelet {

  namespace {

    void require_reduced(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                         const ToleranceContext& ctx)
    {
      const BinaryQuadric diff{q1.a - q2.a, q1.b - q2.b, q1.c - q2.c};
      const double scale = std::max({std::abs(diff.a), std::abs(diff.b), std::abs(diff.c)});
      if (scale == 0.0 || std::abs(diff.discriminant()) < ctx.rel_tol * scale * scale)
        fail(ErrorCode::NonReducedIntersection, "the intersection circles touch or coincide");
    }

  }  // namespace

  auto RevolutionQuadric::matrix() const -> Quadric
  {
    Quadric m = Quadric::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = -a;
    m(2, 3) = m(3, 2) = -b / 2.0;
    m(3, 3) = -c;
    return m;
  }

  auto RevolutionQuadric::is_cone(const ToleranceContext& ctx) const -> bool
  {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    return std::abs(b * b - 4.0 * a * c) <= ctx.rel_tol * scale * scale;
  }

  auto pair_invariants(const BinaryQuadric& q, const BinaryQuadric& q2) -> PairInvariants
  {
    return {q.discriminant(), q2.discriminant(), 2.0 * (q.a * q2.c + q2.a * q.c) - q.b * q2.b};
  }

  auto pencil_discriminant_binary(const PairInvariants& inv) -> std::array<Complex, 3>
  {
    return {-inv.D1 / 4.0, inv.J12 / 2.0, -inv.D2 / 4.0};
  }

  auto closed_form_poncelet_test(const PairInvariants& inv, int n, const ToleranceContext& ctx)
      -> ClosedFormResult
  {
    if (n < 2)
      fail(ErrorCode::InvalidOrder, "order must be at least 2");
    const double scale = std::max({std::abs(inv.D1), std::abs(inv.D2), std::abs(inv.J12)});
    if (scale == 0.0)
      fail(ErrorCode::NonReducedIntersection, "all invariants vanish");
    // (b1 - b2)^2 - 4 (a1 - a2)(c1 - c2) = D1 + D2 + 2 J
    if (std::abs(inv.D1 + inv.D2 + 2.0 * inv.J12) < ctx.rel_tol * scale)
      fail(ErrorCode::NonReducedIntersection, "the intersection circles touch");
    ClosedFormResult out;
    out.residual = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k)
    {
      if (std::gcd(k, n) != 1)
        continue;
      const double cs = std::cos(2.0 * std::numbers::pi * k / n);
      const Complex lhs = inv.J12 * (1.0 + cs) + inv.D1 + inv.D2;
      const Complex rhs = inv.D1 * inv.D2 * (1.0 - cs) * (1.0 - cs);
      const double res = std::abs(lhs * lhs - rhs) / (scale * scale);
      if (res < out.residual)
        out.residual = res;
      if (res < ctx.closure_tol && !out.witness)
      {
        out.holds = true;
        out.witness = k;
      }
    }
    return out;
  }

  auto intersection_planes(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                           const ToleranceContext& ctx) -> std::array<Eigen::Vector2cd, 2>
  {
    require_reduced(q1, q2, ctx);
    const auto r = binary_quadratic_roots(q1.a - q2.a, q1.b - q2.b, q1.c - q2.c);
    return {normalize(r[0]), normalize(r[1])};
  }

  auto revolution_order(const RevolutionQuadric& q1, const RevolutionQuadric& q2, int sign2,
                        int n_max, const ToleranceContext& ctx, std::uint64_t seed)
      -> std::optional<int>
  {
    require_reduced(q1, q2, ctx);
    ToleranceContext c = ctx;
    c.max_order = n_max;
    return weyr_translation_order(Ruling(q1.matrix(), 1, ctx), Ruling(q2.matrix(), sign2, ctx),
                                  c, seed);
  }

  auto revolution_order_oracle(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                               int n_max, const ToleranceContext& ctx, std::uint64_t seed)
      -> std::optional<int>
  {
    std::optional<int> best;
    for (int s : {1, -1})
    {
      const auto o = revolution_order(q1, q2, s, n_max, ctx, seed);
      if (o && (!best || *o < *best))
        best = o;
    }
    return best;
  }

  auto revolution_multiplier(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                             int sign2, int steps, const ToleranceContext& ctx,
                             std::uint64_t seed) -> CircleMultiplier
  {
    const auto planes = intersection_planes(q1, q2, ctx);
    const Eigen::Vector2cd zt = planes[0];
    const Complex qv = q1.form()(zt[0], zt[1]);
    if (std::abs(qv) < ctx.rel_tol)
      fail(ErrorCode::DegenerateConfiguration, "intersection circle is a null circle");
    const Complex root = std::sqrt(qv);
    // x + i y = w root and x - i y = root / w put a point of the circle at chart value w
    auto at = [&](Complex w) {
      const Complex u = w * root;
      const Complex v = root / w;
      return Point3(0.5 * (u + v), Complex(0.0, -0.5) * (u - v), zt[0], zt[1]);
    };

    const Ruling r1(q1.matrix(), 1, ctx);
    const Ruling r2(q2.matrix(), sign2, ctx);
    auto chart = [&](const Point3& p) {
      const Complex lambda = (p[2] * std::conj(zt[0]) + p[3] * std::conj(zt[1]))
          / zt.squaredNorm();
      return (p[0] + Complex(0.0, 1.0) * p[1]) / (lambda * root);
    };
    auto translate = [&](const Point3& p) {
      const Point3 q = ruling_involution(r2, r1.quadric(), ruling_involution(r1, r2.quadric(), p, ctx), ctx);
      if (wedge_ratio(Eigen::Vector2cd(q[2], q[3]), zt) > std::sqrt(ctx.closure_tol))
        fail(ErrorCode::DegenerateConfiguration, "translation left the intersection circle");
      return q;
    };

    // One step from a random unit chart value estimates the multiplier; the
    // measured orbit is then centred on |w| = 1 so that it stays away from
    // the fixed points, where the circle plane is poorly conditioned.
    Rng rng(seed);
    const Complex phase = std::exp(Complex(0.0, rng.uniform(0.0, 6.283185307179586)));
    const Complex first = chart(translate(at(phase))) / phase;
    Point3 e = at(phase * std::pow(std::abs(first), -0.5 * steps));
    std::vector<Complex> ratios;
    Complex w = chart(e);
    for (int k = 0; k < steps; ++k)
    {
      e = translate(e);
      const Complex w2 = chart(e);
      ratios.push_back(w2 / w);
      w = w2;
    }
    CircleMultiplier out;
    out.ratio = ratios.front();
    for (const auto& r : ratios)
      out.deviation = std::max(out.deviation, std::abs(r - out.ratio) / std::abs(out.ratio));
    return out;
  }

}  // namespace poncelet
