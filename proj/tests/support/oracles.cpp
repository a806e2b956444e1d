#include "oracles.hpp"

#include <poncelet/emch.hpp>
#include <poncelet/polynomial.hpp>

#include <numbers>

namespace oracle {

  namespace {

    auto chart_of(const Eigen::VectorXcd& l, const Eigen::VectorXcd& m)
    {
      return [l, m](const Eigen::VectorXcd& x) { return bdot(l, x) / bdot(m, x); };
    }

    // (x : y) roots of alpha x^2 + 2 beta x y + gamma y^2.
    auto quadratic_pair(Complex alpha, Complex beta, Complex gamma)
        -> std::array<Eigen::Vector2cd, 2>
    {
      const Complex d = std::sqrt(beta * beta - alpha * gamma);
      if (std::abs(alpha) >= std::abs(gamma))
        return {Eigen::Vector2cd(-beta + d, alpha), Eigen::Vector2cd(-beta - d, alpha)};
      return {Eigen::Vector2cd(gamma, -beta - d), Eigen::Vector2cd(gamma, -beta + d)};
    }

    template <typename M, typename V>
    auto meet_span(const M& c, const V& a, const V& b) -> std::array<V, 2>
    {
      const auto r = quadratic_pair(bdot(a, c * a), bdot(a, c * b), bdot(b, c * b));
      return {normalize(V(r[0][0] * a + r[0][1] * b)), normalize(V(r[1][0] * a + r[1][1] * b))};
    }

    auto farther(const Point2& x, const std::array<Point2, 2>& c) -> Point2
    {
      return proj_distance(c[0], x) >= proj_distance(c[1], x) ? c[0] : c[1];
    }

  }  // namespace

  auto meet(const Conic& c, const Line2& l) -> std::array<Point2, 2>
  {
    Eigen::Index k = 0;
    l.cwiseAbs().minCoeff(&k);
    const Point2 a = cross(l, Point2(Point2::Unit(k)));
    const Point2 b = cross(l, a);
    return meet_span(c, a, b);
  }

  auto traverse_start(const Conic& inner, const Point2& u, int branch) -> Traverse
  {
    const auto touch = meet(inner, inner * u);
    return {u, normalize(Line2(inner * touch[branch]))};
  }

  auto traverse_step(const Conic& inner, const Conic& outer, const Traverse& s) -> Traverse
  {
    const Point2 u = farther(s.u, meet(outer, s.T));
    const auto touch = meet(inner, inner * u);
    const Line2 t0 = normalize(Line2(inner * touch[0]));
    const Line2 t1 = normalize(Line2(inner * touch[1]));
    return {u, proj_distance(t0, s.T) >= proj_distance(t1, s.T) ? t0 : t1};
  }

  auto tuned_plane_pair(int n, Rng& rng) -> std::optional<PlanePair>
  {
    const Conic d = unit_scale(Conic(rng.symmetric<3>()));
    const Conic c0 = unit_scale(Conic(rng.symmetric<3>()));
    const Point2 u0 = meet(d, rng.vector<3>())[0];
    const auto chart = chart_of(rng.vector<3>(), rng.vector<3>());
    auto orbit = [&](Complex s, int steps) {
      const Conic c = c0 + s * d;
      Traverse t = traverse_start(c, u0, 0);
      for (int k = 0; k < steps; ++k)
        t = traverse_step(c, d, t);
      return t;
    };
    for (int attempt = 0; attempt < 40; ++attempt)
    {
      const auto s = newton_solve([&](Complex x) { return chart(orbit(x, n).u) - chart(u0); },
                                  2.0 * rng.disk());
      if (!s)
        continue;
      const Conic c = c0 + *s * d;
      const Traverse first = traverse_start(c, u0, 0);
      Traverse t = first;
      bool ok = true;
      for (int k = 1; k <= n && ok; ++k)
      {
        t = traverse_step(c, d, t);
        const bool back = proj_distance(t.u, first.u) < 1e-8 && proj_distance(t.T, first.T) < 1e-8;
        ok = (k == n) == back;
      }
      if (ok && scaled_det(c) > 1e-3)
        return PlanePair{c, d};
    }
    return std::nullopt;
  }

  auto translate(const Ruling& r1, const Ruling& r2, Point3 e, int k) -> Point3
  {
    for (int i = 0; i < k; ++i)
    {
      e = ruling_involution(r1, r2.quadric(), e);
      e = ruling_involution(r2, r1.quadric(), e);
    }
    return e;
  }

  auto tuned_quadric_pair(int n, Rng& rng) -> std::optional<QuadricPair>
  {
    const Quadric q1 = rng.symmetric<4>();
    const Ruling r1(q1, 1);
    // a fresh pencil and start line when Newton keeps failing on one
    for (int pencil = 0; pencil < 8; ++pencil)
    {
      const Quadric a = rng.symmetric<4>();
      const Quadric b = rng.symmetric<4>();
      const Line3 l1 = r1.line_through(random_point_on_quadric(q1, rng));
      const auto chart = chart_of(rng.vector<4>(), rng.vector<4>());
      auto start = [&](Complex s) { return meet_span(Quadric(a + s * b), l1.p, l1.q)[0]; };
      for (int attempt = 0; attempt < 25; ++attempt)
      {
        try
        {
          const auto s = newton_solve(
              [&](Complex x) {
                const Quadric q2 = a + x * b;
                const Point3 e = start(x);
                return chart(translate(r1, Ruling(q2, 1), e, n)) - chart(e);
              },
              rng.disk());
          if (!s)
            continue;
          const Quadric q2 = a + *s * b;
          const ChainReport rep = weyr_chain(r1, Ruling(q2, 1), start(*s), 12);
          if (rep.closed && rep.order == n)
            return QuadricPair{q1, q2};
        }
        catch (const GeometryError&)
        {
        }
      }
    }
    return std::nullopt;
  }

  auto polarized_invariants(const RevolutionQuadric& q1, const RevolutionQuadric& q2)
      -> PairInvariants
  {
    const BinaryQuadric sum{q1.a + q2.a, q1.b + q2.b, q1.c + q2.c};
    const Complex d1 = q1.form().discriminant();
    const Complex d2 = q2.form().discriminant();
    return {d1, d2, 0.5 * (d1 + d2 - sum.discriminant())};
  }

  auto revolution_c2(const RevolutionQuadric& q1, Complex a2, Complex b2, int n, int k)
      -> std::array<Complex, 2>
  {
    const double cs = std::cos(2.0 * std::numbers::pi * k / n);
    auto f = [&](Complex c2) {
      const PairInvariants inv = polarized_invariants(q1, {a2, b2, c2});
      const Complex lhs = inv.J12 * (1.0 + cs) + inv.D1 + inv.D2;
      return lhs * lhs - inv.D1 * inv.D2 * (1.0 - cs) * (1.0 - cs);
    };
    const Complex f0 = f(0.0);
    const Complex fp = f(1.0);
    const Complex fm = f(-1.0);
    const Complex qa = 0.5 * (fp + fm) - f0;
    const Complex qb = 0.5 * (fp - fm);
    const Complex d = std::sqrt(qb * qb - 4.0 * qa * f0);
    return {(-qb + d) / (2.0 * qa), (-qb - d) / (2.0 * qa)};
  }

  auto revolution_c2_order2(const RevolutionQuadric& q1, Complex a2, Complex b2) -> Complex
  {
    return (b2 * b2 - q1.form().discriminant()) / (4.0 * a2);
  }

  auto orthogonal_pair(Rng& rng) -> std::array<CircleVector, 2>
  {
    const double x = rng.uniform(-1, 1);
    const double y = rng.uniform(-1, 1);
    const double r1 = rng.uniform(0.5, 1.5);
    const double r2 = rng.uniform(0.5, 1.5);
    const double phi = rng.uniform(0, 2 * std::numbers::pi);
    const double d = std::hypot(r1, r2);
    return {make_circle(x, y, r1),
            make_circle(x + d * std::cos(phi), y + d * std::sin(phi), r2)};
  }

  auto crossing_pair(Rng& rng) -> std::array<CircleVector, 2>
  {
    const double x = rng.uniform(-1, 1);
    const double y = rng.uniform(-1, 1);
    const double r1 = rng.uniform(0.5, 1.5);
    const double r2 = rng.uniform(0.5, 1.5);
    const double phi = rng.uniform(0, 2 * std::numbers::pi);
    const double lo = std::abs(r1 - r2);
    const double d = rng.uniform(lo + 0.05 * (r1 + r2 - lo), r1 + r2 - 0.05 * (r1 + r2 - lo));
    return {make_circle(x, y, r1),
            make_circle(x + d * std::cos(phi), y + d * std::sin(phi), r2)};
  }

  auto crossing_cosine(const CircleVector& c1, const CircleVector& c2) -> double
  {
    auto centre = [](const CircleVector& c) {
      return Eigen::Vector2d(-(c[1] / c[0]).real(), -(c[2] / c[0]).real());
    };
    auto radius = [&](const CircleVector& c) {
      return std::sqrt(centre(c).squaredNorm() - (c[3] / c[0]).real());
    };
    const Eigen::Vector2d m1 = centre(c1);
    const Eigen::Vector2d m2 = centre(c2);
    const double r1 = radius(c1);
    const double r2 = radius(c2);
    const Eigen::Vector2d u = (m2 - m1).normalized();
    const double d = (m2 - m1).norm();
    const double along = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    const Eigen::Vector2d p =
        m1 + along * u + std::sqrt(r1 * r1 - along * along) * Eigen::Vector2d(-u[1], u[0]);
    // gradients of x^2 + y^2 + 2bx + 2cy + d with a = 1
    const Eigen::Vector2d g1 = 2.0 * (p - m1);
    const Eigen::Vector2d g2 = 2.0 * (p - m2);
    return g1.dot(g2) / (g1.norm() * g2.norm());
  }

  auto inner_touching(Complex mx, Complex my, Complex R, Complex rho, Complex phi)
      -> CircleVector
  {
    return make_circle(mx + (R - rho) * std::cos(phi), my + (R - rho) * std::sin(phi), rho);
  }

  auto tuned_emch_circle(const TouchingFamily& f, const CircleVector& s1, const Point2& p1,
                         int n, Rng& rng) -> std::optional<CircleVector>
  {
    const Eigen::MatrixXcd through = annihilator(circles_through(p1));
    const Eigen::Vector2cd t1 = f.parameter(s1);
    // Newton often stalls or lands on roots where only S returns (P at the
    // other point of S1 and C) or with a smaller period, so several lines of
    // circles through p1 are searched.
    for (int line = 0; line < 10; ++line)
    {
      const CircleVector c0 = through * rng.vector<3>();
      const CircleVector dir = through * rng.vector<3>();
      for (int attempt = 0; attempt < 30; ++attempt)
      {
        try
        {
          const auto s = newton_solve(
              [&](Complex x) {
                const CircleVector c = c0 + x * dir;
                EmchState e{s1, p1};
                for (int k = 0; k < n; ++k)
                  e = emch_step(f, c, e);
                const Eigen::Vector2cd t = f.parameter(e.S);
                return t[0] / t[1] - t1[0] / t1[1];
              },
              2.0 * rng.disk());
          if (!s)
            continue;
          const CircleVector c = c0 + *s * dir;
          const ChainReport rep = emch_chain(f, c, EmchState{s1, p1}, 12);
          if (rep.closed && rep.order == n)
            return c;
        }
        catch (const GeometryError&)
        {
        }
      }
    }
    return std::nullopt;
  }

  auto tuned_zigzag_radius(const Circle3D& c1, const Circle3D& c2, const Point3& p1,
                           int n, Rng& rng) -> std::optional<Complex>
  {
    for (int round = 0; round < 8; ++round)
    {
      const auto chart = chart_of(rng.vector<4>(), rng.vector<4>());
      for (int attempt = 0; attempt < 25; ++attempt)
      {
        try
        {
          const auto r = newton_solve(
              [&](Complex x) {
                Point3 prev = p1;
                Point3 cur = zigzag_step(c2, x, p1, std::nullopt)[0];
                for (int k = 0; k < n; ++k)
                  for (int h = 0; h < 2; ++h)
                  {
                    const Point3 next = zigzag_step(h == 0 ? c1 : c2, x, cur, prev)[0];
                    prev = cur;
                    cur = next;
                  }
                return chart(prev) - chart(p1);
              },
              0.5 + (1.0 + 0.25 * round) * rng.disk());
          if (!r)
            continue;
          const ChainReport rep = zigzag_chain(c1, c2, *r, p1, 0, 12);
          if (rep.closed && rep.order == n)
            return r;
        }
        catch (const GeometryError&)
        {
        }
      }
    }
    return std::nullopt;
  }

  auto affine_closes(std::array<bool, 3> alpha, std::array<bool, 3> beta) -> bool
  {
    // x -> s x + sum_i c_i g_i over the generators g = (a1, a2, a3, tau)
    struct Affine
    {
      int s = 1;
      std::array<int, 4> c{};
    };
    auto apply_involution = [](Affine m, int j) {
      m.s = -m.s;
      for (int& v : m.c)
        v = -v;
      m.c[j] += 1;
      return m;
    };
    auto apply_translation = [](Affine m) {
      m.c[3] += 1;
      return m;
    };
    Affine w;
    for (int j = 0; j < 3; ++j)
      if (alpha[j])
        w = apply_involution(w, j);
    w = apply_translation(w);
    for (int j = 0; j < 3; ++j)
      if (beta[j])
        w = apply_involution(w, j);
    w = apply_translation(w);
    const bool identity = w.s == 1 && w.c == std::array<int, 4>{0, 0, 0, 0};
    const bool first_involution = w.s == -1 && w.c == std::array<int, 4>{1, 0, 0, 0};
    return identity || first_involution;
  }

}  // namespace oracle
