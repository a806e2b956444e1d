#include <poncelet/conic.hpp>

#include <algorithm>
#include <limits>

namespace poncelet {

  namespace {

    auto lex_less(const Line2& a, const Line2& b) -> bool
    {
      const Line2 na = normalize(a);
      const Line2 nb = normalize(b);
      for (int i = 0; i < 3; ++i)
      {
        if (na[i].real() != nb[i].real())
          return na[i].real() < nb[i].real();
        if (na[i].imag() != nb[i].imag())
          return na[i].imag() < nb[i].imag();
      }
      return false;
    }

    void require_smooth(const Conic& c, const ToleranceContext& ctx)
    {
      if (!is_smooth(c, ctx))
        fail(ErrorCode::DegenerateConic, "conic is singular");
    }

  }  // namespace

  auto adjugate(const Matrix3& m) -> Matrix3
  {
    Matrix3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
      {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        a(j, i) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
      }
    return a;
  }

  auto scaled_det(const Matrix3& m) -> double
  {
    return std::abs(unit_scale(m).determinant());
  }

  auto is_smooth(const Conic& c, const ToleranceContext& ctx) -> bool
  {
    return c.norm() > 0.0 && scaled_det(c) > ctx.rel_tol;
  }

  auto incidence_residual(const Eigen::VectorXcd& l, const Eigen::VectorXcd& x) -> double
  {
    const double s = l.norm() * x.norm();
    return s == 0.0 ? 0.0 : std::abs(bdot(l, x)) / s;
  }

  auto tangency_residual(const Conic& c, const Line2& line) -> double
  {
    return form_residual(adjugate(unit_scale(c)), line);
  }

  auto line_conic_intersection(const Conic& c, const Line2& line)
      -> std::array<Point2, 2>
  {
    const auto [a, b] = annihilator_basis(line);
    const auto r = binary_quadratic_roots(bdot(a, c * a), 2.0 * bdot(a, c * b),
                                          bdot(b, c * b));
    return {normalize(Point2(r[0][0] * a + r[0][1] * b)),
            normalize(Point2(r[1][0] * a + r[1][1] * b))};
  }

  auto random_point_on_conic(const Conic& c, Rng& rng) -> Point2
  {
    return line_conic_intersection(c, rng.vector<3>())[0];
  }

  auto tangent_lines_from_point(const Conic& c, const Point2& u,
                                const ToleranceContext& ctx) -> TangentPair
  {
    require_smooth(c, ctx);
    TangentPair out;
    if (form_residual(unit_scale(c), u) < ctx.rel_tol)
    {
      // the double root is only resolved to sqrt(eps); the polar line is exact
      out.lines[0] = out.lines[1] = normalize(Line2(unit_scale(c) * u));
      out.coincident = true;
      return out;
    }
    const Matrix3 dual = adjugate(unit_scale(c));
    const auto [l1, l2] = annihilator_basis(u);
    const auto r = binary_quadratic_roots(bdot(l1, dual * l1), 2.0 * bdot(l1, dual * l2),
                                          bdot(l2, dual * l2));
    out.lines[0] = normalize(Line2(r[0][0] * l1 + r[0][1] * l2));
    out.lines[1] = normalize(Line2(r[1][0] * l1 + r[1][1] * l2));
    if (lex_less(out.lines[1], out.lines[0]))
      std::swap(out.lines[0], out.lines[1]);
    out.coincident = proj_distance(out.lines[0], out.lines[1]) < std::sqrt(ctx.rel_tol);
    return out;
  }

  auto second_intersection(const Conic& d, const Line2& line, const Point2& u,
                           const ToleranceContext& ctx) -> Point2
  {
    const Conic dn = unit_scale(d);
    const double tol = std::sqrt(ctx.closure_tol);
    if (form_residual(dn, u) > tol || incidence_residual(line, u) > tol)
      fail(ErrorCode::PointNotIncident, "point is not on both the line and the conic");
    // For x = alpha u + beta w on the line, q(x) = beta (2 alpha u^T D w + beta w^T D w).
    const Point2 w = second_point_on_line(line, u);
    const Point2 x = -bdot(w, dn * w) * u + 2.0 * bdot(u, dn * w) * w;
    if (x.norm() <= 1e-14 * u.norm() * w.norm() * w.norm())
      return normalize(u);
    return normalize(x);
  }

  auto poncelet_step(const Conic& c, const Conic& d, const TangentChainState& s,
                     const ToleranceContext& ctx, bool* flagged) -> TangentChainState
  {
    if (wedge_ratio(Eigen::Map<const Eigen::VectorXcd>(c.data(), 9),
                    Eigen::Map<const Eigen::VectorXcd>(d.data(), 9)) < ctx.rel_tol)
      fail(ErrorCode::PencilDegenerate, "the two conics coincide");
    const Point2 u2 = second_intersection(d, s.T, s.u, ctx);
    const TangentPair tp = tangent_lines_from_point(c, u2, ctx);
    const double d0 = proj_distance(tp.lines[0], s.T);
    const double d1 = proj_distance(tp.lines[1], s.T);
    if (flagged != nullptr)
      *flagged = std::min(d0, d1) > std::sqrt(ctx.closure_tol) || tp.coincident;
    return {u2, d0 >= d1 ? tp.lines[0] : tp.lines[1]};
  }

  auto poncelet_step_back(const Conic& c, const Conic& d, const TangentChainState& s,
                          const ToleranceContext& ctx) -> TangentChainState
  {
    const TangentPair tp = tangent_lines_from_point(c, s.u, ctx);
    const Line2 t = proj_distance(tp.lines[0], s.T) >= proj_distance(tp.lines[1], s.T)
        ? tp.lines[0] : tp.lines[1];
    return {second_intersection(d, t, s.u, ctx), t};
  }

  auto make_chain_state(const Conic& c, const Point2& u, int branch,
                        const ToleranceContext& ctx) -> TangentChainState
  {
    const TangentPair tp = tangent_lines_from_point(c, u, ctx);
    return {normalize(u), tp.lines[branch == 0 ? 0 : 1]};
  }

  auto poncelet_chain(const Conic& c, const Conic& d, const TangentChainState& start,
                      int n_max, const ToleranceContext& ctx) -> ChainReport
  {
    ctx.validate();
    ChainReport rep;
    rep.residual = std::numeric_limits<double>::infinity();
    TangentChainState s{normalize(start.u), normalize(start.T)};
    rep.elements.push_back(s.u);
    rep.elements.push_back(s.T);
    for (int k = 1; k <= n_max; ++k)
    {
      bool flag = false;
      s = poncelet_step(c, d, s, ctx, &flag);
      if (flag)
        rep.flagged_steps.push_back(k);
      rep.elements.push_back(s.u);
      rep.elements.push_back(s.T);
      rep.steps = k;
      const double res = std::max(proj_distance(s.u, start.u), proj_distance(s.T, start.T));
      if (res < ctx.closure_tol)
      {
        rep.closed = true;
        rep.order = k;
        rep.residual = res;
        return rep;
      }
      rep.residual = res;
    }
    return rep;
  }

  auto jordan_totient_T(int n) -> long long
  {
    if (n < 1)
      fail(ErrorCode::InvalidOrder, "order must be at least 1");
    long long num = static_cast<long long>(n) * n;
    int m = n;
    auto remove = [&](long long p) {
      num = num / (p * p) * (p * p - 1);
      while (m % p == 0)
        m /= static_cast<int>(p);
    };
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0)
        remove(p);
    if (m > 1)
      remove(m);
    return num;
  }

}  // namespace poncelet
