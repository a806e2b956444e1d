#include <poncelet/money_coutts.hpp>

#include <poncelet/polynomial.hpp>

#include <limits>

namespace poncelet {

  namespace {

    auto contact_circle(const MoneyCouttsSetup& m, int j, const CircleVector& s)
        -> CircleVector
    {
      const Plane3& pi = m.families[(j + 1) % 3].plane;
      const CircleVector& c = m.circles[(j + 1) % 3];
      return bdot(pi, c) * s - bdot(pi, s) * c;
    }

    auto fit_contact(const MoneyCouttsSetup& m, int j, const ToleranceContext& ctx)
        -> Matrix2
    {
      const TouchingFamily& f = m.families[j];
      const TouchingFamily& g = m.families[(j + 1) % 3];
      const std::array<Complex, 5> samples{0.0, 1.0, -1.0, Complex(0.3, 0.7),
                                           Complex(-0.6, -0.4)};
      Eigen::Matrix<Complex, 5, 4> rows;
      for (int k = 0; k < 5; ++k)
      {
        const Complex th = samples[k];
        const Eigen::Vector2cd mu = g.parameter(contact_circle(m, j, f.circle(th)));
        rows.row(k) << -mu[1] * th, -mu[1], mu[0] * th, mu[0];
      }
      const Eigen::MatrixXcd ns = null_space(rows, std::sqrt(ctx.rel_tol));
      if (ns.cols() != 1)
        fail(ErrorCode::DegenerateConfiguration, "contact correspondence is not a Moebius map");
      Matrix2 mm;
      mm << ns(0, 0), ns(1, 0), ns(2, 0), ns(3, 0);
      return mm;
    }

    auto touch_form(const MoneyCouttsSetup& m, int j) 
    {
      const TouchingFamily& f = m.families[j];
      const TouchingFamily& g = m.families[(j + 1) % 3];
      return [&f, &g](const Eigen::Vector2cd& th, const Eigen::Vector2cd& mu) {
        return touch_residual(f.circle(th), g.circle(mu));
      };
    }

    auto discriminant(const std::array<Complex, 3>& q) -> Complex
    {
      return q[1] * q[1] - 4.0 * q[2] * q[0];
    }

    auto other_root(const std::array<Complex, 3>& q, Complex x) -> Complex
    {
      return -q[1] / q[2] - x;
    }

    auto quadratic_roots(const std::array<Complex, 3>& q) -> std::array<Complex, 2>
    {
      const auto r = binary_quadratic_roots(q[2], q[1], q[0]);
      return {r[0][0] / r[0][1], r[1][0] / r[1][1]};
    }

    auto lex_first(const std::array<Complex, 2>& r) -> Complex
    {
      if (std::abs(r[0].real() - r[1].real()) > 1e-12)
        return r[0].real() < r[1].real() ? r[0] : r[1];
      return r[0].imag() < r[1].imag() ? r[0] : r[1];
    }

    struct Pointer
    {
      int stage = 0;
      Complex theta;
      Complex mu;
    };

    //! Applies the bit, returns the emitted circle parameter (in F_{stage+1})
    //! and moves the pointer to the next curve.
    auto advance(const MoneyCouttsSetup& m, Pointer& p, bool involution,
                 const ToleranceContext& ctx, bool* flagged) -> Complex
    {
      const int j = p.stage;
      if (involution)
        p.mu = other_root(contact_quadratic_second(m, j, p.theta), p.mu);
      const Complex emitted = p.mu;
      const auto h = contact_quadratic_first(m, j, p.mu);
      const Complex y = (2.0 * h[2] * p.theta + h[1]) / m.sheet[j];
      const int k = (j + 1) % 3;
      const auto g = contact_quadratic_second(m, k, p.mu);
      const auto roots = quadratic_roots(g);
      const Complex y0 = 2.0 * g[2] * roots[0] + g[1];
      const Complex y1 = 2.0 * g[2] * roots[1] + g[1];
      const bool first = std::abs(y0 - y) <= std::abs(y1 - y);
      if (flagged != nullptr)
        *flagged = std::abs(y0 - y1) < std::sqrt(ctx.rel_tol) * (std::abs(y0) + std::abs(y1));
      p = Pointer{k, emitted, first ? roots[0] : roots[1]};
      return emitted;
    }

    auto start_pointer(const MoneyCouttsSetup& m, Complex theta0) -> Pointer
    {
      return Pointer{0, theta0, lex_first(quadratic_roots(contact_quadratic_second(m, 0, theta0)))};
    }

  }  // namespace

  auto contact_quadratic_second(const MoneyCouttsSetup& m, int j, Complex theta)
      -> std::array<Complex, 3>
  {
    const auto t = touch_form(m, j);
    const Eigen::Vector2cd th(theta, 1.0);
    auto form = binary_form_interpolate(
        [&](Complex s, Complex u) { return t(th, Eigen::Vector2cd(s, u)); }, 4);
    const Eigen::Vector2cd p = m.contact[j] * th;
    form = binary_form_deflate(binary_form_deflate(form, p), p);
    return {form[0], form[1], form[2]};
  }

  auto contact_quadratic_first(const MoneyCouttsSetup& m, int j, Complex mu)
      -> std::array<Complex, 3>
  {
    const auto t = touch_form(m, j);
    const Eigen::Vector2cd nu(mu, 1.0);
    auto form = binary_form_interpolate(
        [&](Complex s, Complex u) { return t(Eigen::Vector2cd(s, u), nu); }, 4);
    const Matrix2& c = m.contact[j];
    // det[(mu, 1), C (s, u)] = s (mu c10 - c00) + u (mu c11 - c01)
    const Eigen::Vector2cd p(-(mu * c(1, 1) - c(0, 1)), mu * c(1, 0) - c(0, 0));
    form = binary_form_deflate(binary_form_deflate(form, p), p);
    return {form[0], form[1], form[2]};
  }

  auto make_money_coutts(const CircleVector& c1, const CircleVector& c2,
                         const CircleVector& c3, int sign1, int sign2,
                         const ToleranceContext& ctx) -> MoneyCouttsSetup
  {
    const int s1 = sign1 >= 0 ? 1 : -1;
    const int s2 = sign2 >= 0 ? 1 : -1;
    return make_money_coutts(c1, c2, c3, s1, s2, -s1 * s2, ctx);
  }

  auto make_money_coutts(const CircleVector& c1, const CircleVector& c2,
                         const CircleVector& c3, int sign1, int sign2, int sign3,
                         const ToleranceContext& ctx) -> MoneyCouttsSetup
  {
    ctx.validate();
    MoneyCouttsSetup m;
    m.circles = {c1, c2, c3};
    m.families = {touching_family(c1, c2, sign1, ctx), touching_family(c2, c3, sign2, ctx),
                  touching_family(c3, c1, sign3, ctx)};
    if (!common_line(c1, c2, c3, m.families[0].sign, m.families[2].sign,
                     m.families[1].sign, ctx))
      fail(ErrorCode::FamilyMismatch, "the three family planes do not share a line");
    for (int j = 0; j < 3; ++j)
      m.contact[j] = fit_contact(m, j, ctx);

    const std::array<Complex, 3> samples{Complex(0.31, 0.12), Complex(-0.74, 0.41),
                                         Complex(1.13, -0.52)};
    for (int j = 0; j < 3; ++j)
    {
      const int k = (j + 1) % 3;
      std::array<Complex, 3> ratio;
      for (int i = 0; i < 3; ++i)
        ratio[i] = discriminant(contact_quadratic_first(m, j, samples[i])) /
                   discriminant(contact_quadratic_second(m, k, samples[i]));
      m.kappa[j] = ratio[0];
      for (int i = 1; i < 3; ++i)
        m.kappa_spread = std::max(m.kappa_spread, std::abs(ratio[i] - ratio[0]) / std::abs(ratio[0]));
    }
    if (m.kappa_spread > std::sqrt(ctx.rel_tol))
      fail(ErrorCode::FamilyMismatch, "branch points of adjacent contact curves differ");

    // pulling the invariant differential around the three identifications
    // multiplies it by -s1 s2 s3; +1 makes the composite a translation
    m.sheet[0] = std::sqrt(m.kappa[0]);
    m.sheet[1] = std::sqrt(m.kappa[1]);
    m.sheet[2] = -1.0 / (m.sheet[0] * m.sheet[1]);
    m.kappa_product_defect = std::abs(m.kappa[0] * m.kappa[1] * m.kappa[2] - 1.0);
    if (m.kappa_product_defect > std::sqrt(ctx.rel_tol))
      fail(ErrorCode::ToleranceFailure, "contact curves are not isomorphic");
    return m;
  }

  auto money_coutts_sequence(const MoneyCouttsSetup& m, Complex theta0,
                             const ChoiceSequence& choices, const ToleranceContext& ctx)
      -> ChainReport
  {
    ctx.validate();
    if (choices.rounds.empty())
      fail(ErrorCode::InvalidOrder, "need at least one round of choices");
    ChainReport rep;
    const CircleVector s1 = normalize(m.families[0].circle(theta0));
    rep.elements.push_back(s1);
    Pointer p = start_pointer(m, theta0);
    int step = 0;
    CircleVector last = s1;
    for (const auto& round : choices.rounds)
      for (int j = 0; j < 3; ++j)
      {
        bool flag = false;
        const Complex mu = advance(m, p, round[j], ctx, &flag);
        ++step;
        if (flag)
          rep.flagged_steps.push_back(step);
        last = normalize(m.families[(j + 1) % 3].circle(mu));
        rep.elements.push_back(last);
      }
    rep.steps = static_cast<int>(choices.rounds.size());
    rep.residual = proj_distance(last, s1);
    rep.closed = rep.residual < ctx.closure_tol;
    if (rep.closed)
      rep.order = rep.steps;
    return rep;
  }

  auto money_coutts_run(const MoneyCouttsSetup& m, Complex theta0,
                        std::array<bool, 3> alpha, const ToleranceContext& ctx,
                        bool wrong_parity) -> MoneyCouttsRun
  {
    MoneyCouttsRun run;
    run.alpha = alpha;
    run.beta = alpha;
    const int others = static_cast<int>(alpha[1]) + static_cast<int>(alpha[2]);
    run.beta[0] = (others % 2 == 0) != wrong_parity;
    const ChoiceSequence seq{{alpha, run.beta}};
    const ChainReport rep = money_coutts_sequence(m, theta0, seq, ctx);
    for (int i = 0; i < 7; ++i)
      run.S[i] = rep.elements[i];
    run.closed = rep.closed;
    run.residual = rep.residual;
    for (int i = 0; i < 7; ++i)
    {
      const TouchingFamily& f = m.families[i % 3];
      run.link_residual = std::max({run.link_residual, scaled_touch_residual(run.S[i], f.c1),
                                    scaled_touch_residual(run.S[i], f.c2)});
      if (i + 1 < 7)
        run.link_residual = std::max(run.link_residual,
                                     scaled_touch_residual(run.S[i], run.S[i + 1]));
    }
    return run;
  }

}  // namespace poncelet
