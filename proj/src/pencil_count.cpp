#include <poncelet/pencil_count.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace poncelet {

  namespace {

    //! Closure defect of the n-fold traverse as a function of the pencil
    //! parameter. The start element is fixed on the fixed conic; the member
    //! dependent half of the start state is followed by continuity.
    class ClosureDefect
    {
    public:
      ClosureDefect(const Conic& c, const Conic& d, int n, PencilMode mode,
                    const ToleranceContext& ctx, Rng& rng)
        : cn_(unit_scale(c)), dn_(unit_scale(d)), n_(n), mode_(mode), ctx_(ctx)
      {
        const Conic fixed = mode == PencilMode::Inscribed ? dn_ : unit_scale(adjugate(dn_));
        base_ = random_point_on_conic(fixed, rng);
        start_ = random_point_on_conic(fixed, rng);
        w1_ = rng.vector<3>();
        w2_ = rng.vector<3>();
        theta0_ = theta(start_);
      }

      auto member(Complex s) const -> Conic { return cn_ + s * dn_; }

      //! Defect at s. With `track` set, the free half of the start state is
      //! chosen nearest to *track; the chosen value is written back.
      auto operator()(Complex s, Eigen::Vector3cd* track) const -> Complex
      {
        const Conic m = member(s);
        TangentChainState st;
        if (mode_ == PencilMode::Inscribed)
        {
          const TangentPair tp = tangent_lines_from_point(m, start_, ctx_);
          st = {start_, pick(tp.lines, track)};
          for (int k = 0; k < n_; ++k)
            st = poncelet_step(m, dn_, st, ctx_);
          return theta(st.u) - theta0_;
        }
        const auto pts = line_conic_intersection(m, start_);
        st = {pick(pts, track), start_};
        for (int k = 0; k < n_; ++k)
          st = poncelet_step(dn_, m, st, ctx_);
        return theta(st.T) - theta0_;
      }

      auto fixed_conic_scaled() const -> const Conic& { return dn_; }

    private:
      auto theta(const Eigen::Vector3cd& x) const -> Complex
      {
        const Eigen::Vector3cd l = cross(base_, x);
        return bdot(l, w1_) / bdot(l, w2_);
      }

      static auto pick(const std::array<Eigen::Vector3cd, 2>& cands, Eigen::Vector3cd* track)
          -> Eigen::Vector3cd
      {
        Eigen::Vector3cd out = cands[0];
        if (track != nullptr && track->norm() > 0.0
            && proj_distance(cands[1], *track) < proj_distance(cands[0], *track))
          out = cands[1];
        if (track != nullptr)
          *track = out;
        return out;
      }

      Conic cn_;
      Conic dn_;
      int n_;
      PencilMode mode_;
      ToleranceContext ctx_;
      Eigen::Vector3cd base_;
      Eigen::Vector3cd start_;
      Eigen::Vector3cd w1_;
      Eigen::Vector3cd w2_;
      Complex theta0_;
    };

    auto refine(const ClosureDefect& h, Complex s) -> std::optional<Complex>
    {
      try
      {
        Eigen::Vector3cd track = Eigen::Vector3cd::Zero();
        Complex f = h(s, &track);
        for (int it = 0; it < 60; ++it)
        {
          const double step = 1e-7 * (1.0 + std::abs(s));
          Eigen::Vector3cd probe = track;
          const Complex df = (h(s + step, &probe) - f) / step;
          if (df == Complex{0.0, 0.0} || !std::isfinite(std::abs(df)))
            return std::nullopt;
          Complex ds = -f / df;
          if (std::abs(ds) > 1.0)
            ds /= std::abs(ds);
          s += ds;
          f = h(s, &track);
          if (std::abs(ds) < 1e-13 * (1.0 + std::abs(s)))
            return s;
        }
        return std::abs(f) < 1e-9 ? std::optional<Complex>(s) : std::nullopt;
      }
      catch (const GeometryError&)
      {
        return std::nullopt;
      }
    }

    auto closes_exactly(const Conic& m, const Conic& dn, int n, PencilMode mode,
                        const ToleranceContext& ctx, Rng& rng) -> bool
    {
      try
      {
        for (int trial = 0; trial < 2; ++trial)
        {
          ChainReport rep;
          if (mode == PencilMode::Inscribed)
          {
            const Point2 u = random_point_on_conic(dn, rng);
            rep = poncelet_chain(m, dn, make_chain_state(m, u, 0, ctx), n, ctx);
          }
          else
          {
            const Point2 u = random_point_on_conic(m, rng);
            rep = poncelet_chain(dn, m, make_chain_state(dn, u, 0, ctx), n, ctx);
          }
          if (!rep.order || *rep.order != n)
            return false;
        }
        return true;
      }
      catch (const GeometryError&)
      {
        return false;
      }
    }

  }  // namespace

  void require_generic_pencil(const Conic& c, const Conic& d, const ToleranceContext& ctx)
  {
    const Conic cn = unit_scale(c);
    const Conic dn = unit_scale(d);
    const auto cubic = binary_form_interpolate(
        [&](Complex l, Complex m) { return (l * cn + m * dn).determinant(); }, 3);
    const auto roots = binary_form_roots(cubic, ctx.rel_tol);
    int simple = 0;
    for (const auto& r : roots)
      if (r.multiplicity == 1)
        ++simple;
    if (simple != 3)
      fail(ErrorCode::NonGenericPencil, "pencil discriminant has a multiple root");
  }

  auto pencil_poncelet_members(const Conic& c, const Conic& d, int n, PencilMode mode,
                               const ToleranceContext& ctx, std::uint64_t seed)
      -> PencilCount
  {
    ctx.validate();
    if (n < 3)
      fail(ErrorCode::InvalidOrder, "pencil counting needs n >= 3");
    require_generic_pencil(c, d, ctx);
    Rng rng(seed);
    PencilCount out;
    std::vector<Complex> rejected;
    auto near = [](const std::vector<Complex>& list, Complex s) {
      for (const auto& r : list)
        if (std::abs(s - r) <= 1e-6 * (1.0 + std::abs(s)))
          return true;
      return false;
    };
    const int rows = std::max(2, static_cast<int>(std::lround(std::sqrt(ctx.scan_samples / 2.0))));
    const int cols = 2 * rows;

    // Two independent defect functions (different fixed start elements):
    // a root whose Newton basin is tiny for one of them is usually wide for
    // the other.
    for (int pass = 0; pass < 2; ++pass)
    {
      const ClosureDefect h(c, d, n, mode, ctx, rng);
      const Conic dn = h.fixed_conic_scaled();

      // Grid on the parameter sphere: s = tan(theta/2) e^{i phi}.
      std::vector<Complex> grid(rows * cols);
      std::vector<double> value(rows * cols, std::numeric_limits<double>::infinity());
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
        {
          const double th = std::numbers::pi * (i + 0.5) / rows;
          const Complex s = std::tan(th / 2.0) * std::polar(1.0, 2.0 * std::numbers::pi * j / cols);
          grid[i * cols + j] = s;
          try
          {
            const double v = std::abs(h(s, nullptr));
            if (std::isfinite(v))
              value[i * cols + j] = v;
          }
          catch (const GeometryError&)
          {
          }
        }

      // Newton starts: local minima of |defect| first, then every sample so
      // that shallow basins are not missed.
      std::vector<Complex> starts;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
        {
          const double v = value[i * cols + j];
          bool minimum = std::isfinite(v);
          for (int di = -1; di <= 1 && minimum; ++di)
            for (int dj = -1; dj <= 1; ++dj)
            {
              const int ii = i + di;
              const int jj = (j + dj + cols) % cols;
              if (ii >= 0 && ii < rows && value[ii * cols + jj] < v)
              {
                minimum = false;
                break;
              }
            }
          if (minimum)
            starts.push_back(grid[i * cols + j]);
        }
      starts.insert(starts.end(), grid.begin(), grid.end());
      out.newton_starts += static_cast<int>(starts.size());

      for (const auto& s0 : starts)
      {
        const auto s = refine(h, s0);
        if (!s || near(out.parameters, *s) || near(rejected, *s))
          continue;
        const Conic m = h.member(*s);
        if (scaled_det(m) < 1e-8 || !closes_exactly(m, dn, n, mode, ctx, rng))
        {
          rejected.push_back(*s);
          continue;
        }
        out.parameters.push_back(*s);
      }
    }
    out.count = static_cast<int>(out.parameters.size());
    return out;
  }

  auto count_inscribed_in_pencil(const Conic& c, const Conic& d, int n,
                                 const ToleranceContext& ctx, std::uint64_t seed) -> int
  {
    return pencil_poncelet_members(c, d, n, PencilMode::Inscribed, ctx, seed).count;
  }

  auto count_circumscribed_in_pencil(const Conic& c, const Conic& d, int n,
                                     const ToleranceContext& ctx, std::uint64_t seed) -> int
  {
    return pencil_poncelet_members(c, d, n, PencilMode::Circumscribed, ctx, seed).count;
  }

}  // namespace poncelet
