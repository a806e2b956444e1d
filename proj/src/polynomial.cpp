#include <poncelet/polynomial.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace poncelet {

  namespace {

    auto derivative(const std::vector<Complex>& c) -> std::vector<Complex>
    {
      std::vector<Complex> d;
      for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(c[k] * static_cast<double>(k));
      return d;
    }

    //! Sum |c_k| |x|^k, the natural scale for |p(x)|.
    auto eval_scale(const std::vector<Complex>& c, Complex x) -> double
    {
      double acc = 0.0;
      double pw = 1.0;
      for (const auto& ck : c)
      {
        acc += std::abs(ck) * pw;
        pw *= std::abs(x);
      }
      return acc;
    }

    auto polish(const std::vector<Complex>& c, Complex x) -> Complex
    {
      const auto dc = derivative(c);
      for (int it = 0; it < 4; ++it)
      {
        const Complex fx = poly_eval(c, x);
        const Complex dx = poly_eval(dc, x);
        if (dx == Complex{0.0, 0.0})
          break;
        const Complex nx = x - fx / dx;
        if (!(std::abs(poly_eval(c, nx)) < std::abs(fx)))
          break;
        x = nx;
      }
      return x;
    }

  }  // namespace

  auto poly_eval(const std::vector<Complex>& coeffs, Complex x) -> Complex
  {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  auto poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b)
      -> std::vector<Complex>
  {
    if (a.empty() || b.empty())
      return {};
    std::vector<Complex> out(a.size() + b.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        out[i + j] += a[i] * b[j];
    return out;
  }

  auto poly_roots(std::vector<Complex> coeffs, double rel_tol) -> std::vector<Root>
  {
    double cmax = 0.0;
    for (const auto& c : coeffs)
    {
      if (!std::isfinite(std::abs(c)))
        fail(ErrorCode::ZeroPolynomial, "non-finite coefficient");
      cmax = std::max(cmax, std::abs(c));
    }
    if (cmax == 0.0)
      fail(ErrorCode::ZeroPolynomial, "all coefficients vanish");
    while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * cmax)
      coeffs.pop_back();
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree < 1)
      fail(ErrorCode::ZeroPolynomial, "polynomial has degree 0");

    std::vector<Root> roots;
    int zeros = 0;
    while (zeros < degree && coeffs[zeros] == Complex{0.0, 0.0})
      ++zeros;
    if (zeros > 0)
      roots.push_back({Complex{0.0, 0.0}, zeros});

    std::vector<Complex> reduced(coeffs.begin() + zeros, coeffs.end());
    const int m = static_cast<int>(reduced.size()) - 1;
    if (m == 0)
      return roots;

    std::vector<Complex> eig;
    if (m == 1)
    {
      eig.push_back(-reduced[0] / reduced[1]);
    }
    else
    {
      Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
      for (int i = 1; i < m; ++i)
        companion(i, i - 1) = 1.0;
      for (int i = 0; i < m; ++i)
        companion(i, m - 1) = -reduced[i] / reduced[m];
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
      for (int i = 0; i < m; ++i)
        eig.push_back(solver.eigenvalues()[i]);
    }

    // Multiple roots split into clusters of radius ~ eps^(1/mult), well above
    // rel_tol * degree, so grouping uses sqrt(rel_tol) and is then confirmed
    // by the vanishing of the lower derivatives at the cluster mean.
    const double group_tol = std::max(rel_tol * degree, std::sqrt(rel_tol));
    std::vector<int> label(m, -1);
    int nlabels = 0;
    for (int i = 0; i < m; ++i)
    {
      if (label[i] < 0)
        label[i] = nlabels++;
      for (int j = i + 1; j < m; ++j)
      {
        if (std::abs(eig[i] - eig[j]) < group_tol * (1.0 + std::abs(eig[i])))
        {
          if (label[j] < 0)
            label[j] = label[i];
          else if (label[j] != label[i])
          {
            const int from = label[j];
            for (auto& l : label)
              if (l == from)
                l = label[i];
          }
        }
      }
    }

    for (int lab = 0; lab < nlabels; ++lab)
    {
      std::vector<Complex> members;
      for (int i = 0; i < m; ++i)
        if (label[i] == lab)
          members.push_back(eig[i]);
      if (members.empty())
        continue;
      if (members.size() == 1)
      {
        roots.push_back({polish(reduced, members[0]), 1});
        continue;
      }
      Complex mean{0.0, 0.0};
      for (const auto& z : members)
        mean += z;
      mean /= static_cast<double>(members.size());

      bool multiple = true;
      auto d = reduced;
      double fact = 1.0;
      for (std::size_t j = 0; j + 1 < members.size(); ++j)
      {
        if (j > 0)
        {
          d = derivative(d);
          fact *= static_cast<double>(j);
        }
        const double scale = eval_scale(d, mean) / fact;
        if (std::abs(poly_eval(d, mean)) / fact > std::sqrt(rel_tol) * scale)
        {
          multiple = false;
          break;
        }
      }
      if (multiple)
        roots.push_back({mean, static_cast<int>(members.size())});
      else
        for (const auto& z : members)
          roots.push_back({polish(reduced, z), 1});
    }
    return roots;
  }

  auto binary_quadratic_roots(Complex a, Complex b, Complex c)
      -> std::array<Eigen::Vector2cd, 2>
  {
    if (a == Complex{0.0, 0.0} && b == Complex{0.0, 0.0} && c == Complex{0.0, 0.0})
      fail(ErrorCode::ZeroPolynomial, "binary quadratic vanishes identically");
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex s = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    const Complex q = -0.5 * s;
    if (q == Complex{0.0, 0.0})
    {
      // b = 0 and ac = 0: a double root at (1:0) or (0:1).
      const Eigen::Vector2cd r = std::abs(a) < std::abs(c) ? Eigen::Vector2cd(1.0, 0.0)
                                                           : Eigen::Vector2cd(0.0, 1.0);
      return {r, r};
    }
    return {Eigen::Vector2cd(q, a), Eigen::Vector2cd(c, q)};
  }

  auto binary_form_eval(const std::vector<Complex>& coeffs,
                        const Eigen::Vector2cd& p) -> Complex
  {
    const int d = static_cast<int>(coeffs.size()) - 1;
    Complex acc{0.0, 0.0};
    for (int k = 0; k <= d; ++k)
      acc += coeffs[k] * std::pow(p[0], k) * std::pow(p[1], d - k);
    return acc;
  }

  auto binary_form_roots(const std::vector<Complex>& coeffs, double rel_tol)
      -> std::vector<BinaryRoot>
  {
    const int d = static_cast<int>(coeffs.size()) - 1;
    double cmax = 0.0;
    for (const auto& c : coeffs)
      cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0 || d < 1)
      fail(ErrorCode::ZeroPolynomial, "binary form vanishes identically");
    int at_infinity = 0;
    while (at_infinity < d && std::abs(coeffs[d - at_infinity]) <= rel_tol * cmax)
      ++at_infinity;
    std::vector<BinaryRoot> out;
    if (at_infinity < d)
    {
      std::vector<Complex> aff(coeffs.begin(), coeffs.end() - at_infinity);
      for (const auto& r : poly_roots(aff, rel_tol))
        out.push_back({normalize(Eigen::Vector2cd(r.value, 1.0)), r.multiplicity});
    }
    if (at_infinity > 0)
      out.push_back({Eigen::Vector2cd(1.0, 0.0), at_infinity});
    return out;
  }

  auto binary_form_deflate(const std::vector<Complex>& coeffs,
                           const Eigen::Vector2cd& p) -> std::vector<Complex>
  {
    // Solve c_j = p_t g_{j-1} - p_s g_j, starting from the better-conditioned end.
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1)
      fail(ErrorCode::ZeroPolynomial, "cannot deflate a constant form");
    const Complex ps = p[0];
    const Complex pt = p[1];
    std::vector<Complex> g(d, Complex{0.0, 0.0});
    if (std::abs(pt) >= std::abs(ps))
    {
      g[d - 1] = coeffs[d] / pt;
      for (int j = d - 1; j >= 1; --j)
        g[j - 1] = (coeffs[j] + ps * g[j]) / pt;
    }
    else
    {
      g[0] = -coeffs[0] / ps;
      for (int j = 1; j < d; ++j)
        g[j] = (pt * g[j - 1] - coeffs[j]) / ps;
    }
    return g;
  }

  auto binary_form_interpolate(const std::function<Complex(Complex, Complex)>& f,
                               int degree) -> std::vector<Complex>
  {
    const int n = degree + 1;
    std::vector<Complex> values(n);
    std::vector<Complex> w(n);
    for (int k = 0; k < n; ++k)
    {
      w[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
      values[k] = f(w[k], Complex{1.0, 0.0});
    }
    std::vector<Complex> c(n, Complex{0.0, 0.0});
    for (int j = 0; j < n; ++j)
    {
      for (int k = 0; k < n; ++k)
        c[j] += values[k] * std::conj(w[(j * k) % n]);
      c[j] /= static_cast<double>(n);
    }
    return c;
  }

  auto newton_solve(const std::function<Complex(Complex)>& f, Complex x0,
                    const NewtonOptions& opts) -> std::optional<Complex>
  {
    try
    {
      Complex x = x0;
      Complex fx = f(x);
      for (int it = 0; it < opts.max_iter; ++it)
      {
        if (std::abs(fx) < opts.ftol)
          return x;
        const double h = 1e-7 * (1.0 + std::abs(x));
        const Complex df = (f(x + h) - fx) / h;
        if (df == Complex{0.0, 0.0} || !std::isfinite(std::abs(df)))
          return std::nullopt;
        Complex dx = -fx / df;
        if (std::abs(dx) > opts.step_cap * (1.0 + std::abs(x)))
          dx *= opts.step_cap * (1.0 + std::abs(x)) / std::abs(dx);
        x += dx;
        fx = f(x);
        if (std::abs(dx) < opts.xtol * (1.0 + std::abs(x)))
          return std::abs(fx) < 1e3 * opts.ftol ? std::optional<Complex>(x) : std::nullopt;
      }
      return std::abs(fx) < opts.ftol ? std::optional<Complex>(x) : std::nullopt;
    }
    catch (const GeometryError&)
    {
      return std::nullopt;
    }
  }

}  // namespace poncelet
