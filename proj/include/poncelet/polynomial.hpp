#pragma once

#include <poncelet/projective.hpp>

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace poncelet {

  struct Root
  {
    Complex value;
    int multiplicity = 1;
  };

  //! Roots of sum_k coeffs[k] x^k (ascending powers) from the eigenvalues of
  //! the companion matrix. Nearby eigenvalues are merged into one root when
  //! the polynomial's derivatives also vanish there, so a double root comes
  //! back once with multiplicity 2.
  auto poly_roots(std::vector<Complex> coeffs, double rel_tol = 1e-9)
      -> std::vector<Root>;

  //! Evaluates sum_k coeffs[k] x^k.
  auto poly_eval(const std::vector<Complex>& coeffs, Complex x) -> Complex;

  //! Product of two coefficient lists (ascending).
  auto poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b)
      -> std::vector<Complex>;

  //! The two roots (as points of P_1) of the binary form a s^2 + b s t + c t^2.
  //! Uses the cancellation-free pair (q : a), (c : q). A double root is
  //! returned twice.
  auto binary_quadratic_roots(Complex a, Complex b, Complex c)
      -> std::array<Eigen::Vector2cd, 2>;

  //! Roots of a binary form sum_k coeffs[k] s^k t^(d-k) as points (s : t) of
  //! P_1, with multiplicity; roots at (1 : 0) appear when top coefficients
  //! vanish.
  struct BinaryRoot
  {
    Eigen::Vector2cd point;
    int multiplicity = 1;
  };
  auto binary_form_roots(const std::vector<Complex>& coeffs, double rel_tol = 1e-9)
      -> std::vector<BinaryRoot>;

  //! Binary form evaluated at (s : t).
  auto binary_form_eval(const std::vector<Complex>& coeffs,
                        const Eigen::Vector2cd& p) -> Complex;

  //! Divides the binary form by the linear factor vanishing at p, i.e. by
  //! (p_t s - p_s t). Remainder is discarded.
  auto binary_form_deflate(const std::vector<Complex>& coeffs,
                           const Eigen::Vector2cd& p) -> std::vector<Complex>;

  //! Coefficients of the binary form f(s, t) of given degree, recovered from
  //! its values at the degree+1 points (w^k : 1), w a root of unity.
  auto binary_form_interpolate(const std::function<Complex(Complex, Complex)>& f,
                               int degree) -> std::vector<Complex>;

  struct NewtonOptions
  {
    int max_iter = 60;
    double step_cap = 1.0;
    double ftol = 1e-11;
    double xtol = 1e-14;
  };

  //! Complex Newton iteration with a forward-difference derivative. Returns
  //! nullopt when the iteration stalls or the function throws.
  auto newton_solve(const std::function<Complex(Complex)>& f, Complex x0,
                    const NewtonOptions& opts = {}) -> std::optional<Complex>;

}  // namespace poncelet
