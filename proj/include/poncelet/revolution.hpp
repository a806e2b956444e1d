#pragma once

#include <poncelet/quadric.hpp>

#include <array>
#include <optional>

namespace poncelet {

  //! The binary form a z^2 + b z t + c t^2.
  struct BinaryQuadric
  {
    Complex a;
    Complex b;
    Complex c;

    auto operator()(Complex z, Complex t) const -> Complex { return a * z * z + b * z * t + c * t * t; }
    auto discriminant() const -> Complex { return b * b - 4.0 * a * c; }
  };

  struct PairInvariants
  {
    Complex D1;
    Complex D2;
    Complex J12;
  };

  //! The quadric x^2 + y^2 = a z^2 + b z t + c t^2.
  struct RevolutionQuadric
  {
    Complex a;
    Complex b;
    Complex c;

    auto form() const -> BinaryQuadric { return {a, b, c}; }
    auto matrix() const -> Quadric;
    auto is_cone(const ToleranceContext& ctx = {}) const -> bool;
  };

  auto pair_invariants(const BinaryQuadric& q, const BinaryQuadric& q2) -> PairInvariants;

  //! Coefficients of l^2, l m, m^2 in det(l q + m q') = -l^2 D/4 + l m J/2 - m^2 D'/4.
  auto pencil_discriminant_binary(const PairInvariants& inv) -> std::array<Complex, 3>;

  struct ClosedFormResult
  {
    bool holds = false;
    std::optional<int> witness;
    //! Smallest scaled residual over admissible k.
    double residual = 0.0;
  };

  //! Tests (J (1 + cos 2 pi k/n) + D1 + D2)^2 = D1 D2 (1 - cos 2 pi k/n)^2 for
  //! some k coprime to n. Residuals are scaled by max(|D1|, |D2|, |J|)^2.
  auto closed_form_poncelet_test(const PairInvariants& inv, int n,
                                 const ToleranceContext& ctx = {}) -> ClosedFormResult;

  //! The planes (z : t) containing the two intersection circles: roots of
  //! (a1 - a2) z^2 + (b1 - b2) z t + (c1 - c2) t^2.
  auto intersection_planes(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                           const ToleranceContext& ctx = {}) -> std::array<Eigen::Vector2cd, 2>;

  //! Order of the translation for the ruling on q2 selected by sign2 (the
  //! ruling on q1 is fixed to the + family).
  auto revolution_order(const RevolutionQuadric& q1, const RevolutionQuadric& q2, int sign2,
                        int n_max, const ToleranceContext& ctx = {}, std::uint64_t seed = 0)
      -> std::optional<int>;

  //! Smallest order over both ruling combinations, by direct iteration.
  auto revolution_order_oracle(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                               int n_max, const ToleranceContext& ctx = {},
                               std::uint64_t seed = 0) -> std::optional<int>;

  struct CircleMultiplier
  {
    //! Constant ratio w(t e) / w(e) on one intersection circle, where
    //! w = (x + i y) / sqrt(q1(z, t)).
    Complex ratio;
    //! Largest relative deviation of the step ratio from `ratio`.
    double deviation = 0.0;
  };

  auto revolution_multiplier(const RevolutionQuadric& q1, const RevolutionQuadric& q2,
                             int sign2, int steps, const ToleranceContext& ctx = {},
                             std::uint64_t seed = 0) -> CircleMultiplier;

}  // namespace poncelet
