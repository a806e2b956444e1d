#pragma once

#include <poncelet/polynomial.hpp>
#include <poncelet/projective.hpp>

#include <array>

namespace poncelet {

  //! Conics are symmetric 3x3 matrices up to scale; x is on C iff x^T C x = 0.
  using Conic = Matrix3;

  struct TangentChainState
  {
    Point2 u;   // vertex, on the outer conic
    Line2 T;    // side, tangent to the inner conic
  };

  struct TangentPair
  {
    std::array<Line2, 2> lines;
    bool coincident = false;
  };

  auto adjugate(const Matrix3& m) -> Matrix3;

  //! Scales a symmetric matrix to unit Frobenius norm.
  template <typename M>
  auto unit_scale(const M& m) -> M
  {
    const double n = m.norm();
    if (n == 0.0)
      fail(ErrorCode::DegenerateConic, "zero matrix");
    return m / n;
  }

  //! |det| of the unit-scaled matrix.
  auto scaled_det(const Matrix3& m) -> double;

  auto is_smooth(const Conic& c, const ToleranceContext& ctx) -> bool;

  //! Scale-free |x^T M x| / (|x|^2 |M|).
  template <typename M, typename V>
  auto form_residual(const M& m, const V& x) -> double
  {
    const double s = x.squaredNorm() * m.norm();
    return s == 0.0 ? 0.0 : std::abs(bdot(x, m * x)) / s;
  }

  //! Scale-free |l . x| / (|l| |x|).
  auto incidence_residual(const Eigen::VectorXcd& l, const Eigen::VectorXcd& x) -> double;

  //! Tangency of a line to a smooth conic, measured on the dual conic.
  auto tangency_residual(const Conic& c, const Line2& line) -> double;

  //! The two points where a line meets a conic.
  auto line_conic_intersection(const Conic& c, const Line2& line)
      -> std::array<Point2, 2>;

  //! A random point on the conic (intersection with a random line).
  auto random_point_on_conic(const Conic& c, Rng& rng) -> Point2;

  auto tangent_lines_from_point(const Conic& c, const Point2& u,
                                const ToleranceContext& ctx = {}) -> TangentPair;

  auto second_intersection(const Conic& d, const Line2& line, const Point2& u,
                           const ToleranceContext& ctx = {}) -> Point2;

  //! One step of the Poncelet traverse: vertices on d, sides tangent to c.
  //! When `flagged` is given it is set if the branch choice was ambiguous.
  auto poncelet_step(const Conic& c, const Conic& d, const TangentChainState& s,
                     const ToleranceContext& ctx = {}, bool* flagged = nullptr)
      -> TangentChainState;

  //! Inverse of poncelet_step.
  auto poncelet_step_back(const Conic& c, const Conic& d, const TangentChainState& s,
                          const ToleranceContext& ctx = {}) -> TangentChainState;

  //! State at a point u of d with the tangent selected by branch (0 or 1).
  auto make_chain_state(const Conic& c, const Point2& u, int branch,
                        const ToleranceContext& ctx = {}) -> TangentChainState;

  auto poncelet_chain(const Conic& c, const Conic& d, const TangentChainState& start,
                      int n_max, const ToleranceContext& ctx = {}) -> ChainReport;

  //! Number of primitive n-torsion points of an elliptic curve.
  auto jordan_totient_T(int n) -> long long;

}  // namespace poncelet
