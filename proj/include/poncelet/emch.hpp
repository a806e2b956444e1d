#pragma once

#include <poncelet/circle_space.hpp>

namespace poncelet {

  //! A circle S of the family together with a point P on S and on C.
  struct EmchState
  {
    CircleVector S;
    Point2 P;
  };

  //! State at S with P the intersection point of S and C selected by branch.
  auto make_emch_state(const CircleVector& c, const CircleVector& s, int branch)
      -> EmchState;

  //! (S1, P1) -> (S2, P2): S2 is the other circle of F through P1, P2 the
  //! other finite point of S2 on C.
  auto emch_step(const TouchingFamily& f, const CircleVector& c, const EmchState& s,
                 const ToleranceContext& ctx = {}, bool* flagged = nullptr)
      -> EmchState;

  //! Inverse of emch_step.
  auto emch_step_back(const TouchingFamily& f, const CircleVector& c,
                      const EmchState& s, const ToleranceContext& ctx = {})
      -> EmchState;

  //! Elements are the 7-vectors (S, P).
  auto emch_chain(const TouchingFamily& f, const CircleVector& c,
                  const EmchState& start, int n_max, const ToleranceContext& ctx = {})
      -> ChainReport;

  //! Circles of F tangent to C.
  auto emch_branch_circles(const TouchingFamily& f, const CircleVector& c,
                           const ToleranceContext& ctx = {})
      -> std::vector<CircleVector>;

}  // namespace poncelet
