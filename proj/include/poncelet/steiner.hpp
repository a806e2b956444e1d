#pragma once

#include <poncelet/circle_space.hpp>

#include <optional>

namespace poncelet {

  //! The two circles of F touching S, besides S itself; sorted
  //! lexicographically by normalized coordinates.
  auto steiner_candidates(const TouchingFamily& f, const CircleVector& s,
                          const ToleranceContext& ctx = {})
      -> std::array<CircleVector, 2>;

  //! Next circle of the chain: the candidate farther from prev, or the one
  //! selected by branch when there is no previous circle.
  auto steiner_step(const TouchingFamily& f, const CircleVector& s,
                    const std::optional<CircleVector>& prev,
                    const ToleranceContext& ctx = {}, int branch = 0,
                    bool* flagged = nullptr) -> CircleVector;

  //! Chain S_0, S_1, ... ; closes at k when S_k = S_0 and S_{k+1} = S_1.
  auto steiner_chain(const TouchingFamily& f, const CircleVector& start, int branch,
                     int n_max, const ToleranceContext& ctx = {}) -> ChainReport;

  struct SteinerMultiplier
  {
    //! Canonical representative of {lambda, 1/lambda}.
    Complex value;
    //! Max relative deviation of the step ratios from their first value.
    double deviation = 0.0;
    //! Step ratios in chain direction.
    std::vector<Complex> ratios;
    //! Smallest k <= max_order with value^k = 1, if any.
    std::optional<int> root_of_unity_order;
  };

  //! The chain map in the chart vanishing at one null circle and with a pole
  //! at the other is multiplication by a constant; measured over `steps`
  //! steps from start.
  auto steiner_multiplier(const TouchingFamily& f, const CircleVector& start,
                          int steps = 8, const ToleranceContext& ctx = {})
      -> SteinerMultiplier;

  //! Same over 8 steps, started where the orbit is centred between the
  //! two fixed points.
  auto steiner_multiplier(const TouchingFamily& f, const ToleranceContext& ctx = {})
      -> SteinerMultiplier;

}  // namespace poncelet
