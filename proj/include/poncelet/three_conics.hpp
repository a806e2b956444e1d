#pragma once

#include <poncelet/conic.hpp>
#include <poncelet/quadric.hpp>

#include <optional>

namespace poncelet {

  //! True when the three conics span a pencil (at most two independent forms).
  auto in_one_pencil(const Conic& c, const Conic& c1, const Conic& c2,
                     const ToleranceContext& ctx = {}) -> bool;

  //! Tangent sequence T1, T2, ... with odd lines tangent to c1, even lines
  //! tangent to c2 and consecutive intersections on c. The first tangent is
  //! start.T through start.u (a point of c); the second is the tangent to c2
  //! at the second vertex selected by `branch2` (0 or 1), or `t2` if given.
  //! Later tangents follow the lines of the two rulings fixed by T1 and T2 on
  //! the lifted quadrics. The chain is closed after n steps when
  //! T_{2n+1} = T_1; elements alternate vertex, tangent.
  auto three_conics_chain(const Conic& c, const Conic& c1, const Conic& c2,
                          const TangentChainState& start, int branch2, int n_max,
                          const ToleranceContext& ctx = {},
                          const std::optional<Line2>& t2 = std::nullopt) -> ChainReport;

}  // namespace poncelet
