#pragma once

#include <poncelet/conic.hpp>

#include <cstdint>
#include <vector>

namespace poncelet {

  enum class PencilMode
  {
    Inscribed,      // member n-inscribed into D
    Circumscribed,  // member n-circumscribed about D
  };

  struct PencilCount
  {
    int count = 0;
    //! Affine pencil parameters s of the accepted members C + s D (after both
    //! conics are scaled to unit norm).
    std::vector<Complex> parameters;
    int newton_starts = 0;
  };

  //! Finds the members C + s D of the pencil that are in Poncelet n-position
  //! with D. A closure defect is sampled on a grid of the parameter sphere;
  //! Newton is started from every sample and each converged parameter is kept
  //! when the chain closes with exact order n from two random starts.
  auto pencil_poncelet_members(const Conic& c, const Conic& d, int n, PencilMode mode,
                               const ToleranceContext& ctx = {},
                               std::uint64_t seed = 0) -> PencilCount;

  auto count_inscribed_in_pencil(const Conic& c, const Conic& d, int n,
                                 const ToleranceContext& ctx = {},
                                 std::uint64_t seed = 0) -> int;

  auto count_circumscribed_in_pencil(const Conic& c, const Conic& d, int n,
                                     const ToleranceContext& ctx = {},
                                     std::uint64_t seed = 0) -> int;

  //! Throws NonGenericPencil unless det(l C + m D) has three simple roots.
  void require_generic_pencil(const Conic& c, const Conic& d, const ToleranceContext& ctx);

}  // namespace poncelet
