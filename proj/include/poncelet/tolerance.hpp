#pragma once

#include <poncelet/errors.hpp>

namespace poncelet {

//! Numeric policy shared by every decision in the kernel.
struct ToleranceContext
{
  double rel_tol = 1e-9;
  double closure_tol = 1e-8;
  int max_order = 24;
  int scan_samples = 2048;

  //! Throws ToleranceFailure unless all fields are positive and
  //! closure_tol >= rel_tol.
  void validate() const
  {
    if (!(rel_tol > 0) || !(closure_tol > 0) || max_order <= 0 ||
        scan_samples <= 0)
      fail(ErrorCode::ToleranceFailure, "tolerance fields must be positive");
    if (closure_tol < rel_tol)
      fail(ErrorCode::ToleranceFailure, "closure_tol must be >= rel_tol");
  }
};

}  // namespace poncelet
