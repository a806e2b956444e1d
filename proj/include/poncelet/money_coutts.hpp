#pragma once

#include <poncelet/circle_space.hpp>

#include <array>
#include <vector>

namespace poncelet {

  //! Per round, one bit per family: false = identity, true = involution.
  struct ChoiceSequence
  {
    std::vector<std::array<bool, 3>> rounds;
  };

  //! Three circles, families F_j touching (C_j, C_{j+1}) (indices mod 3) and
  //! the data identifying the three contact curves with one elliptic curve.
  struct MoneyCouttsSetup
  {
    std::array<CircleVector, 3> circles;
    std::array<TouchingFamily, 3> families;
    //! Chart map of F_j to the contact circle in F_{j+1}.
    std::array<Matrix2, 3> contact;
    //! Ratio of the branch quartics over F_{j+1}, and the sheet factor used.
    std::array<Complex, 3> kappa;
    std::array<Complex, 3> sheet;
    //! Worst relative variation of kappa over the samples.
    double kappa_spread = 0.0;
    //! |kappa_1 kappa_2 kappa_3 - 1|.
    double kappa_product_defect = 0.0;
  };

  //! F_1 and F_2 have the given signs; F_3 is chosen so that the three planes
  //! share a line.
  auto make_money_coutts(const CircleVector& c1, const CircleVector& c2,
                         const CircleVector& c3, int sign1, int sign2,
                         const ToleranceContext& ctx = {}) -> MoneyCouttsSetup;

  //! Same with an explicit sign for F_3; FamilyMismatch unless the planes
  //! share a line.
  auto make_money_coutts(const CircleVector& c1, const CircleVector& c2,
                         const CircleVector& c3, int sign1, int sign2, int sign3,
                         const ToleranceContext& ctx = {}) -> MoneyCouttsSetup;

  //! Biquadratic contact form of F_j x F_{j+1}: coefficients of the quadratic
  //! in the second argument at first argument theta (affine charts).
  auto contact_quadratic_second(const MoneyCouttsSetup& m, int j, Complex theta)
      -> std::array<Complex, 3>;
  //! Quadratic in the first argument at second argument mu.
  auto contact_quadratic_first(const MoneyCouttsSetup& m, int j, Complex mu)
      -> std::array<Complex, 3>;

  //! Sequence S_1, ..., S_{3n+1} with S_1 = F_1 at chart value theta0; closed
  //! iff S_{3n+1} = S_1.
  auto money_coutts_sequence(const MoneyCouttsSetup& m, Complex theta0,
                             const ChoiceSequence& choices,
                             const ToleranceContext& ctx = {}) -> ChainReport;

  struct MoneyCouttsRun
  {
    std::array<CircleVector, 7> S;
    std::array<bool, 3> alpha{};
    std::array<bool, 3> beta{};
    bool closed = false;
    double residual = 0.0;
    //! Worst scaled touch residual over consecutive circles and over each
    //! circle against its family's defining circles.
    double link_residual = 0.0;
  };

  //! S_2..S_4 from alpha, then S_5..S_7 with beta_2 = alpha_2,
  //! beta_3 = alpha_3 and beta_1 making the number of involutions odd (even
  //! with wrong_parity).
  auto money_coutts_run(const MoneyCouttsSetup& m, Complex theta0,
                        std::array<bool, 3> alpha, const ToleranceContext& ctx = {},
                        bool wrong_parity = false) -> MoneyCouttsRun;

}  // namespace poncelet
