#pragma once

#include <poncelet/conic.hpp>
#include <poncelet/projective.hpp>

#include <array>
#include <optional>
#include <vector>

namespace poncelet {

  //! Quadrics of P_3 as symmetric 4x4 matrices up to scale.
  using Quadric = Matrix4;

  //! A line of P_3 spanned by two points.
  struct Line3
  {
    Point3 p;
    Point3 q;
  };

  using Plucker = Eigen::Matrix<Complex, 6, 1>;

  auto plucker(const Line3& l) -> Plucker;

  //! |det[a b c d]| normalized; zero iff the two lines meet.
  auto lines_meet_residual(const Line3& a, const Line3& b) -> double;

  enum class IntersectionKind
  {
    SmoothElliptic,
    TwoConics,
    Degenerate,
  };

  auto to_string(IntersectionKind k) -> const char*;

  //! Coefficients c[k] of l1^k l2^(4-k) in det(l1 Q1 + l2 Q2).
  struct QuarticForm
  {
    std::array<Complex, 5> c;
    auto operator()(Complex l1, Complex l2) const -> Complex;
  };

  auto pencil_discriminant(const Quadric& q1, const Quadric& q2) -> QuarticForm;

  auto intersection_kind(const Quadric& q1, const Quadric& q2,
                         const ToleranceContext& ctx = {}) -> IntersectionKind;

  auto quadric_rank(const Quadric& q, const ToleranceContext& ctx = {}) -> int;

  //! The lines of q through p: two for a smooth quadric (ordered by their
  //! normalized Plucker coordinates), one for a cone.
  auto lines_through_point(const Quadric& q, const Point3& p,
                           const ToleranceContext& ctx = {}) -> std::vector<Line3>;

  //! One family of lines on a quadric of rank >= 3. Membership of a line is
  //! decided against two fixed skew reference lines of the family: lines of
  //! the same family are skew to them, lines of the other family meet both.
  class Ruling
  {
  public:
    //! Reference lines are taken at deterministic points of q; `sign`
    //! selects the family (ignored for a cone).
    Ruling(const Quadric& q, int sign, const ToleranceContext& ctx = {});

    //! The family containing the given line through p.
    static auto containing(const Quadric& q, const Line3& line,
                           const ToleranceContext& ctx = {}) -> Ruling;

    auto quadric() const -> const Quadric& { return q_; }
    auto sign() const -> int { return sign_; }
    auto is_cone() const -> bool { return cone_; }

    //! The line of this family through p.
    auto line_through(const Point3& p) const -> Line3;

    //! The other family on the same quadric (the same ruling for a cone).
    auto complementary() const -> Ruling;

  private:
    Ruling() = default;
    void finish_references();

    Quadric q_;
    int sign_ = 1;
    bool cone_ = false;
    ToleranceContext ctx_;
    // reference lines: [0] own family, [1] other family at each point
    std::array<Line3, 2> at_first_;
    std::array<Line3, 2> at_second_;
  };

  //! Second point of q2 on the line of `r` through p (p itself when the line
  //! touches q2 there).
  auto ruling_involution(const Ruling& r, const Quadric& other, const Point3& p,
                         const ToleranceContext& ctx = {}) -> Point3;

  //! A random point of q (intersection with a random line).
  auto random_point_on_quadric(const Quadric& q, Rng& rng) -> Point3;

  //! A random point of q1 cap q2, reached along a line of `r1`.
  auto random_point_on_base_curve(const Ruling& r1, const Quadric& q2, Rng& rng) -> Point3;

  //! Smallest n <= max_order with (i2 i1)^n = id on at least five random
  //! points of the base curve. Throws ToleranceFailure if the samples
  //! disagree.
  auto weyr_translation_order(const Ruling& r1, const Ruling& r2,
                              const ToleranceContext& ctx = {},
                              std::uint64_t seed = 0) -> std::optional<int>;

  //! Lines L1, L2, ... alternating between the rulings (as Plucker vectors);
  //! closed when L_{2n+1} = L_1.
  auto weyr_chain(const Ruling& r1, const Ruling& r2, const Point3& e, int n_max,
                  const ToleranceContext& ctx = {}) -> ChainReport;

  struct QuadricLift
  {
    Quadric q1;        // x^2 + y^2 + z^2 + t^2
    Quadric q2;        // alpha x^2 + beta y^2 + gamma t^2
    Point3 p0;         // (0:0:1:0), the vertex of q2
    //! Columns map lifted plane coordinates (x, y, t) back to the original
    //! plane: p = basis * (x, y, t).
    Matrix3 basis;
    std::array<Complex, 3> abg;
  };

  //! Simultaneous diagonalization of a generic conic pencil, lifted to a
  //! smooth quadric over c and a cone over d.
  auto lift_conics_to_quadrics(const Conic& c, const Conic& d,
                               const ToleranceContext& ctx = {}) -> QuadricLift;

  //! Branch conic of the projection of qm from p0, in coordinates of the
  //! plane obtained by dropping the pivot coordinate of p0.
  auto branch_conic_of_projection(const Quadric& qm, const Point3& p0,
                                  const ToleranceContext& ctx = {}) -> Conic;

  //! Projection from p0 in the same plane coordinates.
  auto project_from(const Point3& p0, const Point3& x) -> Point2;

}  // namespace poncelet
