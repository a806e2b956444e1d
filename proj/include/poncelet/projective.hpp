#pragma once

#include <poncelet/errors.hpp>
#include <poncelet/tolerance.hpp>

#include <Eigen/Core>
#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>


namespace poncelet {

  using Complex = std::complex<double>;

  //! Homogeneous coordinates of a point of P_N.
  template <int N>
  using Point = Eigen::Matrix<Complex, N + 1, 1>;

  using Point1 = Point<1>;
  using Point2 = Point<2>;
  using Point3 = Point<3>;
  using Point5 = Point<5>;

  //! Lines of P_2 and planes of P_3 as covectors (incidence is l.dot(x)=0
  //! with the bilinear, non-conjugated product).
  using Line2 = Eigen::Vector3cd;
  using Plane3 = Eigen::Vector4cd;

  using Matrix2 = Eigen::Matrix2cd;
  using Matrix3 = Eigen::Matrix3cd;
  using Matrix4 = Eigen::Matrix4cd;

  //! Bilinear dot product (no conjugation).
  template <typename A, typename B>
  inline auto bdot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
      -> Complex
  {
    return (a.transpose() * b).value();
  }

  //! Plain cross product. Eigen's cross() conjugates complex results, which
  //! breaks the bilinear incidence l.x = 0.
  template <typename A, typename B>
  inline auto cross(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
      -> Eigen::Vector3cd
  {
    return Eigen::Vector3cd(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                            a[0] * b[1] - a[1] * b[0]);
  }

  //! Index of the largest-magnitude coordinate; ties go to the lowest index.
  template <typename Derived>
  inline auto pivot_index(const Eigen::MatrixBase<Derived>& p) -> Eigen::Index
  {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
    {
      const double a = std::abs(p[i]);
      if (a > best_abs)
      {
        best_abs = a;
        best = i;
      }
    }
    return best;
  }

  //! Scales p so that its largest-magnitude coordinate is exactly 1.
  template <typename Derived>
  inline auto normalize(const Eigen::MatrixBase<Derived>& p)
      -> typename Derived::PlainObject
  {
    const auto k = pivot_index(p);
    const Complex pivot = p[k];
    if (pivot == Complex{0.0, 0.0} || !std::isfinite(std::abs(pivot)))
      fail(ErrorCode::ZeroVector, "cannot normalize a zero or non-finite vector");
    typename Derived::PlainObject out = p / pivot;
    out[k] = Complex{1.0, 0.0};
    return out;
  }

  //! Max-norm distance between the normalized forms of p and q.
  template <typename A, typename B>
  inline auto proj_distance(const Eigen::MatrixBase<A>& p,
                            const Eigen::MatrixBase<B>& q) -> double
  {
    if (p.size() != q.size())
      fail(ErrorCode::DimensionMismatch, "points of different dimension");
    const Eigen::VectorXcd a = normalize(p);
    const Eigen::VectorXcd b = normalize(q);
    return (a - b).template lpNorm<Eigen::Infinity>();
  }

  template <typename A, typename B>
  inline auto proj_eq(const Eigen::MatrixBase<A>& p,
                      const Eigen::MatrixBase<B>& q,
                      const ToleranceContext& ctx) -> bool
  {
    return proj_distance(p, q) < ctx.rel_tol;
  }

  //! Scale-free measure of how close a and b are to being proportional:
  //! norm of a wedge b divided by |a||b|. Zero iff proportional.
  auto wedge_ratio(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) -> double;

  //! |det[a b c d]| / (|a||b||c||d|) for four vectors of C^4.
  auto normalized_det4(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b,
                       const Eigen::Vector4cd& c, const Eigen::Vector4cd& d)
      -> double;

  //! Two vectors spanning the bilinear annihilator {x : l.dot(x) = 0} in C^3.
  auto annihilator_basis(const Eigen::Vector3cd& l)
      -> std::pair<Eigen::Vector3cd, Eigen::Vector3cd>;

  //! Basis (as columns) of {x : h.dot(x) = 0} in C^n.
  auto annihilator(const Eigen::VectorXcd& h) -> Eigen::MatrixXcd;

  //! Bilinear null space of a k x n matrix with numerical rank r (n - r
  //! columns), computed from its SVD.
  auto null_space(const Eigen::MatrixXcd& m, double rel_tol) -> Eigen::MatrixXcd;

  //! Numerical rank by singular-value thresholding relative to the largest.
  auto numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) -> int;

  //! A point on the line (a point of P_2 other than p, chosen to be far from
  //! p in the wedge sense).
  auto second_point_on_line(const Line2& line, const Point2& p) -> Point2;

  //! Deterministic pseudo-random source. All randomness in the kernel flows
  //! through this type so experiments replay exactly from a seed.
  class Rng
  {
  public:
    explicit Rng(std::uint64_t seed = 0)
      : engine_(seed)
    {
    }

    //! Uniform double in [0, 1) built from the top 53 bits; identical on
    //! every standard library.
    auto uniform() -> double
    {
      return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    auto uniform(double lo, double hi) -> double
    {
      return lo + (hi - lo) * uniform();
    }

    //! Uniform sample from the closed complex unit disk.
    auto disk() -> Complex;

    template <int Rows>
    auto vector() -> Eigen::Matrix<Complex, Rows, 1>
    {
      Eigen::Matrix<Complex, Rows, 1> v;
      for (Eigen::Index i = 0; i < Rows; ++i)
        v[i] = disk();
      return v;
    }

    //! Random point of P_N, normalized.
    template <int N>
    auto point() -> Point<N>
    {
      return normalize(vector<N + 1>());
    }

    //! Random complex symmetric matrix with entries from the unit disk.
    template <int Size>
    auto symmetric() -> Eigen::Matrix<Complex, Size, Size>
    {
      Eigen::Matrix<Complex, Size, Size> m;
      for (int i = 0; i < Size; ++i)
        for (int j = i; j < Size; ++j)
          m(i, j) = m(j, i) = disk();
      return m;
    }

    auto engine() -> std::mt19937_64& { return engine_; }

  private:
    std::mt19937_64 engine_;
  };

  //! Outcome of iterating a closure process.
  struct ChainReport
  {
    //! Elements in emission order (points, lines or circle vectors).
    std::vector<Eigen::VectorXcd> elements;
    bool closed = false;
    //! Smallest exact period found, if the chain closed.
    std::optional<int> order;
    //! Distance between the returning state and the start state at the
    //! detected order, or after the last step for open chains.
    double residual = 0.0;
    int steps = 0;
    //! Steps at which a branch decision was ambiguous.
    std::vector<int> flagged_steps;
  };

}  // namespace poncelet
