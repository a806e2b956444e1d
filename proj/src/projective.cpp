#include <poncelet/projective.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace poncelet {

  auto wedge_ratio(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) -> double
  {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0)
      return 0.0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      for (Eigen::Index j = i + 1; j < a.size(); ++j)
        acc += std::norm(a[i] * b[j] - a[j] * b[i]);
    return std::sqrt(acc) / (na * nb);
  }

  auto normalized_det4(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b,
                       const Eigen::Vector4cd& c, const Eigen::Vector4cd& d)
      -> double
  {
    Matrix4 m;
    m << a, b, c, d;
    const double scale = a.norm() * b.norm() * c.norm() * d.norm();
    if (scale == 0.0)
      return 0.0;
    return std::abs(m.determinant()) / scale;
  }

  auto annihilator(const Eigen::VectorXcd& h) -> Eigen::MatrixXcd
  {
    Eigen::MatrixXcd row = h.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(row, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(h.size() - 1);
  }

  auto annihilator_basis(const Eigen::Vector3cd& l)
      -> std::pair<Eigen::Vector3cd, Eigen::Vector3cd>
  {
    const Eigen::MatrixXcd n = annihilator(l);
    return {n.col(0), n.col(1)};
  }

  auto null_space(const Eigen::MatrixXcd& m, double rel_tol) -> Eigen::MatrixXcd
  {
    Eigen::MatrixXcd sq = m;
    if (m.rows() < m.cols())
    {
      sq = Eigen::MatrixXcd::Zero(m.cols(), m.cols());
      sq.topRows(m.rows()) = m;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sq, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > rel_tol * s[0])
        ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
  }

  auto numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) -> int
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0)
      return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > rel_tol * s[0])
        ++rank;
    return rank;
  }

  auto second_point_on_line(const Line2& line, const Point2& p) -> Point2
  {
    Point2 best = Point2::Zero();
    double best_score = -1.0;
    for (int k = 0; k < 3; ++k)
    {
      const Point2 w = cross(line, Point2::Unit(k));
      const double score = wedge_ratio(p, w);
      if (w.norm() > 0.0 && score > best_score)
      {
        best_score = score;
        best = w;
      }
    }
    return best;
  }

  auto Rng::disk() -> Complex
  {
    const double r = std::sqrt(uniform());
    const double phi = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, phi);
  }

}  // namespace poncelet
