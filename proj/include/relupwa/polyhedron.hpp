#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "relupwa/lp.hpp"

namespace relupwa {

inline constexpr double kDefaultMinRadius = 1e-8;

/// {x : A x <= b}. Rows with nonzero normal are stored with unit Euclidean norm.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(Eigen::MatrixXd A, Eigen::VectorXd b);

  /// The whole space R^dim (no constraints).
  static Polyhedron universe(Eigen::Index dim);
  /// A set with no points: the single row 0 <= -1.
  static Polyhedron empty(Eigen::Index dim);
  /// Axis-aligned box [lo, hi].
  static Polyhedron box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

  Eigen::Index dim() const { return A_.cols(); }
  Eigen::Index num_constraints() const { return A_.rows(); }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }

  /// Adds a x <= beta.
  Polyhedron with_constraint(const Eigen::VectorXd& a, double beta) const;
  Polyhedron intersect(const Polyhedron& other) const;

  bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const;
  /// max_i (a_i x - b_i); nonpositive iff x is inside.
  double max_violation(const Eigen::VectorXd& x) const;

  std::optional<ChebyshevBall> chebyshev() const { return chebyshev_center(A_, b_); }
  bool is_empty() const { return !chebyshev().has_value(); }
  bool is_full_dim(double r_min = kDefaultMinRadius) const;

  /// Drops rows implied by the others (one LP per row).
  Polyhedron without_redundant(double tol = 1e-9) const;

  /// If the polyhedron is an axis-aligned box, its bounds.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> as_box() const;
  /// Smallest enclosing box (2 * dim LPs unless already a box); nullopt when
  /// empty or unbounded.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> bounding_box() const;

 private:
  void normalize();

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
};

/// Row scaling to unit norm, exposed for the idempotence property.
Polyhedron normalized(const Polyhedron& p);

/// Splits P by the hyperplane w'x + beta = 0 into
/// (P with w'x + beta <= 0, P with w'x + beta >= 0). A zero normal sends all of
/// P to the side that holds (the first side when beta == 0).
std::pair<Polyhedron, Polyhedron> split(const Polyhedron& p, const Eigen::VectorXd& w, double beta);

}  // namespace relupwa
