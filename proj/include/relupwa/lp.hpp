#pragma once

#include <optional>

#include <Eigen/Dense>

namespace relupwa {

/// min cost' x  s.t.  A x <= b,  lower <= x <= upper.
///
/// Empty `lower` / `upper` mean unbounded in that direction; individual entries
/// may also be +-infinity.
struct LinearProgram {
  Eigen::VectorXd cost;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Eigen::VectorXd> optimizer;  // present iff status == Optimal
  double value = 0.0;
};

inline constexpr double kLpFeasibilityTol = 1e-9;
inline constexpr double kLpOptimalityTol = 1e-9;

/// Two-phase dense tableau simplex with Bland's rule. Throws DimensionError on
/// inconsistent or non-finite data.
LpOutcome solve_lp(const LinearProgram& lp);

struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = 0.0;  // +infinity when the polyhedron contains arbitrarily large balls
};

/// Half-width of the box used to pick a center when the inscribed radius is unbounded.
inline constexpr double kChebyshevTruncation = 1e6;

/// Largest ball inside {x : A x <= b}; std::nullopt when the set is empty.
/// A radius of zero means the set is nonempty but has no interior.
std::optional<ChebyshevBall> chebyshev_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace relupwa
