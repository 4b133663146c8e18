#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "relupwa/polyhedron.hpp"
#include "relupwa/pwa.hpp"
#include "relupwa/relu_net.hpp"

namespace relupwa {

/// Multiparametric LP
///   min_z  cost z   s.t.  Az z <= Ax x + offset,
/// over parameters x in `domain`; the function value is recovered as T z*.
struct MpLP {
  Eigen::RowVectorXd cost;
  Eigen::MatrixXd Az;
  Eigen::MatrixXd Ax;
  Eigen::VectorXd offset;
  Polyhedron domain;
  Eigen::MatrixXd T;

  Eigen::Index decision_dim() const { return cost.size(); }
  Eigen::Index param_dim() const { return Ax.cols(); }
  Eigen::Index num_constraints() const { return Az.rows(); }
  /// Throws DimensionError when the blocks do not fit together.
  void validate() const;
};

/// min z1 - z2  s.t.  gamma_i(x) <= z1,  z2 <= -eta_j(x);  T = [1 1].
/// The x-slice optimizer is z* = (gamma(x), -eta(x)), so T z* = gamma(x) - eta(x).
MpLP dc_to_mplp(const DcPair& pair, const Polyhedron& domain);

struct SliceSolution {
  Eigen::VectorXd z;
  double value = 0.0;
};

/// Solves the LP at a fixed parameter. DomainError outside the domain;
/// ConstructionError when the slice is infeasible or unbounded.
SliceSolution solve_slice(const MpLP& mp, const Eigen::VectorXd& x);

inline Eigen::VectorXd recover(const MpLP& mp, const SliceSolution& s) { return mp.T * s.z; }

struct InverseReport {
  std::size_t samples = 0;
  double max_error = 0.0;
  double max_convexity_violation = 0.0;
  bool value_convex = true;
  bool pass = false;
};

using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;

/// Compares T z*(x) with the reference on n_samples domain points (a uniform grid
/// in 1-D) and checks midpoint convexity of the optimal value on sample pairs.
InverseReport verify_inverse(const MpLP& mp, const ScalarFunction& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed = 42);
InverseReport verify_inverse(const MpLP& mp, const PwaFunction& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed = 42);
InverseReport verify_inverse(const MpLP& mp, const ReluNet& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed = 42);

/// Plain-text form: one constraint per line as
///   <a_z1> z1 + <a_z2> z2 <= <a_x> x + <const>
/// with 12 significant digits (x1, x2, ... when there are several parameters).
std::string write_mplp_text(const MpLP& mp);
/// Parses write_mplp_text output; ParseError carries the offending line.
MpLP read_mplp_text(const std::string& text);

}  // namespace relupwa
