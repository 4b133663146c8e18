#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relupwa/errors.hpp"
#include "relupwa/polyhedron.hpp"
#include "relupwa/relu_net.hpp"

namespace relupwa {

/// One affine piece x -> u x + c on a polyhedral region.
struct PwaPiece {
  Polyhedron region;
  Eigen::MatrixXd u;  // outputs x inputs
  Eigen::VectorXd c;
};

/// Continuous piecewise-affine function on a bounded domain.
class PwaFunction {
 public:
  PwaFunction(Polyhedron domain, std::vector<PwaPiece> pieces);

  const Polyhedron& domain() const { return domain_; }
  const std::vector<PwaPiece>& pieces() const { return pieces_; }
  Eigen::Index input_dim() const { return domain_.dim(); }
  Eigen::Index output_dim() const { return pieces_.front().u.rows(); }

  /// Index of the piece holding x, nearest piece (least violated) when x falls
  /// into a measure-zero gap. Throws DomainError outside the domain.
  std::size_t locate(const Eigen::VectorXd& x, double tol = 1e-9) const;

 private:
  Polyhedron domain_;
  std::vector<PwaPiece> pieces_;
};

Eigen::VectorXd eval_pwa(const PwaFunction& f, const Eigen::VectorXd& x);

/// x -> max_i (slopes.row(i) x + offsets(i)).
template <typename Scalar>
struct BasicMaxAffine {
  MatrixX<Scalar> slopes;
  VectorX<Scalar> offsets;

  BasicMaxAffine() = default;
  BasicMaxAffine(MatrixX<Scalar> s, VectorX<Scalar> o) : slopes(std::move(s)), offsets(std::move(o)) {
    if (slopes.rows() == 0) throw UsageError("a max-affine function needs at least one piece");
    if (slopes.rows() != offsets.size()) throw DimensionError("max-affine: slope rows != offsets");
    if (!slopes.allFinite() || !offsets.allFinite()) throw DimensionError("max-affine: non-finite data");
  }

  Eigen::Index size() const { return slopes.rows(); }
  Eigen::Index input_dim() const { return slopes.cols(); }

  Scalar operator()(const VectorX<Scalar>& x) const {
    if (x.size() != input_dim()) throw DimensionError("max-affine: input has wrong dimension");
    return (slopes * x + offsets).maxCoeff();
  }
};

using MaxAffine = BasicMaxAffine<double>;

inline double eval_maxaffine(const MaxAffine& g, const Eigen::VectorXd& x) { return g(x); }

/// f = gamma - eta with both parts convex.
struct DcPair {
  MaxAffine gamma;
  MaxAffine eta;

  Eigen::Index input_dim() const { return gamma.input_dim(); }
  double operator()(const Eigen::VectorXd& x) const { return gamma(x) - eta(x); }
};

/// Continuous scalar PWA function of one variable: slope slopes[k] between
/// breakpoints[k-1] and breakpoints[k], value f_ref at x_ref.
struct Pwa1d {
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  double x_ref = 0.0;
  double f_ref = 0.0;

  Pwa1d() = default;
  Pwa1d(std::vector<double> breakpoints, std::vector<double> slopes, double x_ref, double f_ref);

  double operator()(double x) const;
  /// Slope jump slopes[i+1] - slopes[i] at breakpoints[i].
  double jump(std::size_t i) const { return slopes[i + 1] - slopes[i]; }
};

struct Kink {
  double location;
  double jump;
};

/// Breakpoints with nonzero slope change.
std::vector<Kink> kinks(const Pwa1d& f, double tol = 1e-12);

bool is_convex_1d(const Pwa1d& f, double tol = 1e-12);

/// Canonical DC split: gamma carries the affine base and the positive slope
/// jumps, eta the negative ones as a zero-based sum of rectifier atoms.
DcPair dc_decompose_1d(const Pwa1d& f);

/// Max of the segment extensions of a convex function; UsageError if not convex.
MaxAffine maxaffine_from_convex(const Pwa1d& f);

/// Upper envelope of a 1-D max-affine function on [lo, hi].
Pwa1d pwa1d_from_maxaffine(const MaxAffine& g, double lo, double hi);

/// 1-D scalar PwaFunction to breakpoint form, dropping zero-jump breakpoints.
Pwa1d pwa1d_from_pwa(const PwaFunction& f);

/// Breakpoint form to one piece per segment on [lo, hi].
PwaFunction pwa_from_pwa1d(const Pwa1d& f, double lo, double hi);

/// Regions where each piece of g attains the max, restricted to `domain`.
PwaFunction pwa_from_maxaffine(const MaxAffine& g, const Polyhedron& domain,
                               double r_min = kDefaultMinRadius);

/// Distinct affine maps of a scalar PWA function as a max-affine function, when
/// that max reproduces f on `n_samples` domain points (i.e. f is convex).
std::optional<MaxAffine> convex_maxaffine_of(const PwaFunction& f, std::size_t n_samples = 2000,
                                             std::uint64_t seed = 42, double tol = 1e-9);

struct ContinuityReport {
  double max_jump = 0.0;
  std::size_t crossings = 0;  // interior facet crossings examined
  bool pass = true;
};

inline constexpr double kContinuityTol = 1e-7;

/// Shoots random rays from random domain points and compares the affine maps on
/// both sides of every interior facet crossed.
ContinuityReport check_continuity(const PwaFunction& f, std::size_t n_boundary_samples,
                                  std::uint64_t seed = 42, double tol = kContinuityTol);

}  // namespace relupwa
