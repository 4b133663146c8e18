#include "relupwa/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "relupwa/errors.hpp"

namespace relupwa {

Polyhedron::Polyhedron(Eigen::MatrixXd A, Eigen::VectorXd b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size())
    throw DimensionError("polyhedron: " + std::to_string(A_.rows()) + " rows but " +
                         std::to_string(b_.size()) + " offsets");
  if (!A_.allFinite() || !b_.allFinite()) throw DimensionError("polyhedron: non-finite data");
  normalize();
}

Polyhedron Polyhedron::universe(Eigen::Index dim) {
  return Polyhedron(Eigen::MatrixXd(0, dim), Eigen::VectorXd(0));
}

Polyhedron Polyhedron::empty(Eigen::Index dim) {
  return Polyhedron(Eigen::MatrixXd::Zero(1, dim), Eigen::VectorXd::Constant(1, -1.0));
}

Polyhedron Polyhedron::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size()) throw DimensionError("box: bound lengths differ");
  const auto n = lo.size();
  Eigen::MatrixXd A(2 * n, n);
  A << Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b(2 * n);
  b << hi, -lo;
  return Polyhedron(std::move(A), std::move(b));
}

void Polyhedron::normalize() {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    const double norm = A_.row(i).norm();
    if (norm > 0.0) {
      // Rows already of unit norm up to rounding are left alone, which keeps
      // normalization idempotent bit for bit.
      if (std::abs(norm - 1.0) > 8 * std::numeric_limits<double>::epsilon()) {
        A_.row(i) /= norm;
        b_[i] /= norm;
      }
      keep.push_back(i);
    } else if (b_[i] < 0.0) {
      b_[i] = -1.0;
      keep.push_back(i);
    }
  }
  if (static_cast<Eigen::Index>(keep.size()) == A_.rows()) return;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(keep.size()), A_.cols());
  Eigen::VectorXd b(A.rows());
  for (Eigen::Index k = 0; k < A.rows(); ++k) {
    A.row(k) = A_.row(keep[static_cast<std::size_t>(k)]);
    b[k] = b_[keep[static_cast<std::size_t>(k)]];
  }
  A_ = std::move(A);
  b_ = std::move(b);
}

Polyhedron normalized(const Polyhedron& p) { return Polyhedron(p.A(), p.b()); }

Polyhedron Polyhedron::with_constraint(const Eigen::VectorXd& a, double beta) const {
  if (a.size() != dim()) throw DimensionError("constraint normal has wrong dimension");
  Eigen::MatrixXd A(A_.rows() + 1, dim());
  A << A_, a.transpose();
  Eigen::VectorXd b(b_.size() + 1);
  b << b_, beta;
  return Polyhedron(std::move(A), std::move(b));
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim() != dim()) throw DimensionError("intersect: dimensions differ");
  Eigen::MatrixXd A(A_.rows() + other.A_.rows(), dim());
  A << A_, other.A_;
  Eigen::VectorXd b(b_.size() + other.b_.size());
  b << b_, other.b_;
  return Polyhedron(std::move(A), std::move(b));
}

double Polyhedron::max_violation(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw DimensionError("point has wrong dimension");
  if (A_.rows() == 0) return -std::numeric_limits<double>::infinity();
  return (A_ * x - b_).maxCoeff();
}

bool Polyhedron::contains(const Eigen::VectorXd& x, double tol) const {
  return max_violation(x) <= tol;
}

bool Polyhedron::is_full_dim(double r_min) const {
  const auto ball = chebyshev();
  return ball && ball->radius > r_min;
}

Polyhedron Polyhedron::without_redundant(double tol) const {
  Polyhedron kept = *this;
  Eigen::Index i = 0;
  while (i < kept.A_.rows()) {
    LinearProgram lp;
    lp.cost = -kept.A_.row(i).transpose();
    lp.A = kept.A_;
    lp.b = kept.b_;
    lp.b[i] += 1.0;
    const LpOutcome out = solve_lp(lp);
    const bool redundant =
        out.status == LpStatus::Infeasible ||
        (out.status == LpStatus::Optimal && -out.value <= kept.b_[i] + tol);
    if (redundant && kept.A_.rows() > 1) {
      const Eigen::Index last = kept.A_.rows() - 1;
      Eigen::MatrixXd A(last, dim());
      Eigen::VectorXd b(last);
      A << kept.A_.topRows(i), kept.A_.bottomRows(last - i);
      b << kept.b_.head(i), kept.b_.tail(last - i);
      kept.A_ = std::move(A);
      kept.b_ = std::move(b);
    } else {
      ++i;
    }
  }
  return kept;
}

std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> Polyhedron::as_box() const {
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim(), -inf);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim(), inf);
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    Eigen::Index axis = -1;
    for (Eigen::Index j = 0; j < dim(); ++j) {
      if (A_(i, j) == 0.0) continue;
      if (axis >= 0) return std::nullopt;
      axis = j;
    }
    if (axis < 0) return std::nullopt;
    if (A_(i, axis) > 0)
      hi[axis] = std::min(hi[axis], b_[i] / A_(i, axis));
    else
      lo[axis] = std::max(lo[axis], b_[i] / A_(i, axis));
  }
  if (!lo.allFinite() || !hi.allFinite() || (lo.array() > hi.array()).any()) return std::nullopt;
  return std::make_pair(std::move(lo), std::move(hi));
}

std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> Polyhedron::bounding_box() const {
  if (auto box = as_box()) return box;
  Eigen::VectorXd lo(dim()), hi(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) {
    for (int s = 0; s < 2; ++s) {
      LinearProgram lp;
      lp.cost = Eigen::VectorXd::Zero(dim());
      lp.cost[j] = s ? -1.0 : 1.0;
      lp.A = A_;
      lp.b = b_;
      const LpOutcome out = solve_lp(lp);
      if (out.status != LpStatus::Optimal) return std::nullopt;
      (s ? hi : lo)[j] = (*out.optimizer)[j];
    }
  }
  return std::make_pair(std::move(lo), std::move(hi));
}

std::pair<Polyhedron, Polyhedron> split(const Polyhedron& p, const Eigen::VectorXd& w, double beta) {
  if (w.size() != p.dim()) throw DimensionError("split: hyperplane normal has wrong dimension");
  if (w.isZero(0)) {
    if (beta <= 0.0) return {p, Polyhedron::empty(p.dim())};
    return {Polyhedron::empty(p.dim()), p};
  }
  return {p.with_constraint(w, -beta), p.with_constraint(-w, beta)};
}

}  // namespace relupwa
