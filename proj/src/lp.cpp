#include "relupwa/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "relupwa/errors.hpp"

namespace relupwa {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau over nonnegative variables: rows are  T.row(i).head(n) y = rhs_i >= 0.
// Column layout: [structural | slack | artificial], last column = rhs.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) : m_(A.rows()), n_struct_(A.cols()) {
    std::vector<Eigen::Index> negative;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (b[i] < 0) negative.push_back(i);
    n_art_ = static_cast<Eigen::Index>(negative.size());
    n_ = n_struct_ + m_ + n_art_;
    T_ = Eigen::MatrixXd::Zero(m_ + 1, n_ + 1);
    basis_.resize(static_cast<std::size_t>(m_));
    Eigen::Index art = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      T_.row(i).head(n_struct_) = sign * A.row(i);
      T_(i, n_struct_ + i) = sign;
      T_(i, n_) = sign * b[i];
      if (b[i] < 0) {
        T_(i, n_struct_ + m_ + art) = 1.0;
        basis_[static_cast<std::size_t>(i)] = n_struct_ + m_ + art;
        ++art;
      } else {
        basis_[static_cast<std::size_t>(i)] = n_struct_ + i;
      }
    }
    rhs_scale_ = 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
  }

  // Returns false when phase 1 leaves positive infeasibility.
  bool phase1() {
    if (n_art_ == 0) return true;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_);
    c.tail(n_art_).setOnes();
    set_objective(c);
    run(n_);
    if (-T_(m_, n_) > kLpFeasibilityTol * rhs_scale_) return false;
    // Drive zero-level artificials out of the basis.
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[static_cast<std::size_t>(i)])) continue;
      for (Eigen::Index j = 0; j < n_struct_ + m_; ++j) {
        if (std::abs(T_(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
      // A row left with an artificial basic variable is redundant; it stays at zero.
    }
    return true;
  }

  // Returns false when unbounded.
  bool phase2(const Eigen::VectorXd& cost) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_);
    c.head(n_struct_) = cost;
    set_objective(c);
    return run(n_struct_ + m_);
  }

  Eigen::VectorXd structural_solution() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_struct_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const auto j = basis_[static_cast<std::size_t>(i)];
      if (j < n_struct_) y[j] = T_(i, n_);
    }
    return y;
  }

 private:
  bool is_artificial(Eigen::Index j) const { return j >= n_struct_ + m_; }

  void set_objective(const Eigen::VectorXd& c) {
    T_.row(m_).setZero();
    T_.row(m_).head(n_) = c.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double cb = c[basis_[static_cast<std::size_t>(i)]];
      if (cb != 0.0) T_.row(m_) -= cb * T_.row(i);
    }
  }

  // Bland's rule: lowest-index improving column enters; among minimum-ratio
  // rows the one whose basic variable has the lowest index leaves.
  bool run(Eigen::Index enterable) {
    const long max_iter = 100000;
    for (long iter = 0; iter < max_iter; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < enterable; ++j) {
        if (T_(m_, j) < -kLpOptimalityTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i)
        if (T_(i, enter) > kPivotTol) best = std::min(best, T_(i, n_) / T_(i, enter));
      Eigen::Index leave = -1;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (T_(i, enter) <= kPivotTol || T_(i, n_) / T_(i, enter) > best + 1e-12) continue;
        if (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])
          leave = i;
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::logic_error("simplex iteration limit reached despite Bland's rule");
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    T_.row(r) /= T_(r, c);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = T_(i, c);
      if (f != 0.0) T_.row(i) -= f * T_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index m_;
  Eigen::Index n_struct_;
  Eigen::Index n_art_ = 0;
  Eigen::Index n_ = 0;
  double rhs_scale_ = 1.0;
  Eigen::MatrixXd T_;
  std::vector<Eigen::Index> basis_;
};

void validate(const LinearProgram& lp) {
  const auto d = lp.cost.size();
  if (lp.A.cols() != d && !(lp.A.rows() == 0))
    throw DimensionError("LP matrix has " + std::to_string(lp.A.cols()) + " columns, cost has " +
                         std::to_string(d));
  if (lp.A.rows() != lp.b.size()) throw DimensionError("LP matrix rows != bound length");
  if (lp.lower.size() != 0 && lp.lower.size() != d) throw DimensionError("LP lower bound length");
  if (lp.upper.size() != 0 && lp.upper.size() != d) throw DimensionError("LP upper bound length");
  if (!lp.cost.allFinite() || !lp.A.allFinite() || !lp.b.allFinite())
    throw DimensionError("LP data must be finite");
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  validate(lp);
  const Eigen::Index d = lp.cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  auto lower = [&](Eigen::Index i) { return lp.lower.size() ? lp.lower[i] : -inf; };
  auto upper = [&](Eigen::Index i) { return lp.upper.size() ? lp.upper[i] : inf; };

  // x = offset + map * y with y >= 0.
  Eigen::Index ny = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    ny += (std::isfinite(lower(i)) || std::isfinite(upper(i))) ? 1 : 2;
  Eigen::MatrixXd map = Eigen::MatrixXd::Zero(d, ny);
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(d);
  std::vector<std::pair<Eigen::Index, double>> upper_rows;  // (y column, width)
  for (Eigen::Index i = 0, col = 0; i < d; ++i) {
    if (lower(i) > upper(i)) return {};
    if (std::isfinite(lower(i))) {
      offset[i] = lower(i);
      map(i, col) = 1.0;
      if (std::isfinite(upper(i))) upper_rows.emplace_back(col, upper(i) - lower(i));
      ++col;
    } else if (std::isfinite(upper(i))) {
      offset[i] = upper(i);
      map(i, col++) = -1.0;
    } else {
      map(i, col++) = 1.0;
      map(i, col++) = -1.0;
    }
  }

  const Eigen::Index m = lp.A.rows() + static_cast<Eigen::Index>(upper_rows.size());
  Eigen::MatrixXd Ay = Eigen::MatrixXd::Zero(m, ny);
  Eigen::VectorXd by(m);
  if (lp.A.rows()) {
    Ay.topRows(lp.A.rows()) = lp.A * map;
    by.head(lp.A.rows()) = lp.b - lp.A * offset;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const auto row = lp.A.rows() + static_cast<Eigen::Index>(k);
    Ay(row, upper_rows[k].first) = 1.0;
    by[row] = upper_rows[k].second;
  }

  Tableau tab(Ay, by);
  if (!tab.phase1()) return {LpStatus::Infeasible, std::nullopt, 0.0};
  if (!tab.phase2(map.transpose() * lp.cost)) return {LpStatus::Unbounded, std::nullopt, -inf};
  Eigen::VectorXd x = offset + map * tab.structural_solution();
  const double value = lp.cost.dot(x);
  return {LpStatus::Optimal, std::move(x), value};
}

std::optional<ChebyshevBall> chebyshev_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() != b.size()) throw DimensionError("chebyshev_center: rows of A != length of b");
  const Eigen::Index n = A.cols();
  LinearProgram lp;
  lp.cost = Eigen::VectorXd::Zero(n + 1);
  lp.cost[n] = -1.0;
  lp.A.resize(A.rows(), n + 1);
  lp.A.leftCols(n) = A;
  lp.A.col(n) = A.rowwise().norm();
  lp.b = b;
  const double inf = std::numeric_limits<double>::infinity();
  lp.lower = Eigen::VectorXd::Constant(n + 1, -inf);
  lp.lower[n] = 0.0;

  LpOutcome out = solve_lp(lp);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status == LpStatus::Optimal) return ChebyshevBall{out.optimizer->head(n), (*out.optimizer)[n]};

  // Recenter inside |x_j| <= kChebyshevTruncation, imposed as ball constraints.
  LinearProgram boxed = lp;
  boxed.A.conservativeResize(A.rows() + 2 * n, n + 1);
  boxed.b.conservativeResize(A.rows() + 2 * n);
  boxed.A.bottomRows(2 * n).setZero();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int s = 0; s < 2; ++s) {
      const auto row = A.rows() + 2 * j + s;
      boxed.A(row, j) = s ? -1.0 : 1.0;
      boxed.A(row, n) = 1.0;
      boxed.b[row] = kChebyshevTruncation;
    }
  }
  out = solve_lp(boxed);
  if (out.status != LpStatus::Optimal) return ChebyshevBall{Eigen::VectorXd::Zero(n), inf};
  return ChebyshevBall{out.optimizer->head(n), inf};
}

}  // namespace relupwa
