#include "relupwa/pwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "relupwa/sampling.hpp"

namespace relupwa {

namespace {

std::pair<Eigen::VectorXd, Eigen::VectorXd> domain_box(const Polyhedron& domain) {
  auto box = domain.bounding_box();
  if (!box) throw DomainError("PWA domain must be nonempty and bounded");
  return *box;
}

std::pair<double, double> interval_of(const Polyhedron& p) {
  const auto box = p.bounding_box();
  if (!box || box->first.size() != 1) throw UsageError("expected a bounded 1-D interval");
  return {box->first[0], box->second[0]};
}

}  // namespace

// ---------------------------------------------------------------------------
// PwaFunction

PwaFunction::PwaFunction(Polyhedron domain, std::vector<PwaPiece> pieces)
    : domain_(std::move(domain)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw UsageError("a PWA function needs at least one piece");
  const auto n = domain_.dim();
  const auto m = pieces_.front().u.rows();
  if (m == 0) throw DimensionError("PWA pieces must have at least one output");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const std::string where = "piece " + std::to_string(i);
    if (p.region.dim() != n) throw DimensionError(where + ": region dimension differs from domain");
    if (p.u.cols() != n) throw DimensionError(where + ": slope has wrong input dimension");
    if (p.u.rows() != m || p.c.size() != m) throw DimensionError(where + ": output dimension differs");
    if (!p.u.allFinite() || !p.c.allFinite()) throw DimensionError(where + ": non-finite map");
  }
}

std::size_t PwaFunction::locate(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != input_dim()) throw DimensionError("PWA input has wrong dimension");
  if (!domain_.contains(x, tol)) throw DomainError("point lies outside the PWA domain");
  std::size_t best = 0;
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double v = pieces_[i].region.max_violation(x);
    if (v <= tol) return i;
    if (v < best_violation) {
      best_violation = v;
      best = i;
    }
  }
  return best;
}

Eigen::VectorXd eval_pwa(const PwaFunction& f, const Eigen::VectorXd& x) {
  const auto& piece = f.pieces()[f.locate(x)];
  return piece.u * x + piece.c;
}

// ---------------------------------------------------------------------------
// One-dimensional forms

Pwa1d::Pwa1d(std::vector<double> bps, std::vector<double> s, double xr, double fr)
    : breakpoints(std::move(bps)), slopes(std::move(s)), x_ref(xr), f_ref(fr) {
  if (slopes.size() != breakpoints.size() + 1)
    throw DimensionError("Pwa1d needs exactly one more slope than breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw UsageError("Pwa1d breakpoints must be strictly increasing");
}

double Pwa1d::operator()(double x) const {
  // Primitive of the slope: s_0 x + sum_i jump_i max(x - x_i, 0).
  auto primitive = [&](double t) {
    double v = slopes.front() * t;
    for (std::size_t i = 0; i < breakpoints.size(); ++i)
      v += jump(i) * std::max(t - breakpoints[i], 0.0);
    return v;
  };
  return f_ref + primitive(x) - primitive(x_ref);
}

std::vector<Kink> kinks(const Pwa1d& f, double tol) {
  std::vector<Kink> out;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i)
    if (std::abs(f.jump(i)) > tol) out.push_back({f.breakpoints[i], f.jump(i)});
  return out;
}

bool is_convex_1d(const Pwa1d& f, double tol) {
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i)
    if (f.jump(i) < -tol) return false;
  return true;
}

DcPair dc_decompose_1d(const Pwa1d& f) {
  std::vector<double> gamma_bps, gamma_slopes{f.slopes.front()};
  std::vector<double> eta_bps, eta_slopes{0.0};
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    const double d = f.jump(i);
    if (d > 0) {
      gamma_bps.push_back(f.breakpoints[i]);
      gamma_slopes.push_back(gamma_slopes.back() + d);
    } else if (d < 0) {
      eta_bps.push_back(f.breakpoints[i]);
      eta_slopes.push_back(eta_slopes.back() - d);
    }
  }
  // Anchor eta at zero left of its first kink; gamma absorbs the rest so that
  // gamma - eta = f at x_ref.
  const double anchor = eta_bps.empty() ? f.x_ref : std::min(f.x_ref, eta_bps.front());
  Pwa1d eta(eta_bps, eta_slopes, anchor, 0.0);
  Pwa1d gamma(gamma_bps, gamma_slopes, f.x_ref, f.f_ref + eta(f.x_ref));
  return {maxaffine_from_convex(gamma), maxaffine_from_convex(eta)};
}

MaxAffine maxaffine_from_convex(const Pwa1d& f) {
  if (!is_convex_1d(f)) throw UsageError("function is not convex");
  std::vector<std::pair<double, double>> lines;  // (slope, offset)
  for (std::size_t k = 0; k < f.slopes.size(); ++k) {
    if (k > 0 && f.slopes[k] == f.slopes[k - 1]) continue;
    // A point inside segment k.
    double at;
    if (f.breakpoints.empty()) at = f.x_ref;
    else if (k == 0) at = f.breakpoints.front();
    else at = f.breakpoints[k - 1];
    lines.emplace_back(f.slopes[k], f(at) - f.slopes[k] * at);
  }
  Eigen::MatrixXd s(static_cast<Eigen::Index>(lines.size()), 1);
  Eigen::VectorXd o(s.rows());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    s(static_cast<Eigen::Index>(i), 0) = lines[i].first;
    o[static_cast<Eigen::Index>(i)] = lines[i].second;
  }
  return MaxAffine(std::move(s), std::move(o));
}

Pwa1d pwa1d_from_maxaffine(const MaxAffine& g, double lo, double hi) {
  if (g.input_dim() != 1) throw UsageError("pwa1d_from_maxaffine needs a 1-D function");
  if (!(lo <= hi)) throw DomainError("empty interval");
  const auto n = g.size();
  auto value = [&](Eigen::Index i, double x) { return g.slopes(i, 0) * x + g.offsets[i]; };

  // Active line at lo; ties go to the steeper line.
  Eigen::Index cur = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double dv = value(i, lo) - value(cur, lo);
    if (dv > 1e-12 * (1.0 + std::abs(value(cur, lo))) ||
        (std::abs(dv) <= 1e-12 * (1.0 + std::abs(value(cur, lo))) && g.slopes(i, 0) > g.slopes(cur, 0)))
      cur = i;
  }
  std::vector<double> bps, slopes{g.slopes(cur, 0)};
  double x = lo;
  while (true) {
    // First steeper line to overtake the current one; ties go to the steeper.
    Eigen::Index next = -1;
    double next_x = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ds = g.slopes(i, 0) - g.slopes(cur, 0);
      if (ds <= 0) continue;
      const double cross = std::max((g.offsets[cur] - g.offsets[i]) / ds, x);
      if (next < 0 || cross < next_x || (cross == next_x && g.slopes(i, 0) > g.slopes(next, 0))) {
        next = i;
        next_x = cross;
      }
    }
    if (next < 0 || next_x >= hi) break;
    if (next_x > x || (bps.empty() && next_x > lo)) {
      bps.push_back(next_x);
      slopes.push_back(g.slopes(next, 0));
    } else {
      slopes.back() = g.slopes(next, 0);
    }
    cur = next;
    x = next_x;
  }
  return Pwa1d(std::move(bps), std::move(slopes), lo, g(Eigen::VectorXd::Constant(1, lo)));
}

Pwa1d pwa1d_from_pwa(const PwaFunction& f) {
  if (f.input_dim() != 1 || f.output_dim() != 1)
    throw UsageError("pwa1d_from_pwa needs a scalar function of one variable");
  const auto [dlo, dhi] = interval_of(f.domain());
  struct Segment {
    double lo, hi, slope, offset;
  };
  std::vector<Segment> segs;
  for (const auto& p : f.pieces()) {
    const auto clipped = p.region.intersect(f.domain());
    const auto box = clipped.bounding_box();
    if (!box) continue;
    const double lo = box->first[0], hi = box->second[0];
    if (hi - lo <= 1e-12) continue;
    segs.push_back({lo, hi, p.u(0, 0), p.c[0]});
  }
  if (segs.empty()) throw UsageError("PWA function has no full-length piece");
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });

  const double gap_tol = 1e-9 * (1.0 + std::abs(dhi - dlo));
  if (segs.front().lo > dlo + gap_tol || segs.back().hi < dhi - gap_tol)
    throw UsageError("PWA pieces do not cover the domain");
  std::vector<double> bps, slopes{segs.front().slope};
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].lo > segs[i - 1].hi + gap_tol) throw UsageError("PWA pieces leave a gap");
    if (segs[i].slope == slopes.back()) continue;
    bps.push_back(segs[i].lo);
    slopes.push_back(segs[i].slope);
  }
  const double f_lo = segs.front().slope * dlo + segs.front().offset;
  return Pwa1d(std::move(bps), std::move(slopes), dlo, f_lo);
}

PwaFunction pwa_from_pwa1d(const Pwa1d& f, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("empty interval");
  std::vector<double> cuts{lo};
  std::vector<std::size_t> segment{0};
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    const double x = f.breakpoints[i];
    if (x <= lo) segment.back() = i + 1;
    else if (x < hi) {
      cuts.push_back(x);
      segment.push_back(i + 1);
    }
  }
  cuts.push_back(hi);
  std::vector<PwaPiece> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double s = f.slopes[segment[k]];
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    pieces.push_back({Polyhedron::box(Eigen::VectorXd::Constant(1, cuts[k]),
                                      Eigen::VectorXd::Constant(1, cuts[k + 1])),
                      Eigen::MatrixXd::Constant(1, 1, s), Eigen::VectorXd::Constant(1, f(mid) - s * mid)});
  }
  return PwaFunction(Polyhedron::box(Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi)),
                     std::move(pieces));
}

PwaFunction pwa_from_maxaffine(const MaxAffine& g, const Polyhedron& domain, double r_min) {
  if (domain.dim() != g.input_dim()) throw DimensionError("domain dimension differs from function");
  std::vector<PwaPiece> pieces;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    // g_j(x) <= g_i(x) for all j.
    Eigen::MatrixXd A(g.size(), g.input_dim());
    Eigen::VectorXd b(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      A.row(j) = g.slopes.row(j) - g.slopes.row(i);
      b[j] = g.offsets[i] - g.offsets[j];
    }
    Polyhedron region = Polyhedron(A, b).intersect(domain);
    if (!region.is_full_dim(r_min)) continue;
    pieces.push_back({std::move(region), g.slopes.row(i), Eigen::VectorXd::Constant(1, g.offsets[i])});
  }
  return PwaFunction(domain, std::move(pieces));
}

std::optional<MaxAffine> convex_maxaffine_of(const PwaFunction& f, std::size_t n_samples,
                                             std::uint64_t seed, double tol) {
  if (f.output_dim() != 1) throw UsageError("convexity test needs a scalar PWA function");
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const auto& p = f.pieces()[i];
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](std::size_t k) {
      const auto& q = f.pieces()[k];
      return (q.u - p.u).cwiseAbs().maxCoeff() <= tol && std::abs(q.c[0] - p.c[0]) <= tol;
    });
    if (!seen) distinct.push_back(i);
  }
  Eigen::MatrixXd s(static_cast<Eigen::Index>(distinct.size()), f.input_dim());
  Eigen::VectorXd o(s.rows());
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    s.row(static_cast<Eigen::Index>(k)) = f.pieces()[distinct[k]].u.row(0);
    o[static_cast<Eigen::Index>(k)] = f.pieces()[distinct[k]].c[0];
  }
  MaxAffine g(std::move(s), std::move(o));
  const auto [lo, hi] = domain_box(f.domain());
  for (const auto& x : box_samples(lo, hi, n_samples, seed)) {
    if (!f.domain().contains(x)) continue;
    const double fx = eval_pwa(f, x)[0];
    if (std::abs(g(x) - fx) > tol * (1.0 + std::abs(fx))) return std::nullopt;
  }
  return g;
}

ContinuityReport check_continuity(const PwaFunction& f, std::size_t n_boundary_samples,
                                  std::uint64_t seed, double tol) {
  ContinuityReport report;
  if (f.pieces().size() < 2) return report;
  const auto [lo, hi] = domain_box(f.domain());
  const double scale = (hi - lo).norm();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto starts = box_samples(lo, hi, 4 * n_boundary_samples + 16, seed);

  for (const auto& x : starts) {
    if (report.crossings >= n_boundary_samples) break;
    if (!f.domain().contains(x, 0.0)) continue;
    const std::size_t from = f.locate(x);
    Eigen::VectorXd dir(x.size());
    for (Eigen::Index d = 0; d < dir.size(); ++d) dir[d] = gauss(rng);
    dir.normalize();

    // Exit parameter of the ray from the current piece's region.
    const auto& region = f.pieces()[from].region;
    const Eigen::VectorXd rate = region.A() * dir;
    const Eigen::VectorXd slack = region.b() - region.A() * x;
    double t = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rate.size(); ++i)
      if (rate[i] > 1e-14) t = std::min(t, std::max(slack[i], 0.0) / rate[i]);
    if (!std::isfinite(t)) continue;
    const Eigen::VectorXd y = x + t * dir;
    const Eigen::VectorXd beyond = y + 1e-7 * scale * dir;
    if (f.domain().max_violation(y) > -1e-9 * scale || !f.domain().contains(beyond, 0.0)) continue;
    const std::size_t to = f.locate(beyond);
    if (to == from) continue;
    const auto& a = f.pieces()[from];
    const auto& b = f.pieces()[to];
    const double jump = ((a.u - b.u) * y + (a.c - b.c)).cwiseAbs().maxCoeff();
    report.max_jump = std::max(report.max_jump, jump);
    ++report.crossings;
  }
  report.pass = report.max_jump <= tol;
  return report;
}

}  // namespace relupwa
