#include "relupwa/inverse_mplp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "relupwa/lp.hpp"
#include "relupwa/sampling.hpp"

namespace relupwa {

void MpLP::validate() const {
  const auto d = decision_dim();
  const auto m = Az.rows();
  if (d == 0) throw DimensionError("mp-LP has no decision variables");
  if (Az.cols() != d) throw DimensionError("mp-LP: Az columns != decision dimension");
  if (Ax.rows() != m || offset.size() != m) throw DimensionError("mp-LP: constraint blocks disagree");
  if (domain.dim() != Ax.cols()) throw DimensionError("mp-LP: domain dimension != parameter dimension");
  if (T.cols() != d) throw DimensionError("mp-LP: recovery map has wrong width");
}

MpLP dc_to_mplp(const DcPair& pair, const Polyhedron& domain) {
  const auto n0 = pair.gamma.input_dim();
  if (pair.eta.input_dim() != n0) throw DimensionError("gamma and eta have different input dimensions");
  if (domain.dim() != n0) throw DimensionError("domain dimension differs from the DC pair");
  if (pair.gamma.size() == 0 || pair.eta.size() == 0) throw UsageError("DC pair has an empty piece list");

  const auto ng = pair.gamma.size();
  const auto ne = pair.eta.size();
  MpLP mp;
  mp.cost = Eigen::RowVector2d(1.0, -1.0);
  mp.Az = Eigen::MatrixXd::Zero(ng + ne, 2);
  mp.Ax = Eigen::MatrixXd(ng + ne, n0);
  mp.offset = Eigen::VectorXd(ng + ne);
  // gamma_i(x) <= z1   <=>   -z1 <= -u_i x - c_i
  mp.Az.col(0).head(ng).setConstant(-1.0);
  mp.Ax.topRows(ng) = -pair.gamma.slopes;
  mp.offset.head(ng) = -pair.gamma.offsets;
  // z2 <= -eta_j(x)
  mp.Az.col(1).tail(ne).setConstant(1.0);
  mp.Ax.bottomRows(ne) = -pair.eta.slopes;
  mp.offset.tail(ne) = -pair.eta.offsets;
  mp.domain = domain;
  mp.T = Eigen::RowVector2d(1.0, 1.0);
  return mp;
}

SliceSolution solve_slice(const MpLP& mp, const Eigen::VectorXd& x) {
  mp.validate();
  if (x.size() != mp.param_dim()) throw DimensionError("parameter has wrong dimension");
  if (!mp.domain.contains(x)) throw DomainError("parameter lies outside the mp-LP domain");
  LinearProgram lp;
  lp.cost = mp.cost.transpose();
  lp.A = mp.Az;
  lp.b = mp.Ax * x + mp.offset;
  LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::Optimal)
    throw ConstructionError(std::string("mp-LP slice is ") + to_string(out.status));
  return {std::move(*out.optimizer), out.value};
}

namespace {

std::vector<Eigen::VectorXd> parameter_samples(const Polyhedron& domain, std::size_t n, std::uint64_t seed) {
  const auto box = domain.bounding_box();
  if (!box) throw DomainError("mp-LP domain must be nonempty and bounded");
  const auto& [lo, hi] = *box;
  std::vector<Eigen::VectorXd> pts;
  if (domain.dim() == 1) {
    for (std::size_t k = 0; k < n; ++k) {
      const double t = n == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(n - 1);
      pts.emplace_back(Eigen::VectorXd::Constant(1, lo[0] + t * (hi[0] - lo[0])));
    }
    return pts;
  }
  for (std::uint64_t round = 0; pts.size() < n && round < 64; ++round) {
    for (auto& x : box_samples(lo, hi, n, seed + round)) {
      if (pts.size() == n) break;
      if (domain.contains(x)) pts.push_back(std::move(x));
    }
  }
  return pts;
}

}  // namespace

InverseReport verify_inverse(const MpLP& mp, const ScalarFunction& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed) {
  InverseReport report;
  const auto pts = parameter_samples(mp.domain, n_samples, seed);
  std::vector<double> values;
  values.reserve(pts.size());
  for (const auto& x : pts) {
    const SliceSolution s = solve_slice(mp, x);
    const double err = std::abs((mp.T * s.z)[0] - reference(x));
    report.max_error = std::max(report.max_error, err);
    values.push_back(s.value);
  }
  report.samples = pts.size();

  // Midpoint convexity of J* on random sample pairs.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.empty() ? 0 : pts.size() - 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::size_t i = pick(rng), j = pick(rng);
    const Eigen::VectorXd mid = 0.5 * (pts[i] + pts[j]);
    if (!mp.domain.contains(mid)) continue;
    const double excess = solve_slice(mp, mid).value - 0.5 * (values[i] + values[j]);
    report.max_convexity_violation = std::max(report.max_convexity_violation, excess);
  }
  report.value_convex = report.max_convexity_violation <= tol;
  report.pass = report.samples > 0 && report.max_error <= tol && report.value_convex;
  return report;
}

InverseReport verify_inverse(const MpLP& mp, const PwaFunction& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed) {
  if (reference.output_dim() != 1) throw UsageError("reference must be scalar-valued");
  return verify_inverse(mp, [&](const Eigen::VectorXd& x) { return eval_pwa(reference, x)[0]; },
                        n_samples, tol, seed);
}

InverseReport verify_inverse(const MpLP& mp, const ReluNet& reference, std::size_t n_samples,
                             double tol, std::uint64_t seed) {
  if (reference.output_dim() != 1) throw UsageError("reference must be scalar-valued");
  return verify_inverse(mp, [&](const Eigen::VectorXd& x) { return eval_net(reference, x)[0]; },
                        n_samples, tol, seed);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string param_name(Eigen::Index i, Eigen::Index n) {
  return n == 1 ? std::string("x") : "x" + std::to_string(i + 1);
}

std::string decision_terms(const Eigen::RowVectorXd& row) {
  std::string s;
  for (Eigen::Index i = 0; i < row.size(); ++i)
    s += (i ? " + " : "") + number(row[i]) + " z" + std::to_string(i + 1);
  return s;
}

std::string param_terms(const Eigen::RowVectorXd& row, double constant) {
  std::string s;
  for (Eigen::Index i = 0; i < row.size(); ++i) s += number(row[i]) + " " + param_name(i, row.size()) + " + ";
  return s + number(constant);
}

// Sum of "<num> <var>" and bare "<num>" terms joined by "+".
struct LinearExpr {
  std::vector<std::pair<std::string, double>> terms;
  double constant = 0.0;
};

LinearExpr parse_expr(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  LinearExpr e;
  std::size_t i = 0;
  while (i < tokens.size()) {
    double v;
    try {
      std::size_t used = 0;
      v = std::stod(tokens[i], &used);
      if (used != tokens[i].size()) throw std::invalid_argument(tokens[i]);
    } catch (const std::exception&) {
      throw ParseError("expected a number, got '" + tokens[i] + "'", line);
    }
    ++i;
    if (i < tokens.size() && tokens[i] != "+") {
      e.terms.emplace_back(tokens[i], v);
      ++i;
    } else {
      e.constant += v;
    }
    if (i < tokens.size()) {
      if (tokens[i] != "+") throw ParseError("expected '+', got '" + tokens[i] + "'", line);
      ++i;
      if (i == tokens.size()) throw ParseError("dangling '+'", line);
    }
  }
  return e;
}

int var_index(const std::string& name, char prefix, Eigen::Index count, std::size_t line) {
  if (name.empty() || name[0] != prefix) throw ParseError("unexpected variable '" + name + "'", line);
  if (prefix == 'x' && count == 1 && name == "x") return 0;
  try {
    const int k = std::stoi(name.substr(1));
    if (k >= 1 && k <= count) return k - 1;
  } catch (const std::exception&) {
  }
  throw ParseError("unknown variable '" + name + "'", line);
}

Eigen::RowVectorXd dense(const LinearExpr& e, char prefix, Eigen::Index count, std::size_t line) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(count);
  for (const auto& [name, v] : e.terms) row[var_index(name, prefix, count, line)] += v;
  return row;
}

}  // namespace

std::string write_mplp_text(const MpLP& mp) {
  mp.validate();
  const auto n = mp.param_dim();
  std::ostringstream out;
  out << "# mp-LP: minimize cost z subject to the constraints for x in the domain; f(x) = T z*\n";
  out << "parameters " << n << "\n";
  out << "decisions " << mp.decision_dim() << "\n";
  out << "minimize " << decision_terms(mp.cost) << "\n";
  out << "recovery " << mp.T.rows() << "\n";
  for (Eigen::Index r = 0; r < mp.T.rows(); ++r) out << decision_terms(mp.T.row(r)) << "\n";
  out << "domain " << mp.domain.num_constraints() << "\n";
  for (Eigen::Index r = 0; r < mp.domain.num_constraints(); ++r) {
    std::string lhs;
    for (Eigen::Index i = 0; i < n; ++i)
      lhs += (i ? " + " : "") + number(mp.domain.A()(r, i)) + " " + param_name(i, n);
    out << lhs << " <= " << number(mp.domain.b()[r]) << "\n";
  }
  out << "constraints " << mp.num_constraints() << "\n";
  for (Eigen::Index r = 0; r < mp.num_constraints(); ++r)
    out << decision_terms(mp.Az.row(r)) << " <= " << param_terms(mp.Ax.row(r), mp.offset[r]) << "\n";
  return out.str();
}

MpLP read_mplp_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t lineno = 0;
  for (std::string l; std::getline(in, l);) {
    ++lineno;
    const auto hash = l.find('#');
    if (hash != std::string::npos) l.erase(hash);
    if (l.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(lineno, l);
  }
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const std::pair<std::size_t, std::string>& {
    if (pos >= lines.size()) throw ParseError(std::string("unexpected end of file, expected ") + what, lineno);
    return lines[pos++];
  };
  auto header = [&](const std::string& key) -> long {
    const auto& [ln, l] = next(key.c_str());
    std::istringstream s(l);
    std::string k;
    long v = -1;
    if (!(s >> k >> v) || k != key || v < 0) throw ParseError("expected '" + key + " <count>'", ln);
    return v;
  };
  auto split_le = [](const std::pair<std::size_t, std::string>& l) {
    const auto at = l.second.find("<=");
    if (at == std::string::npos) throw ParseError("expected '<='", l.first);
    return std::make_pair(l.second.substr(0, at), l.second.substr(at + 2));
  };

  MpLP mp;
  const long n = header("parameters");
  const long d = header("decisions");
  if (n < 1 || d < 1) throw ParseError("parameter and decision counts must be positive", lines[pos - 1].first);
  {
    const auto& [ln, l] = next("minimize");
    if (l.rfind("minimize", 0) != 0) throw ParseError("expected 'minimize'", ln);
    mp.cost = dense(parse_expr(l.substr(8), ln), 'z', d, ln);
  }
  const long outputs = header("recovery");
  mp.T = Eigen::MatrixXd(outputs, d);
  for (long r = 0; r < outputs; ++r) {
    const auto& [ln, l] = next("recovery row");
    mp.T.row(r) = dense(parse_expr(l, ln), 'z', d, ln);
  }
  const long nd = header("domain");
  Eigen::MatrixXd DA(nd, n);
  Eigen::VectorXd Db(nd);
  for (long r = 0; r < nd; ++r) {
    const auto& l = next("domain row");
    const auto [lhs, rhs] = split_le(l);
    DA.row(r) = dense(parse_expr(lhs, l.first), 'x', n, l.first);
    const LinearExpr right = parse_expr(rhs, l.first);
    if (!right.terms.empty()) throw ParseError("domain right-hand side must be a constant", l.first);
    Db[r] = right.constant;
  }
  mp.domain = Polyhedron(DA, Db);
  const long m = header("constraints");
  mp.Az = Eigen::MatrixXd(m, d);
  mp.Ax = Eigen::MatrixXd(m, n);
  mp.offset = Eigen::VectorXd(m);
  for (long r = 0; r < m; ++r) {
    const auto& l = next("constraint row");
    const auto [lhs, rhs] = split_le(l);
    const LinearExpr left = parse_expr(lhs, l.first);
    if (left.constant != 0.0) throw ParseError("constants belong on the right-hand side", l.first);
    mp.Az.row(r) = dense(left, 'z', d, l.first);
    const LinearExpr right = parse_expr(rhs, l.first);
    mp.Ax.row(r) = dense(right, 'x', n, l.first);
    mp.offset[r] = right.constant;
  }
  if (pos != lines.size()) throw ParseError("trailing content", lines[pos].first);
  return mp;
}

}  // namespace relupwa
