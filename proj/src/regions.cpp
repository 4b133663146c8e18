#include "relupwa/regions.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "relupwa/sampling.hpp"

namespace relupwa {

namespace {

void sort_by_pattern(std::vector<RegionRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const RegionRecord& a, const RegionRecord& b) { return a.pattern < b.pattern; });
}

void check_box(const ReluNet& net, const Polyhedron& box) {
  if (box.dim() != net.input_dim())
    throw DimensionError("box has dimension " + std::to_string(box.dim()) + ", net input is " +
                         std::to_string(net.input_dim()));
}

}  // namespace

std::vector<RegionRecord> sample_identify(const ReluNet& net, const Polyhedron& box,
                                          std::size_t n_samples, std::uint64_t seed) {
  check_box(net, box);
  const auto bounds = box.as_box();
  if (!bounds) throw UsageError("sample_identify needs an axis-aligned bounded box");
  if (n_samples == 0) throw UsageError("sample_identify needs at least one sample");

  std::map<std::string, RegionRecord> seen;
  for (auto& x : box_samples(bounds->first, bounds->second, n_samples, seed)) {
    ActivationPattern p = activation_pattern(net, x);
    auto key = p.key();
    if (seen.count(key)) continue;
    LocalAffine map = pattern_affine(net, p);
    seen.emplace(std::move(key), RegionRecord{std::move(p), std::nullopt, std::move(map), std::move(x)});
  }
  std::vector<RegionRecord> records;
  records.reserve(seen.size());
  for (auto& [key, rec] : seen) records.push_back(std::move(rec));
  sort_by_pattern(records);
  return records;
}

Polyhedron pattern_region(const ReluNet& net, const ActivationPattern& pattern, const Polyhedron& box) {
  check_box(net, box);
  if (pattern.depth() != net.depth()) throw DimensionError("pattern depth differs from net depth");
  Polyhedron region = box;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(net.input_dim(), net.input_dim());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(net.input_dim());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& layer = net.hidden(l);
    const auto& bits = pattern.bits[l];
    if (static_cast<Eigen::Index>(bits.size()) != layer.out_dim())
      throw DimensionError("pattern width differs at hidden layer " + std::to_string(l + 1));
    Eigen::MatrixXd pre_M = layer.W * M;
    Eigen::VectorXd pre_v = layer.W * v + layer.b;
    for (Eigen::Index j = 0; j < layer.out_dim(); ++j) {
      const double sign = bits[static_cast<std::size_t>(j)] ? -1.0 : 1.0;
      region = region.with_constraint(sign * pre_M.row(j).transpose(), -sign * pre_v[j]);
      if (!bits[static_cast<std::size_t>(j)]) {
        pre_M.row(j).setZero();
        pre_v[j] = 0.0;
      }
    }
    M = std::move(pre_M);
    v = std::move(pre_v);
  }
  return region;
}

void attach_regions(std::vector<RegionRecord>& records, const ReluNet& net, const Polyhedron& box) {
  for (auto& rec : records) rec.region = pattern_region(net, rec.pattern, box);
}

std::vector<RegionRecord> enumerate_exact(const ReluNet& net, const Polyhedron& box,
                                          const EnumerationOptions& options) {
  check_box(net, box);
  if (!(options.r_min > 0)) throw UsageError("r_min must be positive");
  if (!box.is_full_dim(options.r_min)) throw UsageError("enumeration box must be full-dimensional");

  // A region together with the affine map x -> M x + v giving h_{l-1} on it.
  struct Cell {
    Polyhedron region;
    Eigen::MatrixXd M;
    Eigen::VectorXd v;
    ActivationPattern pattern;
  };
  std::vector<Cell> cells;
  cells.push_back({box, Eigen::MatrixXd::Identity(net.input_dim(), net.input_dim()),
                   Eigen::VectorXd::Zero(net.input_dim()), {}});

  for (const auto& layer : net.hidden()) {
    for (auto& cell : cells) cell.pattern.bits.emplace_back(static_cast<std::size_t>(layer.out_dim()), 0);
    for (Eigen::Index j = 0; j < layer.out_dim(); ++j) {
      std::vector<Cell> next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        const Eigen::VectorXd normal = (layer.W.row(j) * cell.M).transpose();
        const double offset = layer.W.row(j).dot(cell.v) + layer.b[j];
        auto [off, on] = split(cell.region, normal, offset);
        const bool keep_off = off.is_full_dim(options.r_min);
        const bool keep_on = on.is_full_dim(options.r_min);
        if (keep_off && keep_on) {
          Cell active = cell;
          active.region = std::move(on);
          active.pattern.bits.back()[static_cast<std::size_t>(j)] = 1;
          cell.region = std::move(off);
          next.push_back(std::move(cell));
          next.push_back(std::move(active));
        } else if (keep_off) {
          cell.region = std::move(off);
          next.push_back(std::move(cell));
        } else if (keep_on) {
          cell.region = std::move(on);
          cell.pattern.bits.back()[static_cast<std::size_t>(j)] = 1;
          next.push_back(std::move(cell));
        }
        if (next.size() > options.region_cap) throw RegionCapExceeded(options.region_cap);
      }
      cells = std::move(next);
    }
    for (auto& cell : cells) {
      Eigen::MatrixXd M = layer.W * cell.M;
      Eigen::VectorXd v = layer.W * cell.v + layer.b;
      const auto& bits = cell.pattern.bits.back();
      for (Eigen::Index j = 0; j < layer.out_dim(); ++j) {
        if (!bits[static_cast<std::size_t>(j)]) {
          M.row(j).setZero();
          v[j] = 0.0;
        }
      }
      cell.M = std::move(M);
      cell.v = std::move(v);
    }
  }

  std::vector<RegionRecord> records;
  records.reserve(cells.size());
  for (auto& cell : cells) {
    auto ball = cell.region.chebyshev();
    LocalAffine map = pattern_affine(net, cell.pattern);
    records.push_back({std::move(cell.pattern), std::move(cell.region), std::move(map),
                       ball ? ball->center : Eigen::VectorXd()});
  }
  sort_by_pattern(records);
  return records;
}

PwaFunction to_pwa(const std::vector<RegionRecord>& records, const Polyhedron& box) {
  if (records.empty()) throw UsageError("to_pwa needs at least one record");
  std::vector<PwaPiece> pieces;
  pieces.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.region) throw UsageError("to_pwa needs records with regions (exact enumeration)");
    pieces.push_back({*rec.region, rec.map.u, rec.map.c});
  }
  return PwaFunction(box, std::move(pieces));
}

ReluNet truncate_to_unit(const ReluNet& net, std::size_t layer, std::size_t unit) {
  if (layer < 1 || layer > net.depth()) throw UsageError("layer index out of range");
  const auto& target = net.hidden(layer - 1);
  if (unit < 1 || unit > static_cast<std::size_t>(target.out_dim()))
    throw UsageError("unit index out of range");
  std::vector<Layer> hidden(net.hidden().begin(), net.hidden().begin() + static_cast<long>(layer - 1));
  const auto row = static_cast<Eigen::Index>(unit - 1);
  hidden.push_back({target.W.row(row), target.b.segment(row, 1)});
  return ReluNet(net.input_dim(), std::move(hidden),
                 {Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1)});
}

PwaFunction unit_pwa(const ReluNet& net, std::size_t layer, std::size_t unit, const Polyhedron& box,
                     const EnumerationOptions& options) {
  return to_pwa(enumerate_exact(truncate_to_unit(net, layer, unit), box, options), box);
}

}  // namespace relupwa
