#include "relupwa/synthesis.hpp"

#include <algorithm>

namespace relupwa {

namespace {

// Hidden layers of a running-max net plus the affine readout of m from the
// last layer's units.
struct MaxChain {
  std::vector<Layer> hidden;
  Eigen::RowVectorXd readout;
  double readout_bias = 0.0;
  double floor = 0.0;  // lower bound of m on the box
};

std::pair<Eigen::VectorXd, Eigen::VectorXd> require_box(const Polyhedron& box, Eigen::Index dim) {
  if (box.dim() != dim) throw DimensionError("box dimension differs from the function's input");
  auto bounds = box.as_box();
  if (!bounds) throw UsageError("synthesis needs a bounded axis-aligned box");
  return *bounds;
}

std::vector<Eigen::Index> active_pieces(const MaxAffine& g, const Polyhedron& box, bool prune) {
  std::vector<Eigen::Index> order;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (prune) {
      Eigen::MatrixXd A = g.slopes.rowwise() - g.slopes.row(i);
      Eigen::VectorXd b = (g.offsets[i] - g.offsets.array()).matrix();
      if (!Polyhedron(A, b).intersect(box).is_full_dim(1e-12)) continue;
    }
    order.push_back(i);
  }
  if (order.empty()) order.push_back(0);
  return order;
}

void append_pad_layer(MaxChain& chain, Eigen::Index n0) {
  const Eigen::Index width = n0 + 1;
  Layer layer{Eigen::MatrixXd::Zero(width, width), Eigen::VectorXd::Zero(width)};
  layer.W.topLeftCorner(n0, n0).setIdentity();
  layer.W.row(n0) = chain.readout;
  layer.b[n0] = chain.readout_bias - chain.floor;
  chain.hidden.push_back(std::move(layer));
  chain.readout = Eigen::RowVectorXd::Zero(width);
  chain.readout[n0] = 1.0;
  chain.readout_bias = chain.floor;
}

MaxChain build_chain(const MaxAffine& g, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                     const SynthesisOptions& options, const Polyhedron& box) {
  const Eigen::Index n0 = g.input_dim();
  const Eigen::Index width = n0 + 1;
  const auto order = active_pieces(g, box, options.prune_inactive);
  MaxChain chain;

  const Eigen::RowVectorXd u1 = g.slopes.row(order.front());
  const double c1 = g.offsets[order.front()];
  chain.floor = c1 + u1.cwiseProduct(lo.transpose()).cwiseMin(u1.cwiseProduct(hi.transpose())).sum();
  Layer first{Eigen::MatrixXd::Zero(width, n0), Eigen::VectorXd::Zero(width)};
  first.W.topRows(n0).setIdentity();
  first.b.head(n0) = -lo;
  first.W.row(n0) = u1;
  first.b[n0] = c1 - chain.floor;
  chain.hidden.push_back(std::move(first));
  chain.readout = Eigen::RowVectorXd::Zero(width);
  chain.readout[n0] = 1.0;
  chain.readout_bias = chain.floor;

  for (std::size_t k = 1; k < order.size(); ++k) {
    const Eigen::RowVectorXd u = g.slopes.row(order[k]);
    const double c = g.offsets[order[k]];
    // g_k(x) = u (x - lo) + u lo + c in terms of the carried units.
    Eigen::RowVectorXd piece_on_units = Eigen::RowVectorXd::Zero(width);
    piece_on_units.head(n0) = u;
    const double piece_bias = u.dot(lo) + c;

    Layer layer{Eigen::MatrixXd::Zero(width, width), Eigen::VectorXd::Zero(width)};
    layer.W.topLeftCorner(n0, n0).setIdentity();
    layer.W.row(n0) = chain.readout - piece_on_units;
    layer.b[n0] = chain.readout_bias - piece_bias;
    chain.hidden.push_back(std::move(layer));

    chain.readout = piece_on_units;
    chain.readout[n0] = 1.0;
    chain.readout_bias = piece_bias;
  }
  if (options.pad_to_piece_count)
    while (chain.hidden.size() < static_cast<std::size_t>(g.size())) append_pad_layer(chain, n0);
  return chain;
}

}  // namespace

ReluNet maxaffine_to_relu(const MaxAffine& g, const Polyhedron& box, const SynthesisOptions& options) {
  const auto [lo, hi] = require_box(box, g.input_dim());
  MaxChain chain = build_chain(g, lo, hi, options, box);
  return ReluNet(g.input_dim(), std::move(chain.hidden),
                 {chain.readout, Eigen::VectorXd::Constant(1, chain.readout_bias)});
}

ReluNet dc_to_relu(const DcPair& pair, const Polyhedron& box, const SynthesisOptions& options) {
  if (pair.gamma.input_dim() != pair.eta.input_dim())
    throw DimensionError("gamma and eta have different input dimensions");
  const Eigen::Index n0 = pair.input_dim();
  const auto [lo, hi] = require_box(box, n0);
  MaxChain gamma = build_chain(pair.gamma, lo, hi, options, box);
  MaxChain eta = build_chain(pair.eta, lo, hi, options, box);
  while (gamma.hidden.size() < eta.hidden.size()) append_pad_layer(gamma, n0);
  while (eta.hidden.size() < gamma.hidden.size()) append_pad_layer(eta, n0);

  const Eigen::Index w = n0 + 1;
  std::vector<Layer> hidden;
  for (std::size_t l = 0; l < gamma.hidden.size(); ++l) {
    const auto& a = gamma.hidden[l];
    const auto& b = eta.hidden[l];
    const Eigen::Index cols = l == 0 ? n0 : 2 * w;
    Layer layer{Eigen::MatrixXd::Zero(2 * w, cols), Eigen::VectorXd(2 * w)};
    if (l == 0) {
      layer.W << a.W, b.W;
    } else {
      layer.W.topLeftCorner(w, w) = a.W;
      layer.W.bottomRightCorner(w, w) = b.W;
    }
    layer.b << a.b, b.b;
    hidden.push_back(std::move(layer));
  }
  Eigen::RowVectorXd out(2 * w);
  out << gamma.readout, -eta.readout;
  return ReluNet(n0, std::move(hidden),
                 {out, Eigen::VectorXd::Constant(1, gamma.readout_bias - eta.readout_bias)});
}

std::vector<ReluNet> vector_policy_nets(const std::vector<DcPair>& components, const Polyhedron& box,
                                        const SynthesisOptions& options) {
  if (components.empty()) throw UsageError("vector_policy_nets needs at least one component");
  std::vector<ReluNet> nets;
  nets.reserve(components.size());
  for (const auto& pair : components) nets.push_back(dc_to_relu(pair, box, options));
  return nets;
}

}  // namespace relupwa
