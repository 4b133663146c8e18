#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relupwa/errors.hpp"

namespace relupwa {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Affine stage x -> W x + b of a feedforward net.
template <typename Scalar>
struct BasicLayer {
  MatrixX<Scalar> W;
  VectorX<Scalar> b;

  Eigen::Index in_dim() const { return W.cols(); }
  Eigen::Index out_dim() const { return W.rows(); }
};

/// Rectifier feedforward network
///   h_0 = x,  h_l = max(W_l h_{l-1} + b_l, 0)  (l = 1..L),  y = W_out h_L + b_out.
///
/// The output stage is a plain affine map; its bias defaults to zero.
/// Instances are immutable once constructed and every accessor is a pure read.
template <typename Scalar>
class BasicReluNet {
 public:
  using Layer = BasicLayer<Scalar>;

  BasicReluNet(Eigen::Index input_dim, std::vector<Layer> hidden, Layer output)
      : input_dim_(input_dim), hidden_(std::move(hidden)), output_(std::move(output)) {
    if (input_dim_ <= 0) throw DimensionError("input_dim must be positive");
    if (hidden_.empty()) throw DimensionError("a net needs at least one hidden layer");
    if (output_.b.size() == 0) output_.b = VectorX<Scalar>::Zero(output_.W.rows());
    Eigen::Index prev = input_dim_;
    for (std::size_t l = 0; l < hidden_.size(); ++l) {
      check_layer(hidden_[l], prev, "hidden layer " + std::to_string(l + 1));
      prev = hidden_[l].out_dim();
    }
    check_layer(output_, prev, "output layer");
  }

  Eigen::Index input_dim() const { return input_dim_; }
  Eigen::Index output_dim() const { return output_.out_dim(); }
  std::size_t depth() const { return hidden_.size(); }
  const std::vector<Layer>& hidden() const { return hidden_; }
  const Layer& hidden(std::size_t l) const { return hidden_.at(l); }
  const Layer& output() const { return output_; }

  std::vector<Eigen::Index> widths() const {
    std::vector<Eigen::Index> w;
    w.reserve(hidden_.size());
    for (const auto& layer : hidden_) w.push_back(layer.out_dim());
    return w;
  }

  Eigen::Index total_units() const {
    Eigen::Index n = 0;
    for (const auto& layer : hidden_) n += layer.out_dim();
    return n;
  }

 private:
  static void check_layer(const Layer& layer, Eigen::Index in_dim, const std::string& name) {
    if (layer.W.rows() == 0) throw DimensionError(name + " has zero width");
    if (layer.W.cols() != in_dim)
      throw DimensionError(name + " expects " + std::to_string(layer.W.cols()) +
                           " inputs but receives " + std::to_string(in_dim));
    if (layer.b.size() != layer.W.rows())
      throw DimensionError(name + " bias length " + std::to_string(layer.b.size()) +
                           " != row count " + std::to_string(layer.W.rows()));
    if (!layer.W.allFinite() || !layer.b.allFinite())
      throw DimensionError(name + " has non-finite entries");
  }

  Eigen::Index input_dim_;
  std::vector<Layer> hidden_;
  Layer output_;
};

/// Per-layer indicator bits; bit (l, j) is 1 iff unit j of hidden layer l is active.
struct ActivationPattern {
  std::vector<std::vector<std::uint8_t>> bits;

  std::size_t depth() const { return bits.size(); }

  /// Canonical text key, e.g. "10|01".
  std::string key() const {
    std::string k;
    for (std::size_t l = 0; l < bits.size(); ++l) {
      if (l) k += '|';
      for (auto bit : bits[l]) k += bit ? '1' : '0';
    }
    return k;
  }

  friend auto operator<=>(const ActivationPattern&, const ActivationPattern&) = default;
  friend bool operator==(const ActivationPattern&, const ActivationPattern&) = default;
};

/// x -> u x + c, with one row of u per output.
template <typename Scalar>
struct BasicLocalAffine {
  MatrixX<Scalar> u;
  VectorX<Scalar> c;

  VectorX<Scalar> operator()(const VectorX<Scalar>& x) const { return u * x + c; }
};

/// How a pre-activation of exactly zero is labelled.
enum class TieRule { Inactive, Active };

using Layer = BasicLayer<double>;
using ReluNet = BasicReluNet<double>;
using LocalAffine = BasicLocalAffine<double>;

namespace detail {
template <typename Scalar>
void check_input(const BasicReluNet<Scalar>& net, const VectorX<Scalar>& x) {
  if (x.size() != net.input_dim())
    throw DimensionError("input has dimension " + std::to_string(x.size()) + ", net expects " +
                         std::to_string(net.input_dim()));
}
}  // namespace detail

template <typename Scalar>
std::vector<VectorX<Scalar>> pre_activations(const BasicReluNet<Scalar>& net,
                                             const VectorX<Scalar>& x) {
  detail::check_input(net, x);
  std::vector<VectorX<Scalar>> pre;
  pre.reserve(net.depth());
  VectorX<Scalar> h = x;
  for (const auto& layer : net.hidden()) {
    pre.push_back(layer.W * h + layer.b);
    h = pre.back().cwiseMax(Scalar(0));
  }
  return pre;
}

template <typename Scalar>
VectorX<Scalar> eval_net(const BasicReluNet<Scalar>& net, const VectorX<Scalar>& x) {
  detail::check_input(net, x);
  VectorX<Scalar> h = x;
  for (const auto& layer : net.hidden()) h = (layer.W * h + layer.b).cwiseMax(Scalar(0));
  return net.output().W * h + net.output().b;
}

template <typename Scalar>
ActivationPattern activation_pattern(const BasicReluNet<Scalar>& net, const VectorX<Scalar>& x,
                                     TieRule ties = TieRule::Inactive) {
  ActivationPattern p;
  for (const auto& f : pre_activations(net, x)) {
    std::vector<std::uint8_t> layer(static_cast<std::size_t>(f.size()));
    for (Eigen::Index j = 0; j < f.size(); ++j)
      layer[static_cast<std::size_t>(j)] =
          f[j] > Scalar(0) || (ties == TieRule::Active && f[j] == Scalar(0));
    p.bits.push_back(std::move(layer));
  }
  return p;
}

/// Affine map realized by the net when every unit follows `pattern`:
///   u = W_out D_L W_L ... D_1 W_1,  c = sum_l W_out D_L W_L ... D_l b_l + b_out.
template <typename Scalar>
BasicLocalAffine<Scalar> pattern_affine(const BasicReluNet<Scalar>& net,
                                        const ActivationPattern& pattern) {
  if (pattern.depth() != net.depth())
    throw DimensionError("pattern depth " + std::to_string(pattern.depth()) + " != net depth " +
                         std::to_string(net.depth()));
  MatrixX<Scalar> u = MatrixX<Scalar>::Identity(net.input_dim(), net.input_dim());
  VectorX<Scalar> c = VectorX<Scalar>::Zero(net.input_dim());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& layer = net.hidden(l);
    const auto& bits = pattern.bits[l];
    if (static_cast<Eigen::Index>(bits.size()) != layer.out_dim())
      throw DimensionError("pattern width mismatch at hidden layer " + std::to_string(l + 1));
    MatrixX<Scalar> nu = layer.W * u;
    VectorX<Scalar> nc = layer.W * c + layer.b;
    for (Eigen::Index j = 0; j < layer.out_dim(); ++j) {
      if (!bits[static_cast<std::size_t>(j)]) {
        nu.row(j).setZero();
        nc[j] = Scalar(0);
      }
    }
    u = std::move(nu);
    c = std::move(nc);
  }
  return {net.output().W * u, net.output().W * c + net.output().b};
}

template <typename Scalar>
BasicLocalAffine<Scalar> local_affine(const BasicReluNet<Scalar>& net, const VectorX<Scalar>& x) {
  return pattern_affine(net, activation_pattern(net, x));
}

/// Number of weights and biases; the output bias counts only when nonzero.
template <typename Scalar>
std::size_t param_count(const BasicReluNet<Scalar>& net) {
  std::size_t n = 0;
  for (const auto& layer : net.hidden())
    n += static_cast<std::size_t>(layer.W.size() + layer.b.size());
  n += static_cast<std::size_t>(net.output().W.size());
  if (!net.output().b.isZero(0)) n += static_cast<std::size_t>(net.output().b.size());
  return n;
}

/// Lipschitz constant of the net in the infinity norm, from the product of
/// row-sum norms of every weight matrix (the rectifier is 1-Lipschitz).
template <typename Scalar>
Scalar lipschitz_bound(const BasicReluNet<Scalar>& net) {
  Scalar k(1);
  for (const auto& layer : net.hidden()) k *= layer.W.cwiseAbs().rowwise().sum().maxCoeff();
  return k * net.output().W.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace relupwa
