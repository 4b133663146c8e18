#pragma once

#include <vector>

#include "relupwa/polyhedron.hpp"
#include "relupwa/pwa.hpp"
#include "relupwa/relu_net.hpp"

namespace relupwa {

struct SynthesisOptions {
  /// Skip pieces that never attain the max on the box (depth drops below N).
  bool prune_inactive = false;
  /// With pruning, append identity-carry layers until depth equals the piece count.
  bool pad_to_piece_count = false;
};

/// Net of hidden width n0 + 1 and depth N equal to the max-affine function g on
/// the bounded axis-aligned `box`.
///
/// Every hidden layer carries the shifted input x - lo through n0 rectifiers
/// (exact because x >= lo on the box) and one unit holding the running max:
///   layer 1:  t_1 = rect(g_1(x) - floor),    m_1 = t_1 + floor
///   layer k:  t_k = rect(m_{k-1} - g_k(x)),  m_k = t_k + g_k(x) = max(m_{k-1}, g_k(x))
/// where floor is the minimum of g_1 over the box. Outside the box the net and
/// g may differ.
ReluNet maxaffine_to_relu(const MaxAffine& g, const Polyhedron& box, const SynthesisOptions& options = {});

/// Parallel composition of the gamma and eta nets (shallower one padded with
/// identity-carry layers) with output gamma - eta.
ReluNet dc_to_relu(const DcPair& pair, const Polyhedron& box, const SynthesisOptions& options = {});

/// One dc_to_relu net per output component.
std::vector<ReluNet> vector_policy_nets(const std::vector<DcPair>& components, const Polyhedron& box,
                                        const SynthesisOptions& options = {});

}  // namespace relupwa
