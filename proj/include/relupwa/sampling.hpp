#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace relupwa {

/// Radical-inverse (Halton) point with the given index, coordinates in [0, 1).
Eigen::VectorXd halton_point(std::uint64_t index, Eigen::Index dim);

/// n points in [lo, hi]: even slots from a seed-shifted Halton sequence, odd
/// slots uniform pseudo-random from the same seed. Deterministic in the seed.
std::vector<Eigen::VectorXd> box_samples(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                         std::size_t n, std::uint64_t seed);

}  // namespace relupwa
