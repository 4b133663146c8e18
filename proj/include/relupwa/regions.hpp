#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relupwa/polyhedron.hpp"
#include "relupwa/pwa.hpp"
#include "relupwa/relu_net.hpp"

namespace relupwa {

/// One linear region of a net: its activation pattern, the affine map the net
/// realizes there, an interior witness point and (exact mode) the H-rep region.
struct RegionRecord {
  ActivationPattern pattern;
  std::optional<Polyhedron> region;
  LocalAffine map;
  Eigen::VectorXd witness;
};

inline constexpr std::size_t kDefaultRegionCap = 1'000'000;

struct EnumerationOptions {
  double r_min = kDefaultMinRadius;
  std::size_t region_cap = kDefaultRegionCap;
};

/// Distinct activation patterns seen on n_samples points of an axis-aligned box,
/// sorted by pattern key. Records carry no region.
std::vector<RegionRecord> sample_identify(const ReluNet& net, const Polyhedron& box,
                                          std::size_t n_samples, std::uint64_t seed);

/// Closed region of the box on which the net follows `pattern`.
Polyhedron pattern_region(const ReluNet& net, const ActivationPattern& pattern, const Polyhedron& box);

/// Fills in the region of every record via pattern_region.
void attach_regions(std::vector<RegionRecord>& records, const ReluNet& net, const Polyhedron& box);

/// Exact linear regions inside `box` by layer-wise hyperplane splitting. Parts
/// whose inscribed radius is at most r_min are dropped. Sorted by pattern key.
/// Throws RegionCapExceeded when the running region count passes the cap.
std::vector<RegionRecord> enumerate_exact(const ReluNet& net, const Polyhedron& box,
                                          const EnumerationOptions& options = {});

/// PWA function on `box` from records that carry regions.
PwaFunction to_pwa(const std::vector<RegionRecord>& records, const Polyhedron& box);

inline std::size_t count_regions(const std::vector<RegionRecord>& records) { return records.size(); }

/// Net computing the single unit h_{layer,unit} (both 1-based).
ReluNet truncate_to_unit(const ReluNet& net, std::size_t layer, std::size_t unit);

/// x -> h_{layer,unit}(x) as a PWA function on `box` (1-based indices).
PwaFunction unit_pwa(const ReluNet& net, std::size_t layer, std::size_t unit, const Polyhedron& box,
                     const EnumerationOptions& options = {});

}  // namespace relupwa
