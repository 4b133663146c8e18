#include "relupwa/sampling.hpp"

#include <cmath>
#include <random>

#include "relupwa/errors.hpp"

namespace relupwa {

namespace {
constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
}

Eigen::VectorXd halton_point(std::uint64_t index, Eigen::Index dim) {
  if (dim > static_cast<Eigen::Index>(std::size(kPrimes)))
    throw DimensionError("halton_point: dimension too large");
  Eigen::VectorXd p(dim);
  for (Eigen::Index d = 0; d < dim; ++d) {
    const unsigned base = kPrimes[d];
    double f = 1.0, r = 0.0;
    for (std::uint64_t i = index; i > 0; i /= base) {
      f /= base;
      r += f * static_cast<double>(i % base);
    }
    p[d] = r;
  }
  return p;
}

std::vector<Eigen::VectorXd> box_samples(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                         std::size_t n, std::uint64_t seed) {
  if (lo.size() != hi.size()) throw DimensionError("box_samples: bound lengths differ");
  const Eigen::Index dim = lo.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd shift(dim);
  for (Eigen::Index d = 0; d < dim; ++d) shift[d] = unit(rng);
  const Eigen::ArrayXd width = (hi - lo).array();

  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  std::uint64_t halton_index = 1;
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::ArrayXd t(dim);
    if (k % 2 == 0) {
      t = halton_point(halton_index++, dim).array() + shift.array();
      t -= t.floor();
    } else {
      for (Eigen::Index d = 0; d < dim; ++d) t[d] = unit(rng);
    }
    out.emplace_back((lo.array() + t * width).matrix());
  }
  return out;
}

}  // namespace relupwa
