#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relupwa {

using BigInt = boost::multiprecision::cpp_int;

/// Input dimension and hidden widths of a rectifier net.
struct Architecture {
  int input_dim = 0;
  std::vector<int> widths;

  /// Parses "n0:n1,n2,...,nL".
  static Architecture parse(const std::string& text);
  std::string to_string() const;

  /// n_l >= n_0 for every hidden layer.
  bool meets_width_hypothesis() const;
};

BigInt binomial(int n, int k);

/// Lower bound on the maximal number of linear regions:
///   prod_{l<L} floor(n_l / n_0)^{n_0} * sum_{j=0}^{n_0} C(n_L, j).
/// Throws HypothesisError unless every n_l >= n_0.
BigInt lower_bound(const Architecture& arch);

/// Upper bound on the maximal number of linear regions:
///   sum over (j_1..j_L) in J of prod_l C(n_l, j_l),
/// J = {0 <= j_l <= min(n_0, n_1 - j_1, ..., n_{l-1} - j_{l-1}, n_l)}.
/// Throws HypothesisError unless every n_l >= n_0.
BigInt upper_bound(const Architecture& arch);

/// 2^N with N the total number of hidden units.
BigInt naive_bound(const Architecture& arch);

}  // namespace relupwa
