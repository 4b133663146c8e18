#include "relupwa/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "relupwa/errors.hpp"

namespace relupwa {

Architecture Architecture::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("architecture must look like n0:n1,...,nL");
  Architecture arch;
  try {
    std::size_t used = 0;
    arch.input_dim = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw UsageError("bad input dimension in '" + text + "'");
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      arch.widths.push_back(std::stoi(item, &used));
      if (used != item.size()) throw UsageError("bad width '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw UsageError("architecture must look like n0:n1,...,nL, got '" + text + "'");
  }
  if (arch.input_dim <= 0 || arch.widths.empty() ||
      std::any_of(arch.widths.begin(), arch.widths.end(), [](int w) { return w <= 0; }))
    throw UsageError("architecture needs n0 >= 1 and at least one positive width");
  return arch;
}

std::string Architecture::to_string() const {
  std::string s = std::to_string(input_dim) + ":";
  for (std::size_t l = 0; l < widths.size(); ++l) s += (l ? "," : "") + std::to_string(widths[l]);
  return s;
}

bool Architecture::meets_width_hypothesis() const {
  return input_dim > 0 && !widths.empty() &&
         std::all_of(widths.begin(), widths.end(), [&](int w) { return w >= input_dim; });
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void require_hypothesis(const Architecture& arch) {
  if (!arch.meets_width_hypothesis())
    throw HypothesisError("hypothesis not met: bound requires every width n_l >= n_0 = " +
                          std::to_string(arch.input_dim) + " (architecture " + arch.to_string() +
                          ")");
}

// Depth-first walk over J; `cap` is the running min(n_0, n_1 - j_1, ...).
BigInt sum_over_j(const std::vector<int>& widths, std::size_t l, int cap) {
  if (l == widths.size()) return 1;
  BigInt total = 0;
  const int n = widths[l];
  for (int j = 0; j <= std::min(cap, n); ++j)
    total += binomial(n, j) * sum_over_j(widths, l + 1, std::min(cap, n - j));
  return total;
}

}  // namespace

BigInt lower_bound(const Architecture& arch) {
  require_hypothesis(arch);
  const int n0 = arch.input_dim;
  BigInt product = 1;
  for (std::size_t l = 0; l + 1 < arch.widths.size(); ++l)
    product *= boost::multiprecision::pow(BigInt(arch.widths[l] / n0), static_cast<unsigned>(n0));
  BigInt sum = 0;
  for (int j = 0; j <= n0; ++j) sum += binomial(arch.widths.back(), j);
  return product * sum;
}

BigInt upper_bound(const Architecture& arch) {
  require_hypothesis(arch);
  return sum_over_j(arch.widths, 0, arch.input_dim);
}

BigInt naive_bound(const Architecture& arch) {
  unsigned total = 0;
  for (int w : arch.widths) total += static_cast<unsigned>(w);
  return boost::multiprecision::pow(BigInt(2), total);
}

}  // namespace relupwa
