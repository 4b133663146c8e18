#pragma once

// Brute-force reference computations, written without the library so that the
// frozen expected values in the tests do not depend on the code under test.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Forward pass of the 1 -> 2 -> 2 -> 1 example net, spelled out by hand.
inline double example_net(double x) {
  const double h11 = std::max(-1.5 * x + 3.0, 0.0);
  const double h12 = std::max(2.0 * x - 2.0, 0.0);
  const double h21 = std::max(-1.0 * h11 - 1.0 * h12 + 1.0, 0.0);
  const double h22 = std::max(0.5 * h11 - 1.0 * h12 + 2.0, 0.0);
  return h21 - h22;
}

struct Segment {
  double lo, hi, slope, intercept;
};

// Dense-grid finite-difference reconstruction of a continuous 1-D PWA function
// on [lo, hi]: cell slopes, merged where they agree, kinks refined by
// intersecting the neighbouring lines.
inline std::vector<Segment> grid_pwa(const std::function<double(double)>& f, double lo, double hi,
                                     int n = 10000) {
  const double h = (hi - lo) / n;
  std::vector<Segment> segs;
  for (int k = 0; k < n; ++k) {
    const double a = lo + k * h, b = a + h;
    const double s = (f(b) - f(a)) / h;
    const double c = f(a) - s * a;
    if (!segs.empty() && std::abs(segs.back().slope - s) < 1e-6 && std::abs(segs.back().intercept - c) < 1e-6) {
      segs.back().hi = b;
    } else {
      segs.push_back({a, b, s, c});
    }
  }
  // Cells straddling a kink produce short spurious segments; drop them and
  // place the kink where the neighbouring lines meet.
  std::vector<Segment> clean;
  for (const auto& s : segs)
    if (s.hi - s.lo > 1.5 * h) clean.push_back(s);
  for (std::size_t i = 0; i + 1 < clean.size(); ++i) {
    const double x = (clean[i + 1].intercept - clean[i].intercept) / (clean[i].slope - clean[i + 1].slope);
    clean[i].hi = x;
    clean[i + 1].lo = x;
  }
  if (!clean.empty()) {
    clean.front().lo = lo;
    clean.back().hi = hi;
  }
  return clean;
}

// Number of distinct sign vectors of a_i . x + b_i over random points of [-r, r]^2.
inline std::size_t monte_carlo_cells(const std::vector<std::array<double, 3>>& lines, double r,
                                     std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r, r);
  std::set<std::string> seen;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = u(rng), y = u(rng);
    std::string key;
    for (const auto& l : lines) key += l[0] * x + l[1] * y + l[2] > 0 ? '1' : '0';
    seen.insert(key);
  }
  return seen.size();
}

inline unsigned long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  return r;
}

// Upper bound by scanning every tuple in [0, max width]^L and keeping those in J.
inline unsigned long long upper_bound_scan(int n0, const std::vector<int>& widths) {
  const int L = static_cast<int>(widths.size());
  const int top = *std::max_element(widths.begin(), widths.end());
  std::vector<int> j(static_cast<std::size_t>(L), 0);
  unsigned long long total = 0;
  while (true) {
    bool in_j = true;
    for (int l = 0; l < L && in_j; ++l) {
      int cap = std::min(n0, widths[static_cast<std::size_t>(l)]);
      for (int k = 0; k < l; ++k) cap = std::min(cap, widths[static_cast<std::size_t>(k)] - j[static_cast<std::size_t>(k)]);
      in_j = j[static_cast<std::size_t>(l)] >= 0 && j[static_cast<std::size_t>(l)] <= cap;
    }
    if (in_j) {
      unsigned long long prod = 1;
      for (int l = 0; l < L; ++l) prod *= choose(widths[static_cast<std::size_t>(l)], j[static_cast<std::size_t>(l)]);
      total += prod;
    }
    int pos = 0;
    while (pos < L && ++j[static_cast<std::size_t>(pos)] > top) j[static_cast<std::size_t>(pos++)] = 0;
    if (pos == L) break;
  }
  return total;
}

inline unsigned long long lower_bound_direct(int n0, const std::vector<int>& widths) {
  unsigned long long prod = 1;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    unsigned long long f = static_cast<unsigned long long>(widths[l] / n0);
    for (int k = 0; k < n0; ++k) prod *= f;
  }
  unsigned long long sum = 0;
  for (int j = 0; j <= n0; ++j) sum += choose(widths.back(), j);
  return prod * sum;
}

// max_i (s_i x + c_i) for a scalar input.
inline double max_affine_1d(const std::vector<std::pair<double, double>>& pieces, double x) {
  double m = -INFINITY;
  for (const auto& [s, c] : pieces) m = std::max(m, s * x + c);
  return m;
}

}  // namespace oracle
