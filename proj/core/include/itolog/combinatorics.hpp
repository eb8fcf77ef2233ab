#pragma once

// Small enumeration helpers shared by the quasi-shuffle and surjection code.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace itolog {

/// Visits every strictly increasing k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Enumerates the quasi-shuffles of [n] and [m]: all value sequences
/// f(1..n+m) onto [t], max(n,m) <= t <= n+m, strictly increasing on the first
/// n and on the last m positions. Values passed to `visit` are 1-based.
///
/// For each t the left image A (|A| = n) is taken in lexicographic order; the
/// right image must contain [t] \ A and picks its remaining n+m-t values from A.
template <class Visit>
void for_each_quasi_shuffle(std::size_t n, std::size_t m, Visit&& visit) {
  std::vector<std::uint32_t> values(n + m);
  std::vector<std::uint32_t> left_image;
  std::vector<std::uint32_t> complement;
  std::vector<std::uint32_t> right_image;
  for (std::size_t t = std::max(n, m); t <= n + m; ++t) {
    const std::size_t shared = n + m - t;
    for_each_combination(t, n, [&](std::span<const std::size_t> a) {
      left_image.clear();
      complement.clear();
      std::size_t pos = 0;
      for (std::size_t v = 0; v < t; ++v) {
        if (pos < a.size() && a[pos] == v) {
          left_image.push_back(static_cast<std::uint32_t>(v + 1));
          ++pos;
        } else {
          complement.push_back(static_cast<std::uint32_t>(v + 1));
        }
      }
      for_each_combination(n, shared, [&](std::span<const std::size_t> pick) {
        right_image = complement;
        for (std::size_t p : pick) right_image.push_back(left_image[p]);
        std::sort(right_image.begin(), right_image.end());
        std::copy(left_image.begin(), left_image.end(), values.begin());
        std::copy(right_image.begin(), right_image.end(), values.begin() + static_cast<std::ptrdiff_t>(n));
        visit(std::span<const std::uint32_t>(values));
      });
    });
  }
}

}  // namespace itolog
