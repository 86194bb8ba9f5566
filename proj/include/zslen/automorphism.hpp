#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zslen/group.hpp"

namespace zslen {

/// An automorphism as a permutation of element ids.
using Automorphism = std::vector<ElemId>;

inline constexpr std::uint64_t kDefaultAutomorphismSearchCap = 4'000'000;

/// All automorphisms of G, or nullopt when the candidate space
/// (images of the standard generators) exceeds `cap`. The identity comes first.
inline std::optional<std::vector<Automorphism>> automorphisms(const AbelianGroup& g,
                                                              std::uint64_t cap = kDefaultAutomorphismSearchCap) {
  const int r = g.rank();
  const std::size_t n = g.order();
  std::vector<std::vector<ElemId>> candidates(static_cast<std::size_t>(r));
  std::uint64_t space = 1;
  for (int i = 0; i < r; ++i) {
    int ni = g.factors()[i];
    for (std::size_t x = 0; x < n; ++x)
      if (ni % g.order_of(static_cast<ElemId>(x)) == 0) candidates[i].push_back(static_cast<ElemId>(x));
    space *= candidates[i].size();
    if (space * n > cap * 16) return std::nullopt;
  }
  if (space > cap) return std::nullopt;

  std::vector<Automorphism> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
  std::vector<char> seen(n);
  Automorphism image(n);
  while (true) {
    // image(x) = sum_i x_i * g_i, filled in id order: the last coordinate
    // varies fastest, so image(x) = image(x - e_last) + g_last when x_last > 0.
    bool ok = true;
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t x = 0; x < n && ok; ++x) {
      ElemId id = static_cast<ElemId>(x);
      ElemId y = g.zero_id();
      if (x != 0) {
        int i = r - 1;
        while (g.coord(id, i) == 0) --i;
        // predecessor differs only in coordinate i
        std::size_t stride = 1;
        for (int j = r - 1; j > i; --j) stride *= static_cast<std::size_t>(g.factors()[j]);
        ElemId prev = static_cast<ElemId>(x - stride);
        y = g.add_id(image[prev], candidates[i][pick[i]]);
      }
      if (seen[y]) ok = false;
      seen[y] = 1;
      image[x] = y;
    }
    if (ok) out.push_back(image);
    int i = r - 1;
    while (i >= 0 && ++pick[i] == candidates[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  // Identity has every generator mapped to itself; move it to the front.
  for (std::size_t k = 0; k < out.size(); ++k) {
    bool id = true;
    for (std::size_t x = 0; x < n && id; ++x) id = out[k][x] == x;
    if (id) {
      std::swap(out[0], out[k]);
      break;
    }
  }
  return out;
}

}  // namespace zslen
