#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "zslen/length_set.hpp"

namespace zslen {

/// L = y + (L' u L* u L'') inside y + D + dZ, with L* = (D + dZ) n [0, max L*],
/// L' in [-M, -1] and L'' in max L* + [1, M]. The parts are stored relative
/// to y; `bound` is the smallest M this decomposition needs.
struct AampWitness {
  int y = 0;
  int d = 1;
  std::vector<int> period;
  int bound = 0;
  std::vector<int> lower;
  std::vector<int> central;
  std::vector<int> upper;
};

/// The decomposition of L as an AAMP with difference d that needs the
/// smallest bound (ties: smallest y, then longest central part).
inline AampWitness min_aamp_bound(const LengthSet& l, int d) {
  if (l.empty()) throw std::invalid_argument("AAMP test on an empty set");
  if (d < 1) throw std::invalid_argument("AAMP difference must be >= 1");
  std::optional<AampWitness> best;
  const auto& v = l.values();
  auto mod = [d](int x) { return ((x % d) + d) % d; };
  // y lies in L because min L* = 0.
  for (int y : v) {
    std::vector<char> residue(static_cast<std::size_t>(d), 0);
    residue[0] = 1;
    for (int x : v) residue[static_cast<std::size_t>(mod(x - y))] = 1;
    // L* = [0, t] n (residues + dZ) must lie in L - y; extend t as far as possible.
    std::vector<int> above;
    for (int x : v)
      if (x >= y) above.push_back(x - y);
    int lowest = v.front() - y;
    for (std::size_t k = 0; k < above.size(); ++k) {
      int t = above[k];
      if (k > 0) {
        bool full = true;
        for (int z = above[k - 1] + 1; z < t && full; ++z)
          if (residue[static_cast<std::size_t>(mod(z))]) full = false;
        if (!full) break;
      }
      int m = std::max(lowest < 0 ? -lowest : 0, above.back() - t);
      if (!best || m < best->bound || (m == best->bound && best->y == y)) {
        AampWitness w;
        w.y = y;
        w.d = d;
        for (int r = 0; r < d; ++r)
          if (residue[static_cast<std::size_t>(r)]) w.period.push_back(r);
        w.period.push_back(d);
        w.bound = m;
        for (int x : v) {
          int z = x - y;
          (z < 0 ? w.lower : z <= t ? w.central : w.upper).push_back(z);
        }
        best = std::move(w);
      }
    }
  }
  return *best;
}

/// A decomposition of L as an AAMP with difference d and bound M, if any.
inline std::optional<AampWitness> is_aamp(const LengthSet& l, int d, int bound) {
  if (bound < 0) throw std::invalid_argument("AAMP bound must be >= 0");
  AampWitness w = min_aamp_bound(l, d);
  if (w.bound > bound) return std::nullopt;
  return w;
}

}  // namespace zslen
