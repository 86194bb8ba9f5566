#pragma once

#include <stdexcept>
#include <vector>

#include "zslen/length_set.hpp"

namespace zslen {

/// L + L' = { a + b }.
inline LengthSet sumset(const LengthSet& a, const LengthSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sumset of an empty set");
  std::vector<char> hit(static_cast<std::size_t>(a.max() + b.max() + 1), 0);
  for (int x : a.values())
    for (int y : b.values()) hit[static_cast<std::size_t>(x + y)] = 1;
  std::vector<int> out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) out.push_back(static_cast<int>(i));
  return LengthSet(std::move(out));
}

/// k-fold sumset L + ... + L.
inline LengthSet k_fold(const LengthSet& l, int k) {
  if (k < 1) throw std::invalid_argument("k_fold requires k >= 1");
  if (l.empty()) throw std::invalid_argument("k_fold of an empty set");
  LengthSet acc = l;
  for (int i = 1; i < k; ++i) acc = sumset(acc, l);
  return acc;
}

/// k . L = { k a }.
inline LengthSet dilate(const LengthSet& l, int k) {
  if (k < 1) throw std::invalid_argument("dilate requires k >= 1");
  if (l.empty()) throw std::invalid_argument("dilation of an empty set");
  std::vector<int> v;
  for (int x : l.values()) v.push_back(k * x);
  return LengthSet(std::move(v));
}

}  // namespace zslen
