#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "zslen/group.hpp"
#include "zslen/options.hpp"

namespace zslen::detail {

inline constexpr std::size_t kMaxEngineOrder = 64;

/// Subsets of a group of order <= 64 as 64-bit masks, with a byte-sliced
/// lookup table for translating a mask by a fixed element.
class SumTable {
 public:
  explicit SumTable(const AbelianGroup& g) : group_(g), n_(g.order()) {
    if (n_ > kMaxEngineOrder)
      throw GroupTooLarge("enumeration engines support groups of order <= 64, got " + std::to_string(n_));
    slices_ = (n_ + 7) / 8;
    table_.assign(n_ * slices_ * 256, 0);
    for (std::size_t h = 0; h < n_; ++h)
      for (std::size_t s = 0; s < slices_; ++s)
        for (std::size_t v = 0; v < 256; ++v) {
          std::uint64_t out = 0;
          for (std::size_t b = 0; b < 8; ++b) {
            std::size_t x = s * 8 + b;
            if ((v >> b & 1) && x < n_) out |= bit(g.add_id(static_cast<ElemId>(x), static_cast<ElemId>(h)));
          }
          table_[(h * slices_ + s) * 256 + v] = out;
        }
  }

  static std::uint64_t bit(ElemId x) { return std::uint64_t{1} << x; }

  /// { x + h : x in mask }.
  std::uint64_t translate(std::uint64_t mask, ElemId h) const {
    std::uint64_t out = 0;
    const std::uint64_t* row = &table_[static_cast<std::size_t>(h) * slices_ * 256];
    for (std::size_t s = 0; s < slices_ && mask; ++s, mask >>= 8) out |= row[s * 256 + (mask & 0xff)];
    return out;
  }

  /// Subset sums after appending h to a sequence whose nonempty-subsequence
  /// sums are `mask`.
  std::uint64_t extend(std::uint64_t mask, ElemId h) const { return mask | translate(mask, h) | bit(h); }

  const AbelianGroup& group() const { return group_; }
  std::size_t order() const { return n_; }

 private:
  AbelianGroup group_;
  std::size_t n_;
  std::size_t slices_ = 1;
  std::vector<std::uint64_t> table_;
};

}  // namespace zslen::detail
