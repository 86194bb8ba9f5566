#pragma once

#include <bitset>
#include <cstdint>
#include <cstring>
#include <vector>

namespace zslen::detail {

using LengthBits = std::bitset<128>;

/// Open-addressing map from fixed-size byte keys to LengthBits. Once it
/// holds `max_entries` entries the next insertion empties it.
class FlatMemo {
 public:
  FlatMemo(std::size_t key_size, std::size_t max_entries)
      : key_size_(key_size), max_entries_(max_entries < 16 ? 16 : max_entries) {
    allocate(1024);
  }

  static std::uint64_t hash(const std::uint8_t* key, std::size_t n) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
      std::uint64_t w;
      std::memcpy(&w, key + i, 8);
      h = (h ^ w) * 0xff51afd7ed558ccdull;
      h ^= h >> 32;
    }
    std::uint64_t tail = 0;
    std::memcpy(&tail, key + i, n - i);
    h = (h ^ tail) * 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 29;
    return h | 1;  // 0 marks an empty slot
  }

  const LengthBits* find(const std::uint8_t* key, std::uint64_t h) const {
    for (std::size_t s = h & mask_;; s = (s + 1) & mask_) {
      if (hashes_[s] == 0) return nullptr;
      if (hashes_[s] == h && std::memcmp(&keys_[s * key_size_], key, key_size_) == 0) return &values_[s];
    }
  }

  void insert(const std::uint8_t* key, std::uint64_t h, const LengthBits& v) {
    if (size_ >= max_entries_) clear();
    if (2 * (size_ + 1) > hashes_.size()) allocate(hashes_.size() * 2);
    place(key, h, v);
    ++size_;
  }

  void clear() {
    std::fill(hashes_.begin(), hashes_.end(), 0);
    size_ = 0;
  }

  std::size_t size() const { return size_; }

 private:
  void place(const std::uint8_t* key, std::uint64_t h, const LengthBits& v) {
    std::size_t s = h & mask_;
    while (hashes_[s] != 0) s = (s + 1) & mask_;
    hashes_[s] = h;
    std::memcpy(&keys_[s * key_size_], key, key_size_);
    values_[s] = v;
  }

  void allocate(std::size_t cap) {
    std::vector<std::uint64_t> old_h = std::move(hashes_);
    std::vector<std::uint8_t> old_k = std::move(keys_);
    std::vector<LengthBits> old_v = std::move(values_);
    hashes_.assign(cap, 0);
    keys_.assign(cap * key_size_, 0);
    values_.assign(cap, LengthBits{});
    mask_ = cap - 1;
    for (std::size_t s = 0; s < old_h.size(); ++s)
      if (old_h[s]) place(&old_k[s * key_size_], old_h[s], old_v[s]);
  }

  std::size_t key_size_;
  std::size_t max_entries_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint8_t> keys_;
  std::vector<LengthBits> values_;
};

}  // namespace zslen::detail
