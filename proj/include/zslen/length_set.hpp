#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zslen/group.hpp"

namespace zslen {

/// A finite set of non-negative integers, kept sorted and duplicate free.
class LengthSet {
 public:
  LengthSet() = default;
  LengthSet(std::initializer_list<int> values) : values_(values) { normalize(); }
  explicit LengthSet(std::vector<int> values) : values_(std::move(values)) { normalize(); }

  static LengthSet interval(int lo, int hi) {
    std::vector<int> v;
    for (int x = lo; x <= hi; ++x) v.push_back(x);
    return LengthSet(std::move(v));
  }

  const std::vector<int>& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  int min() const { return values_.empty() ? 0 : values_.front(); }
  int max() const { return values_.empty() ? 0 : values_.back(); }
  bool contains(int x) const { return std::binary_search(values_.begin(), values_.end(), x); }
  bool is_singleton() const { return values_.size() == 1; }

  LengthSet shifted(int by) const {
    std::vector<int> v = values_;
    for (auto& x : v) x += by;
    return LengthSet(std::move(v));
  }

  bool is_subset_of(const LengthSet& other) const {
    return std::includes(other.values_.begin(), other.values_.end(), values_.begin(), values_.end());
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(values_[i]);
    }
    return s + "}";
  }

  auto operator<=>(const LengthSet&) const = default;
  bool operator==(const LengthSet&) const = default;

 private:
  void normalize() {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (!values_.empty() && values_.front() < 0) throw std::invalid_argument("length sets hold non-negative integers");
  }
  std::vector<int> values_;
};

/// Successive gaps of the sorted values (the set of distances).
inline std::vector<int> delta_of_set(const LengthSet& l) {
  std::vector<int> d;
  const auto& v = l.values();
  for (std::size_t i = 1; i < v.size(); ++i) d.push_back(v[i] - v[i - 1]);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

/// "4,6,7" or "{4, 6, 7}".
inline LengthSet parse_length_set(std::string_view text) {
  std::string s = detail::trim(text);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw std::invalid_argument("unbalanced braces in length set '" + std::string(text) + "'");
    s = detail::trim(std::string_view(s).substr(1, s.size() - 2));
  }
  std::vector<int> v;
  if (s.empty()) return LengthSet{};
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string tok = detail::trim(std::string_view(s).substr(start, comma - start));
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("malformed length set '" + std::string(text) + "'");
    v.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return LengthSet(std::move(v));
}

}  // namespace zslen
