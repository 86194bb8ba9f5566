#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zslen/group.hpp"

namespace zslen {

class SequenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite multiset of group elements, stored as a dense multiplicity
/// vector indexed by ElemId. The empty sequence is the monoid identity.
class Sequence {
 public:
  Sequence() : counts_(1, 0) {}
  explicit Sequence(AbelianGroup g) : group_(std::move(g)), counts_(group_.order(), 0) {}
  Sequence(AbelianGroup g, std::vector<std::uint32_t> counts) : group_(std::move(g)), counts_(std::move(counts)) {
    if (counts_.size() != group_.order()) throw SequenceError("multiplicity vector does not match group order");
    for (auto c : counts_) length_ += c;
  }

  static Sequence from_ids(const AbelianGroup& g, std::span<const ElemId> ids) {
    Sequence s(g);
    for (ElemId id : ids) s.insert(id);
    return s;
  }
  static Sequence from_elements(const AbelianGroup& g, std::span<const GroupElement> elems) {
    Sequence s(g);
    for (const auto& e : elems) s.insert(g.id_of(e));
    return s;
  }

  const AbelianGroup& group() const { return group_; }
  std::span<const std::uint32_t> counts() const { return counts_; }
  std::uint32_t count(ElemId id) const { return counts_[id]; }
  std::uint32_t multiplicity(const GroupElement& g) const { return counts_[group_.id_of(g)]; }
  std::size_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  void insert(ElemId id, std::uint32_t mult = 1) {
    if (id >= counts_.size()) throw SequenceError("element index out of range");
    counts_[id] += mult;
    length_ += mult;
  }
  void insert(const GroupElement& g, std::uint32_t mult = 1) { insert(group_.id_of(g), mult); }

  std::vector<ElemId> support() const {
    std::vector<ElemId> out;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i]) out.push_back(static_cast<ElemId>(i));
    return out;
  }

  /// Elements with repetition in ascending order.
  std::vector<ElemId> expanded() const {
    std::vector<ElemId> out;
    out.reserve(length_);
    for (std::size_t i = 0; i < counts_.size(); ++i)
      out.insert(out.end(), counts_[i], static_cast<ElemId>(i));
    return out;
  }

  /// Canonical total order: by length, then lexicographically on the
  /// ascending element lists.
  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    std::size_t i = 0, j = 0;
    std::uint32_t ra = 0, rb = 0;
    std::size_t n = a.counts_.size();
    auto advance = [n](const std::vector<std::uint32_t>& cs, std::size_t& k, std::uint32_t& r) {
      while (k < n && r >= cs[k]) {
        ++k;
        r = 0;
      }
    };
    for (std::size_t step = 0; step < a.length_; ++step) {
      advance(a.counts_, i, ra);
      advance(b.counts_, j, rb);
      if (i != j) return i <=> j;
      ++ra;
      ++rb;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.length_ == b.length_ && a.counts_ == b.counts_;
  }

 private:
  AbelianGroup group_;
  std::vector<std::uint32_t> counts_;
  std::size_t length_ = 0;
};

namespace detail {
inline void require_same_group(const Sequence& a, const Sequence& b) {
  if (!(a.group() == b.group())) throw SequenceError("sequences over different groups");
}
}  // namespace detail

/// Sum of all terms.
inline GroupElement sigma(const Sequence& s) {
  const auto& g = s.group();
  ElemId acc = g.zero_id();
  for (std::size_t i = 0; i < s.counts().size(); ++i)
    if (s.counts()[i]) acc = g.add_id(acc, g.scale_id(static_cast<ElemId>(i), s.counts()[i]));
  return g.element(acc);
}

inline ElemId sigma_id(const Sequence& s) { return s.group().id_of(sigma(s)); }

inline bool is_zero_sum(const Sequence& s) { return sigma_id(s) == s.group().zero_id(); }

/// True when no nonempty subsequence sums to zero. Reachable-subset-sum
/// dynamic programme, O(|S| * |G|).
inline bool is_zero_sum_free(const Sequence& s) {
  const auto& g = s.group();
  if (s.count(g.zero_id())) return false;
  std::vector<char> reach(g.order(), 0), next;
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    ElemId h = static_cast<ElemId>(i);
    std::uint32_t c = s.counts()[i];
    if (!c) continue;
    if (c >= static_cast<std::uint32_t>(g.order_of(h))) return false;
    for (std::uint32_t k = 0; k < c; ++k) {
      next = reach;
      next[h] = 1;
      for (std::size_t x = 0; x < reach.size(); ++x)
        if (reach[x]) next[g.add_id(static_cast<ElemId>(x), h)] = 1;
      if (next[g.zero_id()]) return false;
      reach.swap(next);
    }
  }
  return true;
}

/// Multiset divisibility: every multiplicity of s is at most that of t.
inline bool divides(const Sequence& s, const Sequence& t) {
  detail::require_same_group(s, t);
  for (std::size_t i = 0; i < s.counts().size(); ++i)
    if (s.counts()[i] > t.counts()[i]) return false;
  return true;
}

/// t / s; requires divides(s, t).
inline Sequence quotient(const Sequence& t, const Sequence& s) {
  if (!divides(s, t)) throw SequenceError("quotient: divisor does not divide the sequence");
  std::vector<std::uint32_t> c(t.counts().begin(), t.counts().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= s.counts()[i];
  return Sequence(t.group(), std::move(c));
}

inline Sequence product(const Sequence& s, const Sequence& t) {
  detail::require_same_group(s, t);
  std::vector<std::uint32_t> c(s.counts().begin(), s.counts().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += t.counts()[i];
  return Sequence(s.group(), std::move(c));
}

inline Sequence power(const Sequence& s, std::uint32_t k) {
  std::vector<std::uint32_t> c(s.counts().begin(), s.counts().end());
  for (auto& x : c) x *= k;
  return Sequence(s.group(), std::move(c));
}

/// Maps every term g to -g.
inline Sequence negate(const Sequence& s) {
  const auto& g = s.group();
  std::vector<std::uint32_t> c(s.counts().size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[g.neg_id(static_cast<ElemId>(i))] = s.counts()[i];
  return Sequence(g, std::move(c));
}

/// "(0,1)^3 (1,0) (1,1)": terms in ascending element order.
inline std::string format_sequence(const Sequence& s) {
  std::string out;
  const auto& g = s.group();
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    std::uint32_t c = s.counts()[i];
    if (!c) continue;
    if (!out.empty()) out += ' ';
    out += g.format_element(static_cast<ElemId>(i));
    if (c > 1) out += "^" + std::to_string(c);
  }
  return out;
}

inline Sequence parse_sequence(const AbelianGroup& g, std::string_view text) {
  Sequence s(g);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw SequenceError("malformed sequence near '" + std::string(text.substr(i)) + "'");
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw SequenceError("unterminated element literal in sequence");
    GroupElement e;
    try {
      e = parse_element(g, text.substr(i, close - i + 1));
    } catch (const GroupError& err) {
      throw SequenceError(err.what());
    }
    i = close + 1;
    std::uint32_t mult = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      bool neg = i < text.size() && text[i] == '-';
      if (neg) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string digits(text.substr(start, i - start));
      if (digits.empty() || digits == "-" || digits.size() > 9) throw SequenceError("malformed multiplicity in sequence");
      long long m = std::stoll(digits);
      if (m <= 0) throw SequenceError("multiplicity must be positive, got " + digits);
      mult = static_cast<std::uint32_t>(m);
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      throw SequenceError("terms must be separated by whitespace");
    s.insert(g.id_of(e), mult);
    skip_ws();
  }
  return s;
}

}  // namespace zslen
