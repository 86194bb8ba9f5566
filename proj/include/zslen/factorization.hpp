#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/detail/flat_memo.hpp"
#include "zslen/detail/sum_table.hpp"
#include "zslen/length_set.hpp"
#include "zslen/options.hpp"
#include "zslen/sequence.hpp"
#include "zslen/union_find.hpp"

namespace zslen {

class NotZeroSum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooManyFactorizations : public std::runtime_error {
 public:
  explicit TooManyFactorizations(std::size_t cap)
      : std::runtime_error("more than " + std::to_string(cap) + " factorizations"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// A multiset of atoms, parts sorted non-increasingly in canonical order.
struct Factorization {
  std::vector<Sequence> parts;
  Sequence product;

  std::size_t length() const { return parts.size(); }
  bool operator==(const Factorization& o) const { return parts == o.parts; }
};

namespace detail {

inline LengthSet to_length_set(const LengthBits& bits, int offset) {
  std::vector<int> v;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v.push_back(static_cast<int>(i) + offset);
  return LengthSet(std::move(v));
}

}  // namespace detail

/// Memoized sets of lengths over one group.
///
/// For a zero-free zero-sum B with least element g, every factorization has
/// an atom through g, so L(B) = union over atoms A | B with g | A of
/// 1 + L(B / A). The candidate atoms are generated directly from B by the
/// zero-sum-free prefix search. Zeros split off: L(0^v B) = v + L(B).
/// Not thread safe; use one calculator per thread.
class LengthCalculator {
 public:
  explicit LengthCalculator(const AbelianGroup& g, std::size_t max_memo = 4'000'000)
      : table_(g), memo_(g.order(), max_memo), key_(g.order(), 0) {}

  const AbelianGroup& group() const { return table_.group(); }

  LengthSet operator()(const Sequence& b) {
    std::uint32_t zeros = 0;
    auto bits = compute(b, zeros);
    return detail::to_length_set(bits, static_cast<int>(zeros));
  }

  /// Bit i set iff i + (number of zeros in b) is a length.
  detail::LengthBits compute(const Sequence& b, std::uint32_t& zeros) {
    if (!(b.group() == group())) throw SequenceError("sequence over a different group");
    if (!is_zero_sum(b)) throw NotZeroSum("sequence " + format_sequence(b) + " is not a zero-sum sequence");
    zeros = b.count(group().zero_id());
    return compute_counts(b.counts());
  }

  /// Counts of a zero-sum sequence; the zero element is ignored.
  detail::LengthBits compute_counts(std::span<const std::uint32_t> counts) {
    std::size_t len = 0;
    key_[0] = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      if (counts[i] > 255) throw std::invalid_argument("multiplicity above 255 not supported by the length engine");
      key_[i] = static_cast<std::uint8_t>(counts[i]);
      len += counts[i];
    }
    if (len > 254) throw std::invalid_argument("zero-free part longer than 254 not supported by the length engine");
    return lengths();
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  // L of the zero-sum sequence held in key_; key_ is restored on return.
  detail::LengthBits lengths() {
    const std::size_t n = key_.size();
    std::size_t first = 1;
    while (first < n && key_[first] == 0) ++first;
    if (first == n) return detail::LengthBits{1};
    const std::uint64_t h = detail::FlatMemo::hash(key_.data(), n);
    if (const auto* hit = memo_.find(key_.data(), h)) return *hit;

    detail::LengthBits result;
    std::array<ElemId, detail::kMaxEngineOrder> support;
    std::size_t size = 0;
    for (std::size_t i = first; i < n; ++i)
      if (key_[i]) support[size++] = static_cast<ElemId>(i);
    ElemId g = static_cast<ElemId>(first);
    --key_[g];
    extend(support.data(), size, 0, detail::SumTable::bit(g), g, result);
    ++key_[g];
    memo_.insert(key_.data(), h, result);
    return result;
  }

  // Grows the zero-sum-free prefix of an atom through the least element;
  // key_ holds what remains of B.
  void extend(const ElemId* support, std::size_t size, std::size_t from, std::uint64_t mask, ElemId sum,
              detail::LengthBits& result) {
    const auto& gr = group();
    for (std::size_t j = from; j < size; ++j) {
      ElemId h = support[j];
      if (key_[h] == 0) continue;
      ElemId s2 = gr.add_id(sum, h);
      --key_[h];
      if (s2 == gr.zero_id()) {
        result |= lengths() << 1;
      } else {
        std::uint64_t m2 = table_.extend(mask, h);
        if (!(m2 & detail::SumTable::bit(gr.zero_id()))) extend(support, size, j, m2, s2, result);
      }
      ++key_[h];
    }
  }

  detail::SumTable table_;
  detail::FlatMemo memo_;
  std::vector<std::uint8_t> key_;
};

/// L(B) for a zero-sum sequence B ({0} for the empty sequence).
inline LengthSet length_set(const Sequence& b) {
  LengthCalculator calc(b.group());
  return calc(b);
}

namespace detail {

inline void check_factorization_input(const Sequence& b, const AtomSet& atoms) {
  if (!(b.group() == atoms.group)) throw SequenceError("sequence and atom set over different groups");
  if (!is_zero_sum(b)) throw NotZeroSum("sequence " + format_sequence(b) + " is not a zero-sum sequence");
  for (ElemId x : b.support())
    if (!std::binary_search(atoms.support.begin(), atoms.support.end(), x))
      throw std::invalid_argument("atom set support does not cover " + b.group().format_element(x));
}

/// Indices (into atoms.atoms) of the factorizations of b, each a
/// non-increasing index list.
inline std::vector<std::vector<std::size_t>> factorization_indices(const Sequence& b, const AtomSet& atoms,
                                                                   std::size_t cap) {
  check_factorization_input(b, atoms);
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < atoms.atoms.size(); ++i)
    if (divides(atoms.atoms[i], b)) cands.push_back(i);

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::uint32_t> rest(b.counts().begin(), b.counts().end());
  std::size_t remaining = b.length();
  std::vector<std::size_t> chosen;

  auto fits = [&](const Sequence& a) {
    for (ElemId x : a.support())
      if (a.count(x) > rest[x]) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t bound) -> void {
    if (remaining == 0) {
      out.push_back(chosen);
      if (out.size() > cap) throw TooManyFactorizations(cap);
      return;
    }
    for (std::size_t k = bound + 1; k-- > 0;) {
      const Sequence& a = atoms.atoms[cands[k]];
      if (!fits(a)) continue;
      for (ElemId x : a.support()) rest[x] -= a.count(x);
      remaining -= a.length();
      chosen.push_back(cands[k]);
      self(self, k);
      chosen.pop_back();
      remaining += a.length();
      for (ElemId x : a.support()) rest[x] += a.count(x);
    }
  };
  if (!cands.empty() || remaining == 0) rec(rec, cands.empty() ? 0 : cands.size() - 1);
  return out;
}

inline int index_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  // both sorted non-increasingly
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] > b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(std::max(a.size() - common, b.size() - common));
}

}  // namespace detail

/// All factorizations of B over the given atoms, each exactly once.
inline std::vector<Factorization> factorizations(const Sequence& b, const AtomSet& atoms,
                                                 std::size_t cap = kDefaultFactorizationCap) {
  auto idx = detail::factorization_indices(b, atoms, cap);
  std::vector<Factorization> out;
  out.reserve(idx.size());
  for (const auto& z : idx) {
    Factorization f;
    f.product = b;
    for (std::size_t i : z) f.parts.push_back(atoms.atoms[i]);
    out.push_back(std::move(f));
  }
  return out;
}

/// Atoms over supp(B) computed on the fly.
inline std::vector<Factorization> factorizations(const Sequence& b, std::size_t cap = kDefaultFactorizationCap) {
  if (!is_zero_sum(b)) throw NotZeroSum("sequence " + format_sequence(b) + " is not a zero-sum sequence");
  AtomSet atoms = enumerate_atoms(b.group(), b.support(), static_cast<int>(b.length()));
  return factorizations(b, atoms, cap);
}

/// d(z, z'): cancel the common part, return the larger remaining count.
inline int distance(const Factorization& z, const Factorization& w) {
  if (!(z.product == w.product)) throw std::invalid_argument("distance: factorizations of different elements");
  std::size_t i = 0, j = 0, common = 0;
  while (i < z.parts.size() && j < w.parts.size()) {
    auto c = z.parts[i] <=> w.parts[j];
    if (c == 0) {
      ++common;
      ++i;
      ++j;
    } else if (c > 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(std::max(z.parts.size() - common, w.parts.size() - common));
}

/// Smallest N such that the graph on Z(B) with edges of distance <= N is
/// connected (0 when |Z(B)| <= 1). Binary search on N with union-find.
inline int catenary_degree_of(const std::vector<std::vector<std::size_t>>& z) {
  if (z.size() <= 1) return 0;
  std::size_t max_len = 0;
  for (const auto& f : z) max_len = std::max(max_len, f.size());
  auto connected = [&](int threshold) {
    UnionFind uf(z.size());
    for (std::size_t i = 0; i < z.size() && uf.components() > 1; ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j)
        if (uf.find(i) != uf.find(j) && detail::index_distance(z[i], z[j]) <= threshold) uf.merge(i, j);
    return uf.components() == 1;
  };
  int lo = 0, hi = static_cast<int>(max_len);  // c(B) <= max L(B)
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (connected(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline int catenary_degree(const Sequence& b, const AtomSet& atoms, std::size_t cap = kDefaultFactorizationCap) {
  return catenary_degree_of(detail::factorization_indices(b, atoms, cap));
}

inline int catenary_degree(const Sequence& b, std::size_t cap = kDefaultFactorizationCap) {
  if (!is_zero_sum(b)) throw NotZeroSum("sequence " + format_sequence(b) + " is not a zero-sum sequence");
  AtomSet atoms = enumerate_atoms(b.group(), b.support(), static_cast<int>(b.length()));
  return catenary_degree(b, atoms, cap);
}

}  // namespace zslen
