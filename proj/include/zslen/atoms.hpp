#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "zslen/detail/parallel.hpp"
#include "zslen/detail/sum_table.hpp"
#include "zslen/group.hpp"
#include "zslen/options.hpp"
#include "zslen/sequence.hpp"

namespace zslen {

/// Minimal zero-sum sequences over a support set G0, sorted by canonical
/// sequence order (length first).
struct AtomSet {
  AbelianGroup group;
  std::vector<ElemId> support;
  std::vector<Sequence> atoms;
  int max_len = 0;  ///< D(G0); 0 when there are no atoms

  std::size_t size() const { return atoms.size(); }
};

/// Nonempty, zero-sum, and without a proper nonempty zero-sum subsequence.
inline bool is_atom(const Sequence& s) {
  if (s.empty() || !is_zero_sum(s)) return false;
  const auto& g = s.group();
  if (s.count(g.zero_id())) return s.length() == 1;
  // S is minimal iff S with one copy of any term removed is zero-sum free.
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    if (!s.counts()[i]) continue;
    Sequence one = Sequence::from_ids(g, std::vector<ElemId>{static_cast<ElemId>(i)});
    return is_zero_sum_free(quotient(s, one));
  }
  return false;
}

inline std::vector<ElemId> all_elements(const AbelianGroup& g) {
  std::vector<ElemId> v(g.order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<ElemId>(i);
  return v;
}

namespace detail {

/// Depth-first search over non-decreasing element sequences whose proper
/// prefixes are zero-sum free. Every node is a zero-sum-free sequence; the
/// visitor sees each atom (with its length) exactly once.
class AtomSearch {
 public:
  AtomSearch(const SumTable& table, std::vector<ElemId> nonzero_support, int max_len)
      : table_(table), support_(std::move(nonzero_support)), max_len_(max_len), counts_(table.order(), 0) {}

  /// Explores the subtree whose first term is support_[first].
  template <class Visit>
  void run_from(std::size_t first, Visit&& visit) {
    if (max_len_ < 1) return;
    step(first, 0, 0, table_.group().zero_id(), visit);
  }

  std::size_t roots() const { return support_.size(); }

 private:
  template <class Visit>
  void step(std::size_t idx, std::uint64_t mask, int len, ElemId sum, Visit& visit) {
    const auto& g = table_.group();
    ElemId h = support_[idx];
    ElemId s2 = g.add_id(sum, h);
    ++counts_[h];
    if (s2 == g.zero_id()) {
      visit(counts_, len + 1);
    } else {
      std::uint64_t m2 = table_.extend(mask, h);
      if (!(m2 & SumTable::bit(g.zero_id())) && len + 2 <= max_len_) {
        for (std::size_t j = idx; j < support_.size(); ++j) step(j, m2, len + 1, s2, visit);
      }
    }
    --counts_[h];
  }

  const SumTable& table_;
  std::vector<ElemId> support_;
  int max_len_;
  std::vector<std::uint32_t> counts_;
};

inline std::vector<ElemId> normalized_support(const AbelianGroup& g, std::optional<std::vector<ElemId>> support) {
  std::vector<ElemId> s = support ? *support : all_elements(g);
  for (ElemId x : s)
    if (x >= g.order()) throw GroupError("support element out of range");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace detail

/// Calls visit(counts, length) for every atom over `support` of length at
/// most max_len (default |G|, which bounds D(G)). Single threaded.
template <class Visit>
void for_each_atom(const AbelianGroup& g, const std::vector<ElemId>& support, int max_len, Visit&& visit) {
  detail::SumTable table(g);
  std::vector<ElemId> nonzero;
  for (ElemId x : support)
    if (x != g.zero_id()) nonzero.push_back(x);
  bool has_zero = std::find(support.begin(), support.end(), g.zero_id()) != support.end();
  if (has_zero && max_len >= 1) {
    std::vector<std::uint32_t> c(g.order(), 0);
    c[g.zero_id()] = 1;
    visit(c, 1);
  }
  detail::AtomSearch search(table, nonzero, max_len);
  for (std::size_t i = 0; i < search.roots(); ++i) search.run_from(i, visit);
}

/// All atoms over G0 (default: all of G), optionally capped in length.
/// Parallelized over the first search level; the result does not depend on
/// the thread count.
inline AtomSet enumerate_atoms(const AbelianGroup& g, std::optional<std::vector<ElemId>> support = std::nullopt,
                               std::optional<int> max_len = std::nullopt, unsigned threads = 1) {
  AtomSet out;
  out.group = g;
  out.support = detail::normalized_support(g, std::move(support));
  int cap = max_len ? *max_len : static_cast<int>(g.order());
  detail::SumTable table(g);
  std::vector<ElemId> nonzero;
  for (ElemId x : out.support)
    if (x != g.zero_id()) nonzero.push_back(x);
  if (std::binary_search(out.support.begin(), out.support.end(), g.zero_id()) && cap >= 1)
    out.atoms.push_back(Sequence::from_ids(g, std::vector<ElemId>{g.zero_id()}));

  auto parts = detail::ordered_parallel(nonzero.size(), threads, [&](std::size_t i) {
    detail::AtomSearch search(table, nonzero, cap);
    std::vector<Sequence> found;
    search.run_from(i, [&](const std::vector<std::uint32_t>& counts, int) {
      Sequence s(g, counts);
      // The prefix pruning already guarantees minimality; keep an
      // independent check on every emitted atom.
      if (!is_atom(s)) throw std::logic_error("atom search emitted a non-minimal sequence");
      found.push_back(std::move(s));
    });
    return found;
  });
  for (auto& p : parts)
    for (auto& s : p) out.atoms.push_back(std::move(s));
  std::sort(out.atoms.begin(), out.atoms.end());
  for (const auto& a : out.atoms) out.max_len = std::max(out.max_len, static_cast<int>(a.length()));
  return out;
}

/// Davenport constant D(G0): maximal atom length (0 for an empty support).
inline int davenport(const AbelianGroup& g, std::optional<std::vector<ElemId>> support = std::nullopt,
                     unsigned threads = 1) {
  std::vector<ElemId> s = detail::normalized_support(g, std::move(support));
  detail::SumTable table(g);
  std::vector<ElemId> nonzero;
  for (ElemId x : s)
    if (x != g.zero_id()) nonzero.push_back(x);
  int best = std::binary_search(s.begin(), s.end(), g.zero_id()) ? 1 : 0;
  int cap = static_cast<int>(g.order());
  auto parts = detail::ordered_parallel(nonzero.size(), threads, [&](std::size_t i) {
    detail::AtomSearch search(table, nonzero, cap);
    int local = 0;
    search.run_from(i, [&](const std::vector<std::uint32_t>&, int len) { local = std::max(local, len); });
    return local;
  });
  for (int p : parts) best = std::max(best, p);
  return best;
}

/// 1 + sum (n_i - 1); a lower bound for D(G), attained for p-groups and rank <= 2.
inline int davenport_lower_bound(const AbelianGroup& g) {
  int d = 1;
  for (int n : g.factors()) d += n - 1;
  return d;
}

/// Atoms of length exactly D(G), listed as negation pairs U, -U with U the
/// smaller of the two (a self-negating atom is listed once).
inline std::vector<Sequence> atoms_of_max_length(const AbelianGroup& g, unsigned threads = 1) {
  int d = davenport(g, std::nullopt, threads);
  AtomSet all = enumerate_atoms(g, std::nullopt, d, threads);
  std::vector<Sequence> longest;
  for (auto& a : all.atoms)
    if (static_cast<int>(a.length()) == d) longest.push_back(a);
  std::vector<Sequence> out;
  for (const auto& a : longest) {
    Sequence n = negate(a);
    if (a < n) {
      out.push_back(a);
      out.push_back(std::move(n));
    } else if (a == n) {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace zslen
