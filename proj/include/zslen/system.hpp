#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/detail/parallel.hpp"
#include "zslen/factorization.hpp"
#include "zslen/length_set.hpp"
#include "zslen/options.hpp"
#include "zslen/sumset.hpp"

namespace zslen {

enum class BoundKind { SeqLength, NumAtomFactors };

inline const char* to_string(BoundKind k) { return k == BoundKind::SeqLength ? "seq_length" : "num_atom_factors"; }

struct SystemEntry {
  LengthSet set;
  Sequence witness;  ///< canonically smallest B found with L(B) = set
};

/// The distinct sets of lengths of B over a support G0, for B within a bound.
struct LengthSystem {
  AbelianGroup group;
  std::vector<ElemId> support;
  BoundKind kind = BoundKind::SeqLength;
  int bound = 0;
  std::vector<SystemEntry> entries;  ///< sorted by set

  bool contains(const LengthSet& l) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), l,
                               [](const SystemEntry& e, const LengthSet& x) { return e.set < x; });
    return it != entries.end() && it->set == l;
  }
  const SystemEntry* find(const LengthSet& l) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), l,
                               [](const SystemEntry& e, const LengthSet& x) { return e.set < x; });
    return it != entries.end() && it->set == l ? &*it : nullptr;
  }
  std::vector<LengthSet> sets() const {
    std::vector<LengthSet> out;
    for (const auto& e : entries) out.push_back(e.set);
    return out;
  }
};

namespace detail {

using WitnessMap = std::map<LengthSet, Sequence>;

inline void offer(WitnessMap& m, const LengthSet& l, const Sequence& w) {
  auto [it, inserted] = m.try_emplace(l, w);
  if (!inserted && w < it->second) it->second = w;
}

inline void merge_into(WitnessMap& dst, const WitnessMap& src) {
  for (const auto& [l, w] : src) offer(dst, l, w);
}

}  // namespace detail

/// All L(B) for B over G0 with |B| <= bound (SeqLength), or B a product of at
/// most `bound` atoms of A(G0) (NumAtomFactors). Each set keeps the
/// canonically smallest witness found. Throws BudgetExceeded when the
/// enumeration visits more than opt.budget nodes.
inline LengthSystem enumerate_system(const AbelianGroup& g, std::optional<std::vector<ElemId>> support, BoundKind kind,
                                     int bound, const SearchOptions& opt = {}) {
  if (bound < 0) throw std::invalid_argument("bound must be >= 0");
  LengthSystem sys;
  sys.group = g;
  sys.support = detail::normalized_support(g, std::move(support));
  sys.kind = kind;
  sys.bound = bound;
  const bool has_zero = std::binary_search(sys.support.begin(), sys.support.end(), g.zero_id());
  std::vector<ElemId> nonzero;
  for (ElemId x : sys.support)
    if (x != g.zero_id()) nonzero.push_back(x);

  // SeqLength: zero-free B first, zero shifts afterwards.
  detail::WitnessMap zero_free;
  zero_free.emplace(LengthSet({0}), Sequence(g));
  const std::uint64_t budget = opt.budget;
  struct Branch {
    detail::WitnessMap found;
    std::uint64_t nodes = 0;
    bool over = false;
  };

  if (kind == BoundKind::SeqLength) {
    auto run = [&](std::size_t first) {
      Branch br;
      LengthCalculator calc(g);
      std::vector<std::uint32_t> counts(g.order(), 0);
      std::size_t len = 0;
      auto rec = [&](auto&& self, std::size_t idx, ElemId sum) -> void {
        if (br.over) return;
        if (++br.nodes > budget) {
          br.over = true;
          return;
        }
        ElemId x = nonzero[idx];
        ++counts[x];
        ++len;
        ElemId s2 = g.add_id(sum, x);
        if (s2 == g.zero_id()) {
          auto bits = calc.compute_counts(counts);
          detail::offer(br.found, detail::to_length_set(bits, 0), Sequence(g, counts));
        }
        if (static_cast<int>(len) < bound)
          for (std::size_t j = idx; j < nonzero.size(); ++j) self(self, j, s2);
        --counts[x];
        --len;
      };
      if (bound >= 1) rec(rec, first, g.zero_id());
      return br;
    };
    auto parts = detail::ordered_parallel(nonzero.size(), opt.threads, run, [](const Branch& b) { return b.over; });
    std::uint64_t total = 0;
    for (auto& p : parts) {
      if (!p) break;
      total += p->nodes;
      if (p->over || total > budget) throw BudgetExceeded("system enumeration", budget);
      detail::merge_into(zero_free, p->found);
    }
  } else {
    // The zero atom takes part like any other, so no shift pass is needed.
    AtomSet atoms = enumerate_atoms(g, sys.support, std::nullopt, opt.threads);
    std::vector<std::vector<std::pair<ElemId, std::uint32_t>>> terms;
    for (const auto& a : atoms.atoms) {
      std::vector<std::pair<ElemId, std::uint32_t>> t;
      for (ElemId x : a.support()) t.emplace_back(x, a.count(x));
      terms.push_back(std::move(t));
    }
    auto run = [&](std::size_t first) {
      Branch br;
      LengthCalculator calc(g);
      std::vector<std::uint32_t> counts(g.order(), 0);
      int depth = 0;
      auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (br.over) return;
        if (++br.nodes > budget) {
          br.over = true;
          return;
        }
        for (auto [x, c] : terms[idx]) counts[x] += c;
        ++depth;
        auto bits = calc.compute_counts(counts);
        detail::offer(br.found, detail::to_length_set(bits, static_cast<int>(counts[g.zero_id()])),
                      Sequence(g, counts));
        if (depth < bound)
          for (std::size_t j = idx; j < terms.size(); ++j) self(self, j);
        --depth;
        for (auto [x, c] : terms[idx]) counts[x] -= c;
      };
      if (bound >= 1) rec(rec, first);
      return br;
    };
    auto parts = detail::ordered_parallel(terms.size(), opt.threads, run, [](const Branch& b) { return b.over; });
    std::uint64_t total = 0;
    for (auto& p : parts) {
      if (!p) break;
      total += p->nodes;
      if (p->over || total > budget) throw BudgetExceeded("system enumeration", budget);
      detail::merge_into(zero_free, p->found);
    }
  }

  if (kind == BoundKind::NumAtomFactors) {
    for (auto& [l, w] : zero_free) sys.entries.push_back({l, w});
    return sys;
  }
  // L(0^v B) = v + L(B) for zero-free B.
  detail::WitnessMap all;
  for (const auto& [l, w] : zero_free) {
    int max_v = has_zero ? bound - static_cast<int>(w.length()) : 0;
    for (int v = 0; v <= max_v; ++v) {
      Sequence s = w;
      s.insert(g.zero_id(), static_cast<std::uint32_t>(v));
      detail::offer(all, l.shifted(v), s);
    }
  }
  for (auto& [l, w] : all) sys.entries.push_back({l, w});
  return sys;
}

/// { L_1 + ... + L_n : L_i in the system }.
inline std::set<LengthSet> nfold_system_sumset(const std::vector<LengthSet>& sets, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::set<LengthSet> base(sets.begin(), sets.end());
  std::set<LengthSet> cur = base;
  for (int i = 1; i < n; ++i) {
    std::set<LengthSet> next;
    for (const auto& a : cur)
      for (const auto& b : base) next.insert(sumset(a, b));
    cur = std::move(next);
  }
  return cur;
}

inline std::set<LengthSet> nfold_system_sumset(const LengthSystem& sys, int n) {
  return nfold_system_sumset(sys.sets(), n);
}

}  // namespace zslen
