#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "zslen/detail/parallel.hpp"
#include "zslen/oracle.hpp"
#include "zslen/sumset.hpp"
#include "zslen/system.hpp"

namespace zslen {

enum class ClosureVerdict { ClosedAtBound, NotClosed, Inconclusive };

inline const char* to_string(ClosureVerdict v) {
  switch (v) {
    case ClosureVerdict::ClosedAtBound:
      return "CLOSED-AT-BOUND";
    case ClosureVerdict::NotClosed:
      return "NOT-CLOSED";
    case ClosureVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

struct ClosurePair {
  SystemEntry first;
  SystemEntry second;
  LengthSet sum;
};

struct ClosureReport {
  AbelianGroup group;
  int bound = 0;
  ClosureVerdict verdict = ClosureVerdict::ClosedAtBound;
  std::size_t system_size = 0;
  std::size_t base_sets = 0;
  std::size_t pairs_checked = 0;
  std::optional<ClosurePair> witness;  ///< first failing pair; its sum is not in L(G)
  std::vector<ClosurePair> inconclusive;
};

namespace detail {

/// Non-singleton sets of the system that are not a shift 1 + L' of another
/// observed set. Since L(0B) = 1 + L(B), a pair (1 + L', L'') fails exactly
/// when (L', L'') fails, so these suffice.
inline std::vector<SystemEntry> closure_base(const LengthSystem& sys) {
  std::vector<SystemEntry> out;
  for (const auto& e : sys.entries) {
    if (e.set.is_singleton()) continue;
    if (e.set.min() >= 1 && sys.contains(e.set.shifted(-1))) continue;
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Checks L + L' in L(G) for every pair of sets observed among all zero-sum
/// B with |B| <= bound. Singletons are skipped: {y} + L' = y + L' is
/// realized by 0^y times a realizer of L'. Pairs are checked in sorted order
/// and the first failure is reported; decisions that run out of budget are
/// listed as inconclusive. `seeds` are extra zero-sum sequences, possibly
/// longer than the bound, whose sets join the checked family.
inline ClosureReport check_additively_closed(const AbelianGroup& g, int bound, const SearchOptions& opt = {},
                                             const std::vector<Sequence>& seeds = {},
                                             LengthOracle* shared = nullptr) {
  ClosureReport rep;
  rep.group = g;
  rep.bound = bound;
  LengthSystem sys = enumerate_system(g, std::nullopt, BoundKind::SeqLength, bound, opt);
  rep.system_size = sys.entries.size();
  auto base = detail::closure_base(sys);

  std::optional<LengthOracle> own;
  if (!shared) own.emplace(g, opt.threads);
  LengthOracle& oracle = shared ? *shared : *own;
  for (const auto& s : seeds) {
    SystemEntry e{oracle.lengths(s), s};
    if (e.set.is_singleton() || sys.contains(e.set)) continue;
    auto it = std::lower_bound(base.begin(), base.end(), e,
                               [](const SystemEntry& x, const SystemEntry& y) { return x.set < y.set; });
    if (it != base.end() && it->set == e.set) {
      if (e.witness < it->witness) it->witness = e.witness;
    } else {
      base.insert(it, std::move(e));
    }
  }
  rep.base_sets = base.size();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) pairs.emplace_back(i, j);

  SearchOptions inner = opt;
  inner.threads = 1;
  auto run = [&](std::size_t p) {
    const auto& a = base[pairs[p].first];
    const auto& b = base[pairs[p].second];
    LengthSet sum = sumset(a.set, b.set);
    if (sys.contains(sum)) return DecideResult{Verdict::Realizable, sys.find(sum)->witness, 0};
    return oracle.decide(sum, inner, std::nullopt, {product(a.witness, b.witness)});
  };
  auto results = detail::ordered_parallel(pairs.size(), opt.threads, run,
                                          [](const DecideResult& r) { return r.verdict == Verdict::NotRealizable; });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!results[p]) break;
    ++rep.pairs_checked;
    const auto& a = base[pairs[p].first];
    const auto& b = base[pairs[p].second];
    if (results[p]->verdict == Verdict::Inconclusive) {
      rep.inconclusive.push_back({a, b, sumset(a.set, b.set)});
    } else if (results[p]->verdict == Verdict::NotRealizable) {
      rep.witness = ClosurePair{a, b, sumset(a.set, b.set)};
      break;
    }
  }
  if (rep.witness)
    rep.verdict = ClosureVerdict::NotClosed;
  else if (!rep.inconclusive.empty())
    rep.verdict = ClosureVerdict::Inconclusive;
  return rep;
}

}  // namespace zslen
