#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zslen/aamp.hpp"
#include "zslen/closure.hpp"
#include "zslen/distances.hpp"

using namespace zslen;

namespace {

// Smallest M for which L is an AAMP with difference d, straight from the
// definition: every period, every shift, every central part.
int naive_min_bound(const std::vector<int>& l, int d) {
  int best = -1;
  for (int pmask = 0; pmask < (1 << (d > 1 ? d - 1 : 0)); ++pmask) {
    std::vector<char> in(static_cast<std::size_t>(d), 0);
    in[0] = 1;
    for (int r = 1; r < d; ++r)
      if (pmask >> (r - 1) & 1) in[static_cast<std::size_t>(r)] = 1;
    auto member = [&](int z) { return in[static_cast<std::size_t>(((z % d) + d) % d)] != 0; };
    for (int y = l.front() - 3; y <= l.back() + 3; ++y) {
      bool all_in = true;
      for (int x : l) all_in = all_in && member(x - y);
      if (!all_in) continue;
      for (int t = 0; t <= l.back() - y; ++t) {
        bool ok = true;
        for (int z = 0; z <= t && ok; ++z) {
          bool in_l = std::find(l.begin(), l.end(), y + z) != l.end();
          ok = in_l == member(z);
        }
        if (!ok || !member(t) || std::find(l.begin(), l.end(), y + t) == l.end()) continue;
        int m = 0;
        for (int x : l) {
          if (x - y < 0) m = std::max(m, y - x);
          if (x - y > t) m = std::max(m, x - y - t);
        }
        if (best < 0 || m < best) best = m;
      }
    }
  }
  return best;
}

std::set<int> naive_delta(const AbelianGroup& g, const std::vector<int>& allowed_idx, int max_len) {
  oracle::Grp og(g.factors());
  LengthCalculator calc(g);
  std::set<int> out;
  oracle::for_each_multiset(allowed_idx, 1, max_len, [&](const oracle::Multiset& m) {
    if (oracle::sum(og, m) != 0) return;
    for (int x : delta_of_set(calc(oracle::to_sequence(g, og, m)))) out.insert(x);
  });
  return out;
}

}  // namespace

TEST(Aamp, ArithmeticProgression) {
  auto w = is_aamp(LengthSet{3, 6, 9, 12}, 3, 0);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->y, 3);
  EXPECT_EQ(w->period, (std::vector<int>{0, 3}));
  EXPECT_EQ(w->central, (std::vector<int>{0, 3, 6, 9}));
  EXPECT_TRUE(w->lower.empty());
  EXPECT_TRUE(w->upper.empty());
}

TEST(Aamp, SmallestBoundExamples) {
  auto w = min_aamp_bound(LengthSet{2, 5, 8, 9}, 3);
  EXPECT_EQ(w.bound, 4);
  EXPECT_EQ(w.y, 5);
  EXPECT_EQ(w.period, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(w.lower, (std::vector<int>{-3}));
  EXPECT_EQ(w.central, (std::vector<int>{0}));
  EXPECT_EQ(w.upper, (std::vector<int>{3, 4}));
  EXPECT_FALSE(is_aamp(LengthSet{2, 5, 8, 9}, 3, 3));
  EXPECT_TRUE(is_aamp(LengthSet{2, 5, 8, 9}, 3, 4));

  auto v = min_aamp_bound(LengthSet{2, 4, 5}, 2);
  EXPECT_EQ(v.bound, 2);
  EXPECT_EQ(v.y, 4);
  EXPECT_EQ(v.central, (std::vector<int>{0, 1}));
  EXPECT_EQ(v.lower, (std::vector<int>{-2}));

  EXPECT_THROW(min_aamp_bound(LengthSet{}, 2), std::invalid_argument);
  EXPECT_THROW(min_aamp_bound(LengthSet{1}, 0), std::invalid_argument);
}

TEST(Aamp, AgreesWithDefinitionOnRandomSets) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<int> v;
    int lo = static_cast<int>(rng() % 5);
    for (int x = lo; x < lo + 14; ++x)
      if (rng() % 3 == 0 || x == lo) v.push_back(x);
    LengthSet l(v);
    for (int d = 1; d <= 5; ++d) {
      auto w = min_aamp_bound(l, d);
      EXPECT_EQ(w.bound, naive_min_bound(l.values(), d)) << l.to_string() << " d=" << d;
      std::vector<int> back;
      for (const auto* part : {&w.lower, &w.central, &w.upper})
        for (int z : *part) back.push_back(z + w.y);
      EXPECT_EQ(LengthSet(back), l);
    }
  }
}

TEST(Closure, SmallGroupVerdicts) {
  struct Case {
    const char* group;
    ClosureVerdict verdict;
  };
  for (auto c : {Case{"C1", ClosureVerdict::ClosedAtBound}, Case{"C2", ClosureVerdict::ClosedAtBound},
                 Case{"C3", ClosureVerdict::ClosedAtBound}, Case{"C4", ClosureVerdict::ClosedAtBound},
                 Case{"C2xC2", ClosureVerdict::ClosedAtBound}, Case{"C5", ClosureVerdict::NotClosed},
                 Case{"C6", ClosureVerdict::NotClosed}, Case{"C2xC4", ClosureVerdict::NotClosed}}) {
    AbelianGroup g = parse_group(c.group);
    auto rep = check_additively_closed(g, 10);
    EXPECT_EQ(rep.verdict, c.verdict) << c.group;
    if (rep.witness) {
      EXPECT_EQ(length_set(rep.witness->first.witness), rep.witness->first.set);
      EXPECT_EQ(length_set(rep.witness->second.witness), rep.witness->second.set);
      EXPECT_EQ(rep.witness->sum, sumset(rep.witness->first.set, rep.witness->second.set));
      EXPECT_EQ(decide_length_set(g, rep.witness->sum).verdict, Verdict::NotRealizable);
    }
  }
}

TEST(Closure, BaseReductionMatchesAllPairs) {
  for (const char* name : {"C3", "C4", "C5", "C6", "C2xC2", "C2xC4"}) {
    AbelianGroup g = parse_group(name);
    auto sys = enumerate_system(g, std::nullopt, BoundKind::SeqLength, 9);
    LengthOracle lo(g);
    bool closed = true;
    for (const auto& a : sys.entries)
      for (const auto& b : sys.entries)
        if (lo.decide(sumset(a.set, b.set)).verdict == Verdict::NotRealizable) closed = false;
    auto rep = check_additively_closed(g, 9);
    EXPECT_EQ(rep.verdict == ClosureVerdict::ClosedAtBound, closed) << name;
  }
}

TEST(Closure, ThreadInvariantReport) {
  AbelianGroup g = parse_group("C6");
  SearchOptions one, four;
  four.threads = 4;
  auto a = check_additively_closed(g, 10, one);
  auto b = check_additively_closed(g, 10, four);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.pairs_checked, b.pairs_checked);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->sum, b.witness->sum);
  EXPECT_EQ(a.witness->first.witness, b.witness->first.witness);
}

TEST(Closure, SeedsJoinTheFamily) {
  AbelianGroup g = parse_group("C2xC2xC2xC2");
  LengthOracle lo(g);
  auto lp = lo.decide(LengthSet{4, 6, 8});
  ASSERT_EQ(lp.verdict, Verdict::Realizable);
  auto v0 = parse_sequence(g, "(0,0,0,1) (0,0,1,0) (0,1,0,0) (1,0,0,0) (1,1,1,1)");
  auto rep = check_additively_closed(g, 6, {}, {*lp.witness, power(v0, 2)}, &lo);
  EXPECT_EQ(rep.verdict, ClosureVerdict::NotClosed);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(decide_length_set(g, rep.witness->sum).verdict, Verdict::NotRealizable);
}

TEST(Closure, TinyBudgetGivesInconclusive) {
  AbelianGroup g = parse_group("C3xC3");
  SearchOptions opt;
  opt.budget = 40000;
  auto rep = check_additively_closed(g, 6, opt);
  SearchOptions tiny = opt;
  tiny.budget = 1;
  EXPECT_THROW(check_additively_closed(g, 6, tiny), BudgetExceeded);
  EXPECT_EQ(rep.verdict, ClosureVerdict::ClosedAtBound);
}

TEST(Distances, BoundedAgreesWithNaive) {
  for (const char* name : {"C3", "C4", "C5", "C2xC2", "C2xC4", "C2xC2xC2"}) {
    AbelianGroup g = parse_group(name);
    oracle::Grp og(g.factors());
    std::vector<int> nz;
    for (int i = 1; i < og.size(); ++i) nz.push_back(i);
    auto naive = naive_delta(g, nz, 9);
    auto got = delta_bounded(g, std::nullopt, 9);
    EXPECT_EQ(std::set<int>(got.begin(), got.end()), naive) << name;
  }
}

TEST(Distances, KnownSetsOfDistances) {
  EXPECT_EQ(delta_bounded(parse_group("C2xC2xC2"), std::nullopt, 10), (std::vector<int>{1, 2}));
  EXPECT_EQ(delta_bounded(parse_group("C3xC3"), std::nullopt, 10), (std::vector<int>{1}));
  EXPECT_TRUE(delta_bounded(parse_group("C2"), std::nullopt, 10).empty());
}

TEST(Distances, MinDeltaOfSupports) {
  AbelianGroup g = parse_group("C2xC2xC2");
  auto id = [&](const char* e) { return g.id_of(parse_element(g, e)); };
  std::vector<ElemId> bps{id("(1,0,0)"), id("(0,1,0)"), id("(0,0,1)"), id("(1,1,1)")};
  EXPECT_TRUE(is_basis_plus_sum(g, bps));
  EXPECT_EQ(min_delta_support(g, bps, 12), 2);
  auto extra = bps;
  extra.push_back(id("(1,1,0)"));
  EXPECT_FALSE(is_basis_plus_sum(g, extra));
  EXPECT_EQ(min_delta_support(g, extra, 10), 1);
  EXPECT_FALSE(is_basis_plus_sum(g, {id("(1,0,0)"), id("(0,1,0)"), id("(1,1,0)"), id("(1,1,1)")}));
  EXPECT_EQ(min_delta_support(g, {id("(1,1,0)")}, 10), 0);
  EXPECT_THROW(min_delta_support(g, {g.zero_id()}, 10), std::invalid_argument);
  EXPECT_THROW(is_basis_plus_sum(parse_group("C4"), {1}), std::invalid_argument);
}

TEST(Distances, MinimalDistanceEstimates) {
  struct Case {
    const char* group;
    int max_value;
  };
  for (auto c : {Case{"C3xC3", 1}, Case{"C2xC4", 2}, Case{"C2xC2xC2", 2}, Case{"C5", 3}}) {
    AbelianGroup g = parse_group(c.group);
    auto est = delta_star_bounded(g, 10);
    ASSERT_FALSE(est.values.empty());
    EXPECT_EQ(est.values.back(), c.max_value) << c.group;
    std::size_t covered = 0;
    for (const auto& cls : est.classes) {
      covered += cls.class_size;
      EXPECT_EQ(cls.min_delta, min_delta_support(g, cls.representative, 10));
    }
    EXPECT_LE(covered, (std::size_t{1} << (g.order() - 1)) - 1);
  }
}
