#pragma once

#include <string>
#include <vector>

#include "zslen/closure.hpp"
#include "zslen/verify/checks.hpp"
#include "zslen/verify/e2_gadget.hpp"

namespace zslen::verify {

/// Theorem 1.1 for finite G: the system is additively closed iff G is
/// cyclic of order <= 4, elementary 2-group of rank <= 3, or elementary
/// 3-group of rank <= 2.
inline bool closed_by_classification(const AbelianGroup& g) {
  if (g.is_cyclic() && g.order() <= 4) return true;
  if (g.is_elementary(2) && g.rank() <= 3) return true;
  if (g.is_elementary(3) && g.rank() <= 2) return true;
  return false;
}

inline std::string describe(const ClosureReport& rep) {
  std::string s = to_string(rep.verdict);
  s += " (" + std::to_string(rep.system_size) + " sets, " + std::to_string(rep.pairs_checked) + " pairs";
  if (rep.witness)
    s += "; " + rep.witness->first.set.to_string() + " + " + rep.witness->second.set.to_string() + " = " +
         rep.witness->sum.to_string() + " not realizable";
  return s + ")";
}

/// Realizers of L' = {4, r+2, 2r} and of L''_1 = {2, r+1} over C2^r: the
/// seeds that expose non-closure for r >= 4.
inline std::vector<Sequence> elementary_two_seeds(int r, LengthOracle& oracle, const SearchOptions& opt) {
  E2Gadget gad(r);
  std::vector<Sequence> seeds;
  auto lp = conclusive(oracle.decide(LengthSet{4, r + 2, 2 * r}, opt), opt.budget);
  if (lp.witness) seeds.push_back(*lp.witness);
  seeds.push_back(power(gad.V0(), 2));
  return seeds;
}

inline Scenario theorem_1_1_table(const VerifyOptions& opt) {
  const std::string ref = "Theorem 1.1";
  std::vector<AbelianGroup> groups;
  for (const char* name : {"C1", "C2", "C3", "C4", "C5", "C6", "C2xC2", "C2xC2xC2", "C3xC3", "C2xC4"})
    groups.push_back(parse_group(name));
  if (opt.heavy) groups.push_back(parse_group("C2xC2xC2xC2"));
  ScenarioBuilder b("theorem-1.1-table", groups);
  const int bound = 12;
  for (const auto& g : groups) {
    const bool expect_closed = closed_by_classification(g);
    const char* expected = expect_closed ? "CLOSED-AT-BOUND" : "NOT-CLOSED";
    if (g.is_elementary(2) && g.rank() >= 4) {
      const int r = g.rank();
      const int seed_bound = 6;
      b.claim(g.to_string() + ": |B| <= " + std::to_string(seed_bound) + " plus realizers of {4," +
                  std::to_string(r + 2) + "," + std::to_string(2 * r) + "} and {2," + std::to_string(r + 1) + "}",
              ref, ClaimKind::FiniteCase, [&] {
                LengthOracle oracle(g, opt.search.threads);
                auto seeds = elementary_two_seeds(r, oracle, opt.search);
                auto rep = check_additively_closed(g, seed_bound, opt.search, seeds, &oracle);
                return holds(to_string(rep.verdict) == std::string(expected), describe(rep), expected);
              });
      continue;
    }
    b.claim(g.to_string() + ": verdict at |B| <= " + std::to_string(bound), ref,
            expect_closed ? ClaimKind::Bounded : ClaimKind::Exact, [&] {
              auto rep = check_additively_closed(g, bound, opt.search);
              bool ok = to_string(rep.verdict) == std::string(expected);
              if (rep.witness)
                ok = ok && length_set(rep.witness->first.witness) == rep.witness->first.set &&
                     length_set(rep.witness->second.witness) == rep.witness->second.set;
              return holds(ok, describe(rep), expected);
            });
  }
  return b.take();
}

}  // namespace zslen::verify
