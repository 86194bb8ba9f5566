#pragma once

#include <string>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/factorization.hpp"
#include "zslen/oracle.hpp"
#include "zslen/system.hpp"
#include "zslen/verify/forms.hpp"
#include "zslen/verify/scenario.hpp"

namespace zslen::verify {

/// Turns an inconclusive decision into BudgetExceeded so that the claim
/// running it is reported as inconclusive.
inline DecideResult conclusive(DecideResult r, std::uint64_t budget) {
  if (r.verdict == Verdict::Inconclusive) throw BudgetExceeded("length-set decision", budget);
  return r;
}

/// Every part is an atom and the parts multiply to `target`; then |parts| is
/// a length of target.
inline Outcome displayed_factorization(const std::vector<Sequence>& parts, const Sequence& target,
                                       LengthCalculator& calc) {
  Sequence prod(target.group());
  bool atoms = true;
  for (const auto& p : parts) {
    atoms = atoms && is_atom(p);
    prod = product(prod, p);
  }
  LengthSet l = calc(target);
  int n = static_cast<int>(parts.size());
  bool ok = atoms && prod == target && l.contains(n);
  std::string computed = std::string(atoms ? "all parts atoms" : "a part is not an atom") + ", product " +
                         (prod == target ? "matches" : "differs") + ", L = " + l.to_string();
  return holds(ok, computed, "all parts atoms, product matches, " + std::to_string(n) + " in L");
}

/// Both directions of a closed form against the bounded system: every
/// observed set is a form member, and a form member with max <= bound is
/// observed exactly when it has a realizer of length <= bound.
struct FormComparison {
  std::size_t observed = 0;
  std::size_t members = 0;  ///< form members with max <= bound
  std::size_t fitting = 0;  ///< members with a realizer of length <= bound
  std::vector<LengthSet> outside_form;
  std::vector<LengthSet> missing;     ///< fitting members not observed
  std::vector<LengthSet> unexpected;  ///< observed members the oracle says do not fit
};

inline FormComparison compare_with_form(const LengthSystem& sys, const SystemForm& form, LengthOracle& oracle,
                                        const SearchOptions& opt) {
  FormComparison c;
  c.observed = sys.entries.size();
  auto members = form.instances(sys.bound);
  c.members = members.size();
  for (const auto& e : sys.entries)
    if (!std::binary_search(members.begin(), members.end(), e.set)) c.outside_form.push_back(e.set);
  for (const auto& l : members) {
    bool fits = conclusive(oracle.decide(l, opt, sys.bound), opt.budget).verdict == Verdict::Realizable;
    c.fitting += fits ? 1 : 0;
    bool seen = sys.contains(l);
    if (fits && !seen) c.missing.push_back(l);
    if (!fits && seen) c.unexpected.push_back(l);
  }
  return c;
}

inline std::string format_sets(const std::vector<LengthSet>& v, std::size_t limit = 8) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) parts.push_back(v[i].to_string());
  if (v.size() > limit) parts.push_back("...");
  return "[" + join(parts) + "]";
}

/// Adds the two form claims of one group to `b`.
inline void add_form_claims(ScenarioBuilder& b, const AbelianGroup& g, int bound, const std::string& ref,
                            const VerifyOptions& opt) {
  const SystemForm& form = system_form(g);
  std::optional<LengthSystem> sys;
  std::optional<FormComparison> cmp;
  auto ensure = [&] {
    if (cmp) return;
    sys = enumerate_system(g, std::nullopt, BoundKind::SeqLength, bound, opt.search);
    LengthOracle oracle(g, opt.search.threads);
    cmp = compare_with_form(*sys, form, oracle, opt.search);
  };
  std::string tag = g.to_string() + ", |B| <= " + std::to_string(bound);
  b.claim("every observed set of lengths has the form " + form.formula + " (" + tag + ")", ref, ClaimKind::Bounded,
          [&] {
            ensure();
            return holds(cmp->outside_form.empty(),
                         std::to_string(cmp->observed) + " sets, outside the form: " + format_sets(cmp->outside_form),
                         "outside the form: []");
          });
  b.claim("every form member with a realizer of length <= bound is observed (" + tag + ")", ref, ClaimKind::Bounded,
          [&] {
            ensure();
            bool ok = cmp->missing.empty() && cmp->unexpected.empty() && cmp->fitting == cmp->observed;
            return holds(ok,
                         std::to_string(cmp->fitting) + " of " + std::to_string(cmp->members) +
                             " members fit, missing: " + format_sets(cmp->missing) +
                             ", unexpected: " + format_sets(cmp->unexpected),
                         "missing: [], unexpected: [], fitting = observed");
          });
}

}  // namespace zslen::verify
