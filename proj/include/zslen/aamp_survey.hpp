#pragma once

#include <vector>

#include "zslen/aamp.hpp"
#include "zslen/distances.hpp"
#include "zslen/system.hpp"

namespace zslen {

struct AampSurveyEntry {
  LengthSet set;
  AampWitness best;  ///< over all d in the Delta* estimate: smallest bound, then smallest d
};

/// Every set of the bounded system written as an AAMP with a difference
/// from the bounded Delta* estimate. `max_bound` is the empirical M.
struct AampSurvey {
  AbelianGroup group;
  int bound = 0;
  std::vector<int> differences;  ///< the Delta* estimate
  std::vector<AampSurveyEntry> entries;
  int max_bound = 0;
};

inline AampSurvey aamp_survey(const AbelianGroup& g, int bound, const SearchOptions& opt = {}) {
  AampSurvey s;
  s.group = g;
  s.bound = bound;
  s.differences = delta_star_bounded(g, bound, opt).values;
  std::vector<int> ds = s.differences;
  if (ds.empty()) ds.push_back(1);
  auto sys = enumerate_system(g, std::nullopt, BoundKind::SeqLength, bound, opt);
  for (const auto& e : sys.entries) {
    AampSurveyEntry entry{e.set, min_aamp_bound(e.set, ds.front())};
    for (std::size_t i = 1; i < ds.size(); ++i) {
      AampWitness w = min_aamp_bound(e.set, ds[i]);
      if (w.bound < entry.best.bound) entry.best = w;
    }
    s.max_bound = std::max(s.max_bound, entry.best.bound);
    s.entries.push_back(std::move(entry));
  }
  return s;
}

}  // namespace zslen
