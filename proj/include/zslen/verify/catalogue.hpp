#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zslen/verify/closure_table.hpp"
#include "zslen/verify/elementary_two.hpp"
#include "zslen/verify/rank_two.hpp"

namespace zslen::verify {

class UnknownScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{
      "lemma-3.3",      "lemma-3.4-light", "prop-el2-r2", "prop-el2-r3",        "lem-length-r4",     "lem-length-r5",
      "lemma-3.5",      "lemma-3.5_2",     "prop-3.8-r2", "prop-3.9-witnesses", "theorem-1.1-table",
  };
  return ids;
}

inline Scenario run_scenario(const std::string& id, const VerifyOptions& opt = {}) {
  if (id == "lemma-3.3") return lemma_3_3(opt);
  if (id == "lemma-3.4-light") return lemma_3_4_light(opt);
  if (id == "prop-el2-r2") return prop_el2(2, opt);
  if (id == "prop-el2-r3") return prop_el2(3, opt);
  if (id == "lem-length-r4") return lem_length(4, opt);
  if (id == "lem-length-r5") return lem_length(5, opt);
  if (id == "lemma-3.5") return lemma_3_5(opt);
  if (id == "lemma-3.5_2") return lemma_3_5_2(opt);
  if (id == "prop-3.8-r2") return prop_3_8_r2(opt);
  if (id == "prop-3.9-witnesses") return prop_3_9_witnesses(opt);
  if (id == "theorem-1.1-table") return theorem_1_1_table(opt);
  std::string known;
  for (const auto& s : scenario_ids()) known += (known.empty() ? "" : ", ") + s;
  throw UnknownScenario("unknown scenario '" + id + "' (known: " + known + ")");
}

}  // namespace zslen::verify
