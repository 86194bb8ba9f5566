#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zslen/group.hpp"
#include "zslen/length_set.hpp"
#include "zslen/options.hpp"
#include "zslen/sequence.hpp"

namespace zslen::verify {

enum class ClaimStatus { Pass, Fail, Inconclusive };

/// What a claim's finite computation establishes.
enum class ClaimKind {
  Exact,       ///< the statement itself, fully computed
  Bounded,     ///< the statement restricted to sequences within a stated bound
  FiniteCase,  ///< one fixed parameter value of a statement about all large k
};

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass:
      return "pass";
    case ClaimStatus::Fail:
      return "fail";
    case ClaimStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

inline const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::Exact:
      return "exact";
    case ClaimKind::Bounded:
      return "bounded";
    case ClaimKind::FiniteCase:
      return "finite instance of asymptotic claim";
  }
  return "?";
}

struct Claim {
  std::string desc;
  std::string ref;  ///< the statement of the source this claim reproduces
  ClaimKind kind = ClaimKind::Exact;
  ClaimStatus status = ClaimStatus::Fail;
  std::string computed;
  std::string expected;

  bool pass() const { return status == ClaimStatus::Pass; }
};

struct Scenario {
  std::string id;
  std::vector<AbelianGroup> groups;
  std::vector<Claim> claims;

  bool passed() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass(); });
  }
  bool failed() const {
    return std::any_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == ClaimStatus::Fail; });
  }
};

struct VerifyOptions {
  bool heavy = false;
  SearchOptions search;
};

/// Result of one claim computation.
struct Outcome {
  bool pass = false;
  std::string computed;
  std::string expected;
};

inline Outcome compare(const std::string& computed, const std::string& expected) {
  return {computed == expected, computed, expected};
}
inline Outcome compare(const LengthSet& computed, const LengthSet& expected) {
  return compare(computed.to_string(), expected.to_string());
}
inline Outcome compare(long long computed, long long expected) {
  return compare(std::to_string(computed), std::to_string(expected));
}
inline Outcome holds(bool ok, std::string computed, std::string expected = "true") {
  return {ok, std::move(computed), std::move(expected)};
}

/// Collects the claims of one scenario in a fixed order.
class ScenarioBuilder {
 public:
  ScenarioBuilder(std::string id, std::vector<AbelianGroup> groups) {
    s_.id = std::move(id);
    s_.groups = std::move(groups);
  }

  /// Runs `fn` and records its outcome; a budget overrun marks the claim
  /// inconclusive instead of failing it.
  void claim(std::string desc, std::string ref, ClaimKind kind, const std::function<Outcome()>& fn) {
    Claim c;
    c.desc = std::move(desc);
    c.ref = std::move(ref);
    c.kind = kind;
    try {
      Outcome o = fn();
      c.status = o.pass ? ClaimStatus::Pass : ClaimStatus::Fail;
      c.computed = std::move(o.computed);
      c.expected = std::move(o.expected);
    } catch (const BudgetExceeded& e) {
      c.status = ClaimStatus::Inconclusive;
      c.computed = std::string("budget exhausted: ") + e.what();
    }
    s_.claims.push_back(std::move(c));
  }

  void claim(std::string desc, std::string ref, const std::function<Outcome()>& fn) {
    claim(std::move(desc), std::move(ref), ClaimKind::Exact, fn);
  }

  Scenario take() { return std::move(s_); }

 private:
  Scenario s_;
};

inline std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

inline std::string format_sequences(const std::vector<Sequence>& v) {
  std::vector<std::string> parts;
  for (const auto& s : v) parts.push_back(format_sequence(s));
  return "[" + join(parts) + "]";
}

}  // namespace zslen::verify
