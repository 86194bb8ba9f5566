#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace zslen {

inline constexpr std::uint64_t kDefaultBudget = 5'000'000;
inline constexpr std::size_t kDefaultFactorizationCap = 200'000;

/// Knobs shared by the enumeration-heavy operations.
///
/// `budget` caps the number of search nodes one call may visit. Nodes are
/// counted only in the outer enumerations (sequence or atom-multiset trees),
/// never inside memoized length-set recursion, so node totals do not depend
/// on cache state or on the thread count.
struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  /// Prune atom-multiset searches by automorphisms of G. Never changes results.
  bool symmetry = false;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t limit)
      : std::runtime_error(what + " (budget " + std::to_string(limit) + " nodes)"), limit_(limit) {}
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
};

/// Thrown when an engine needs tables that only exist for small groups.
class GroupTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Budget default, honouring ZSLEN_BUDGET when set to a positive integer.
inline std::uint64_t default_budget_from_env() {
  if (const char* env = std::getenv("ZSLEN_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

}  // namespace zslen
