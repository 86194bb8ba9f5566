#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zslen/group.hpp"
#include "zslen/length_set.hpp"

namespace zslen::verify {

/// Closed form of a whole system of sets of lengths, listed up to a maximum.
struct SystemForm {
  std::string group;
  std::string formula;
  /// All members L of the family with max L <= max_value, sorted.
  std::vector<LengthSet> (*instances)(int max_value);
};

namespace detail {

inline LengthSet progression(int start, int step, int count) {
  std::vector<int> v;
  for (int i = 0; i <= count; ++i) v.push_back(start + step * i);
  return LengthSet(std::move(v));
}

inline std::vector<LengthSet> sorted(std::set<LengthSet> s) { return {s.begin(), s.end()}; }

// {y}
inline std::vector<LengthSet> singletons(int max_value) {
  std::set<LengthSet> out;
  for (int y = 0; y <= max_value; ++y) out.insert(LengthSet{y});
  return sorted(std::move(out));
}

// y + 2k + [0, k]
inline std::vector<LengthSet> three_halves(int max_value) {
  std::set<LengthSet> out;
  for (int k = 0; 3 * k <= max_value; ++k)
    for (int y = 0; y + 3 * k <= max_value; ++y) out.insert(progression(y + 2 * k, 1, k));
  return sorted(std::move(out));
}

// y + (k+1) + [0,k] for k in [0,2], y + k + [0,k] for k >= 3, y + 2k + 2[0,k]
inline std::vector<LengthSet> rank_three_two(int max_value) {
  std::set<LengthSet> out;
  for (int y = 0; y <= max_value; ++y) {
    for (int k = 0; k <= 2 && y + 2 * k + 1 <= max_value; ++k) out.insert(progression(y + k + 1, 1, k));
    for (int k = 3; y + 2 * k <= max_value; ++k) out.insert(progression(y + k, 1, k));
    for (int k = 0; y + 4 * k <= max_value; ++k) out.insert(progression(y + 2 * k, 2, k));
  }
  return sorted(std::move(out));
}

// {1}, [2k, nu] for nu in [2k, 5k], [2k+1, nu] for k >= 1 and nu in [2k+1, 5k+2]
inline std::vector<LengthSet> rank_two_three(int max_value) {
  std::set<LengthSet> out;
  if (max_value >= 1) out.insert(LengthSet{1});
  for (int k = 0; 2 * k <= max_value; ++k) {
    for (int nu = 2 * k; nu <= 5 * k && nu <= max_value; ++nu) out.insert(LengthSet::interval(2 * k, nu));
    if (k >= 1)
      for (int nu = 2 * k + 1; nu <= 5 * k + 2 && nu <= max_value; ++nu) out.insert(LengthSet::interval(2 * k + 1, nu));
  }
  return sorted(std::move(out));
}

}  // namespace detail

/// The closed forms known for the systems of C_1, C_2, C_3, C_2^2, C_2^3
/// and C_3^2.
inline std::vector<SystemForm> known_system_forms() {
  return {
      {"C1", "{y}", detail::singletons},
      {"C2", "{y}", detail::singletons},
      {"C3", "y + 2k + [0,k]", detail::three_halves},
      {"C2xC2", "y + 2k + [0,k]", detail::three_halves},
      {"C2xC2xC2", "y + (k+1) + [0,k] (k <= 2), y + k + [0,k] (k >= 3), y + 2k + 2[0,k]", detail::rank_three_two},
      {"C3xC3", "{1}, [2k, nu] (nu <= 5k), [2k+1, nu] (k >= 1, nu <= 5k+2)", detail::rank_two_three},
  };
}

inline const SystemForm& system_form(const AbelianGroup& g) {
  static const std::vector<SystemForm> forms = known_system_forms();
  for (const auto& f : forms)
    if (parse_group(f.group) == g) return f;
  throw std::invalid_argument("no closed form recorded for " + g.to_string());
}

}  // namespace zslen::verify
