#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/automorphism.hpp"
#include "zslen/detail/parallel.hpp"
#include "zslen/factorization.hpp"
#include "zslen/options.hpp"

namespace zslen {

namespace detail {

/// Union of Delta(L(B)) for each exact support, over all zero-sum B with
/// |B| <= bound built from `elems` (nonzero, sorted). Support bit i stands
/// for elems[i].
inline std::map<std::uint64_t, LengthBits> delta_by_support(const AbelianGroup& g, const std::vector<ElemId>& elems,
                                                            int bound, const SearchOptions& opt) {
  if (elems.size() > 63) throw GroupTooLarge("support too large for distance tables");
  struct Branch {
    std::map<std::uint64_t, LengthBits> found;
    std::uint64_t nodes = 0;
    bool over = false;
  };
  const std::uint64_t budget = opt.budget;
  auto run = [&](std::size_t first) {
    Branch br;
    LengthCalculator calc(g);
    std::vector<std::uint32_t> counts(g.order(), 0);
    int len = 0;
    auto rec = [&](auto&& self, std::size_t idx, ElemId sum, std::uint64_t mask) -> void {
      if (br.over) return;
      if (++br.nodes > budget) {
        br.over = true;
        return;
      }
      ElemId x = elems[idx];
      ++counts[x];
      ++len;
      mask |= std::uint64_t{1} << idx;
      ElemId s2 = g.add_id(sum, x);
      if (s2 == g.zero_id()) {
        LengthBits b = calc.compute_counts(counts);
        LengthBits gaps;
        int prev = -1;
        for (int i = 0; i < static_cast<int>(b.size()); ++i)
          if (b[static_cast<std::size_t>(i)]) {
            if (prev >= 0) gaps.set(static_cast<std::size_t>(i - prev));
            prev = i;
          }
        if (gaps.any()) br.found[mask] |= gaps;
      }
      if (len < bound)
        for (std::size_t j = idx; j < elems.size(); ++j) self(self, j, s2, mask);
      --counts[x];
      --len;
    };
    if (bound >= 1) rec(rec, first, g.zero_id(), 0);
    return br;
  };
  auto parts = ordered_parallel(elems.size(), opt.threads, run, [](const Branch& b) { return b.over; });
  std::map<std::uint64_t, LengthBits> out;
  std::uint64_t total = 0;
  for (auto& p : parts) {
    if (!p) break;
    total += p->nodes;
    if (p->over || total > budget) throw BudgetExceeded("distance enumeration", budget);
    for (const auto& [m, b] : p->found) out[m] |= b;
  }
  return out;
}

inline std::vector<ElemId> nonzero_of(const AbelianGroup& g, std::optional<std::vector<ElemId>> support) {
  std::vector<ElemId> out;
  for (ElemId x : normalized_support(g, std::move(support)))
    if (x != g.zero_id()) out.push_back(x);
  return out;
}

inline std::vector<int> to_values(const LengthBits& b) {
  std::vector<int> v;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) v.push_back(static_cast<int>(i));
  return v;
}

inline int gcd_of(const std::vector<int>& v) {
  int g = 0;
  for (int x : v) g = std::gcd(g, x);
  return g;
}

}  // namespace detail

/// Union of Delta(L(B)) over zero-sum B over G0 with |B| <= bound. A subset
/// of Delta(G0) that grows with the bound.
inline std::vector<int> delta_bounded(const AbelianGroup& g, std::optional<std::vector<ElemId>> support, int bound,
                                      const SearchOptions& opt = {}) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  detail::LengthBits all;
  for (const auto& [m, b] : detail::delta_by_support(g, detail::nonzero_of(g, std::move(support)), bound, opt))
    all |= b;
  return detail::to_values(all);
}

/// gcd of the bounded Delta(G1), 0 when no distance was seen. The true
/// min Delta(G1) divides this value.
inline int min_delta_support(const AbelianGroup& g, const std::vector<ElemId>& g1, int bound,
                             const SearchOptions& opt = {}) {
  if (g1.empty()) throw std::invalid_argument("empty support");
  for (ElemId x : g1)
    if (x == g.zero_id()) throw std::invalid_argument("support must not contain 0");
  return detail::gcd_of(delta_bounded(g, g1, bound, opt));
}

/// For an elementary 2-group of rank r: whether G1 = {f_1, ..., f_r, f_1 + ... + f_r}
/// for some basis (f_1, ..., f_r).
inline bool is_basis_plus_sum(const AbelianGroup& g, std::vector<ElemId> g1) {
  if (!g.is_elementary(2) || g.rank() == 0) throw std::invalid_argument("basis-plus-sum test needs an elementary 2-group");
  std::sort(g1.begin(), g1.end());
  g1.erase(std::unique(g1.begin(), g1.end()), g1.end());
  if (static_cast<int>(g1.size()) != g.rank() + 1) return false;
  for (std::size_t k = 0; k < g1.size(); ++k) {
    std::vector<GroupElement> rest;
    ElemId sum = g.zero_id();
    for (std::size_t i = 0; i < g1.size(); ++i)
      if (i != k) {
        rest.push_back(g.element(g1[i]));
        sum = g.add_id(sum, g1[i]);
      }
    if (sum == g1[k] && g.is_basis(rest)) return true;
  }
  return false;
}

struct DeltaStarClass {
  std::vector<ElemId> representative;  ///< first member of its automorphism class in mask order
  std::size_t class_size = 0;
  std::vector<int> delta;  ///< bounded Delta(G1)
  int min_delta = 0;       ///< gcd of `delta`
};

/// Bound-dependent estimate of Delta*(G): one entry per automorphism class
/// of nonempty G1 in G \ {0} with a distance observed among zero-sum B with
/// |B| <= bound. Each min_delta is a multiple of the true min Delta(G1).
struct DeltaStarEstimate {
  AbelianGroup group;
  int bound = 0;
  std::vector<DeltaStarClass> classes;
  std::vector<int> values;  ///< distinct min_delta values, ascending
};

inline DeltaStarEstimate delta_star_bounded(const AbelianGroup& g, int bound, const SearchOptions& opt = {}) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  DeltaStarEstimate est;
  est.group = g;
  est.bound = bound;
  std::vector<ElemId> elems = detail::nonzero_of(g, std::nullopt);
  if (elems.size() > 16) throw GroupTooLarge("Delta* estimate supports groups of order <= 17");
  auto table = detail::delta_by_support(g, elems, bound, opt);

  std::vector<std::uint32_t> pos(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<std::uint32_t>(i);
  std::vector<Automorphism> autos;
  if (auto a = automorphisms(g)) autos = std::move(*a);
  auto image = [&](const Automorphism& phi, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask >> i & 1) out |= std::uint64_t{1} << pos[phi[elems[i]]];
    return out;
  };

  const std::uint64_t subsets = std::uint64_t{1} << elems.size();
  std::vector<char> seen(subsets, 0);
  std::set<int> values;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    if (seen[mask]) continue;
    std::size_t size = 0;
    if (autos.empty()) {
      seen[mask] = 1;
      size = 1;
    } else {
      for (const auto& phi : autos) {
        std::uint64_t m = image(phi, mask);
        if (!seen[m]) {
          seen[m] = 1;
          ++size;
        }
      }
    }
    detail::LengthBits d;
    for (const auto& [m, b] : table)
      if ((m & ~mask) == 0) d |= b;
    if (d.none()) continue;
    DeltaStarClass c;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask >> i & 1) c.representative.push_back(elems[i]);
    c.class_size = size;
    c.delta = detail::to_values(d);
    c.min_delta = detail::gcd_of(c.delta);
    values.insert(c.min_delta);
    est.classes.push_back(std::move(c));
  }
  est.values.assign(values.begin(), values.end());
  return est;
}

}  // namespace zslen
