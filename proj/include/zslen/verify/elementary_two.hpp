#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/detail/parallel.hpp"
#include "zslen/distances.hpp"
#include "zslen/factorization.hpp"
#include "zslen/oracle.hpp"
#include "zslen/verify/checks.hpp"
#include "zslen/verify/e2_gadget.hpp"

namespace zslen::verify {

namespace detail {

inline AbelianGroup elementary_two(int r) { return AbelianGroup(std::vector<int>(static_cast<std::size_t>(r), 2)); }

inline LengthSet lengths_by_factorization(const Sequence& b) {
  std::vector<int> v;
  for (const auto& z : factorizations(b)) v.push_back(static_cast<int>(z.length()));
  return LengthSet(std::move(v));
}

// y + 2k + (s-1)[0,k] with y = 0
inline LengthSet power_lengths(int k, int s) {
  std::vector<int> v;
  for (int i = 0; i <= k; ++i) v.push_back(2 * k + (s - 1) * i);
  return LengthSet(std::move(v));
}

inline std::string format_ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return "{" + join(s, ",") + "}";
}

}  // namespace detail

inline Scenario prop_el2(int r, const VerifyOptions& opt) {
  const AbelianGroup g = detail::elementary_two(r);
  const std::string ref = "Proposition on elementary 2-groups, rank " + std::to_string(r);
  ScenarioBuilder b("prop-el2-r" + std::to_string(r), {g});
  LengthCalculator calc(g);
  for (const Basis& basis : {Basis::standard(g), Basis::skewed(g)}) {
    E2Gadget gad(basis);
    std::string tag = " (basis " + basis.to_string() + ")";
    for (std::uint32_t k = 1; k <= 3; ++k)
      b.claim("L(V0^(2k)) = 2k + " + std::to_string(r - 1) + "[0,k] for k = " + std::to_string(k) + tag, ref, [&] {
        return compare(calc(power(gad.V0(), 2 * k)), detail::power_lengths(static_cast<int>(k), r));
      });
    if (r == 3)
      b.claim("L(U_I^2) = {2,3} for |I| = 2" + tag, ref, [&] { return compare(calc(power(gad.U(0b011), 2)), LengthSet{2, 3}); });
  }
  add_form_claims(b, g, opt.heavy ? 14 : 12, ref, opt);
  const int top = 10;
  b.claim("every form member L with max L <= " + std::to_string(top) + " lies in L(" + g.to_string() + ")", ref, [&] {
    LengthOracle oracle(g, opt.search.threads);
    std::vector<LengthSet> bad;
    auto members = system_form(g).instances(top);
    for (const auto& l : members)
      if (conclusive(oracle.decide(l, opt.search), opt.search.budget).verdict != Verdict::Realizable) bad.push_back(l);
    return holds(bad.empty(), std::to_string(members.size() - bad.size()) + " of " + std::to_string(members.size()) +
                                  " realized, unrealized: " + format_sets(bad),
                 "unrealized: []");
  });
  return b.take();
}

namespace detail {

// The three length formulas over all (I, J) with |I|, |J| in [2, r].
inline void add_length_formula_claims(ScenarioBuilder& b, const E2Gadget& gad, const std::string& ref,
                                      const std::string& tag) {
  using Mask = E2Gadget::Mask;
  const int r = gad.rank();
  std::vector<Mask> sets;
  for (Mask m = 1; m <= gad.full(); ++m)
    if (E2Gadget::size(m) >= 2) sets.push_back(m);
  auto run = [&](const char* what, auto seq, auto formula) {
    b.claim(std::string(what) + " for all " + std::to_string(sets.size() * sets.size()) + " pairs (I, J)" + tag, ref, [&] {
      std::size_t good = 0;
      std::string first_bad;
      for (Mask i : sets)
        for (Mask j : sets) {
          LengthSet got = lengths_by_factorization(seq(i, j));
          LengthSet want = formula(i, j);
          if (got == want) {
            ++good;
          } else if (first_bad.empty()) {
            first_bad = "I = " + gad.name(i) + ", J = " + gad.name(j) + ": " + got.to_string() + " vs " + want.to_string();
          }
        }
      std::size_t total = sets.size() * sets.size();
      return holds(good == total, std::to_string(good) + " of " + std::to_string(total) + " match" +
                                      (first_bad.empty() ? "" : "; first mismatch " + first_bad),
                   std::to_string(total) + " of " + std::to_string(total) + " match");
    });
  };
  run("L(U_I U_J) = {2, 1 + |I n J|} (or {2} when disjoint)",
      [&](Mask i, Mask j) { return product(gad.U(i), gad.U(j)); },
      [&](Mask i, Mask j) { return (i & j) ? LengthSet{2, 1 + E2Gadget::size(i & j)} : LengthSet{2}; });
  run("L(V_I V_J) = {2, 1 + delta + r + 1 - |I u J|}",
      [&](Mask i, Mask j) { return product(gad.V(i), gad.V(j)); },
      [&](Mask i, Mask j) {
        int delta = (i & j) ? 0 : 1;
        return LengthSet{2, 1 + delta + r + 1 - E2Gadget::size(i | j)};
      });
  run("L(U_I V_J) = {2, 1 + delta + |I \\ J|}",
      [&](Mask i, Mask j) { return product(gad.U(i), gad.V(j)); },
      [&](Mask i, Mask j) {
        bool comparable = (i & ~j) == 0 || (j & ~i) == 0;
        return LengthSet{2, 1 + (comparable ? 1 : 0) + E2Gadget::size(i & ~j)};
      });
}

}  // namespace detail

inline Scenario lem_length(int r, const VerifyOptions& opt) {
  (void)opt;
  using Mask = E2Gadget::Mask;
  const AbelianGroup g = detail::elementary_two(r);
  const std::string ref = "Lemma on L(U_I U_J), L(V_I V_J), L(U_I V_J)";
  const std::string atoms_ref = "Lemma on the atoms U_{I,J}, V_{I,J}";
  ScenarioBuilder b("lem-length-r" + std::to_string(r), {g});
  E2Gadget gad(Basis::standard(g));
  std::vector<Mask> inner;
  for (Mask m = 1; m < gad.full(); ++m)
    if (E2Gadget::size(m) >= 2) inner.push_back(m);

  std::vector<ElemId> g0;
  for (int i = 0; i <= r; ++i) g0.push_back(gad.e(i));
  b.claim("A(G0) = {h^2 : h in G0} u {V0}", atoms_ref, [&] {
    std::set<Sequence> want{gad.V0()};
    for (ElemId h : g0) want.insert(Sequence::from_ids(g, std::vector<ElemId>{h, h}));
    auto got = enumerate_atoms(g, g0).atoms;
    return holds(std::set<Sequence>(got.begin(), got.end()) == want,
                 std::to_string(got.size()) + " atoms", std::to_string(want.size()) + " atoms, equal sets");
  });
  b.claim("A(G0 u {e_I}) adds exactly U_I, V_I, e_I^2 for |I| in [2, r-1]", atoms_ref, [&] {
    std::size_t good = 0;
    for (Mask m : inner) {
      std::vector<ElemId> s = g0;
      s.push_back(gad.e_I(m));
      std::set<Sequence> got;
      for (auto& a : enumerate_atoms(g, s).atoms)
        if (a.count(gad.e_I(m))) got.insert(a);
      std::set<Sequence> want{gad.U(m), gad.V(m), Sequence::from_ids(g, std::vector<ElemId>{gad.e_I(m), gad.e_I(m)})};
      good += got == want ? 1 : 0;
    }
    return compare(static_cast<long long>(good), static_cast<long long>(inner.size()));
  });
  b.claim("the atoms over G0 u {e_I, e_J} divisible by e_I e_J are U_{I,J} (I n J nonempty) and V_{I,J} (I, J incomparable)",
          atoms_ref, [&] {
            std::size_t good = 0, total = 0;
            for (Mask i : inner)
              for (Mask j : inner) {
                if (i == j) continue;
                ++total;
                std::vector<ElemId> s = g0;
                s.push_back(gad.e_I(i));
                s.push_back(gad.e_I(j));
                std::set<Sequence> got;
                for (auto& a : enumerate_atoms(g, s).atoms)
                  if (a.count(gad.e_I(i)) && a.count(gad.e_I(j))) got.insert(a);
                std::set<Sequence> want;
                if (i & j) want.insert(gad.U(i, j));
                if ((i & ~j) && (j & ~i)) want.insert(gad.V(i, j));
                bool flags = is_atom(gad.U(i, j)) == ((i & j) != 0) && is_atom(gad.V(i, j)) == ((i & ~j) && (j & ~i));
                good += got == want && flags ? 1 : 0;
              }
            return compare(static_cast<long long>(good), static_cast<long long>(total));
          });
  detail::add_length_formula_claims(b, gad, ref, " (standard basis)");
  detail::add_length_formula_claims(b, E2Gadget(Basis::skewed(g)), ref, " (basis " + Basis::skewed(g).to_string() + ")");
  return b.take();
}

inline Scenario lemma_3_5(const VerifyOptions& opt) {
  const std::string ref = "Lemma 3.5";
  std::vector<AbelianGroup> groups;
  for (int r = 3; r <= 5; ++r) groups.push_back(detail::elementary_two(r));
  ScenarioBuilder b("lemma-3.5", groups);
  for (const auto& g : groups) {
    const int r = g.rank();
    const std::string gs = g.to_string();
    LengthCalculator calc(g);
    auto atoms = enumerate_atoms(g, std::nullopt, std::nullopt, opt.search.threads).atoms;
    std::vector<Sequence> longish;
    for (auto& a : atoms)
      if (a.length() >= 3) longish.push_back(a);

    b.claim("every atom f0...fs over " + gs + " with s >= 2 has any s terms independent", ref, [&] {
      std::size_t good = 0;
      for (const auto& a : longish) {
        auto ids = a.expanded();
        bool ok = true;
        for (std::size_t drop = 0; drop < ids.size() && ok; ++drop) {
          std::vector<GroupElement> rest;
          for (std::size_t i = 0; i < ids.size(); ++i)
            if (i != drop) rest.push_back(g.element(ids[i]));
          ok = g.is_independent(rest);
        }
        good += ok ? 1 : 0;
      }
      return compare(static_cast<long long>(good), static_cast<long long>(longish.size()));
    });
    b.claim("L(U^(2k)) = 2k + (s-1)[0,k] for every atom U over " + gs + " with |U| = s + 1 >= 3 and k in [1,3]", ref,
            [&] {
              std::size_t good = 0;
              for (const auto& a : longish) {
                int s = static_cast<int>(a.length()) - 1;
                bool ok = true;
                for (std::uint32_t k = 1; k <= 3 && ok; ++k)
                  ok = calc(power(a, 2 * k)) == detail::power_lengths(static_cast<int>(k), s);
                good += ok ? 1 : 0;
              }
              return compare(static_cast<long long>(good), static_cast<long long>(longish.size()));
            });
    E2Gadget gad(Basis::standard(g));
    for (int s = 2; s <= r; ++s) {
      E2Gadget::Mask m = (E2Gadget::Mask{1} << s) - 1;
      Sequence u = gad.U(m);
      int bound = std::min(3 * (s + 1), 14);
      b.claim("Delta(supp U) = {" + std::to_string(s - 1) + "} for U = " + format_sequence(u) + ", |B| <= " +
                  std::to_string(bound),
              ref, ClaimKind::Bounded, [&] {
                return compare(detail::format_ints(delta_bounded(g, u.support(), bound, opt.search)),
                               "{" + std::to_string(s - 1) + "}");
              });
    }

    // Squarefree zero-sum A: all of them over C2^3, a seeded sample otherwise.
    const std::uint32_t seed = 20110501u + static_cast<std::uint32_t>(r);
    std::vector<Sequence> sample;
    std::vector<ElemId> nonzero;
    for (ElemId x = 1; x < g.order(); ++x) nonzero.push_back(x);
    std::string how;
    if (r == 3) {
      for (std::uint32_t mask = 1; mask < (1u << nonzero.size()); ++mask) {
        Sequence a(g);
        for (std::size_t i = 0; i < nonzero.size(); ++i)
          if (mask >> i & 1) a.insert(nonzero[i]);
        if (is_zero_sum(a)) sample.push_back(std::move(a));
      }
      how = "all";
    } else {
      std::mt19937 rng(seed);
      std::set<Sequence> seen;
      while (sample.size() < 60) {
        std::vector<ElemId> pool = nonzero;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t t = 3 + rng() % 8;
        Sequence a(g);
        ElemId sum = g.zero_id();
        for (std::size_t i = 0; i + 1 < t; ++i) {
          a.insert(pool[i]);
          sum = g.add_id(sum, pool[i]);
        }
        if (sum == g.zero_id() || a.count(sum)) continue;
        a.insert(sum);
        if (seen.insert(a).second) sample.push_back(std::move(a));
      }
      how = "60 seeded (seed " + std::to_string(seed) + ")";
    }
    b.claim("c(A) <= " + std::to_string(r) + " and max Delta(L(A)) <= " + std::to_string(r - 2) + " for " + how +
                " squarefree zero-sum A over " + gs,
            ref, [&] {
              std::size_t good = 0;
              std::string first_bad;
              for (const auto& a : sample) {
                int c = catenary_degree(a);
                auto d = delta_of_set(calc(a));
                int md = d.empty() ? 0 : d.back();
                if (c <= r && md <= r - 2) {
                  ++good;
                } else if (first_bad.empty()) {
                  first_bad = "; first violation " + format_sequence(a);
                }
              }
              return holds(good == sample.size(),
                           std::to_string(good) + " of " + std::to_string(sample.size()) + first_bad,
                           std::to_string(sample.size()) + " of " + std::to_string(sample.size()));
            });
  }
  return b.take();
}

namespace detail {

struct BasisPlusSumTally {
  std::size_t checked = 0;  // A with Delta(L(A)) nonempty
  std::size_t agree = 0;
  std::size_t top_seen = 0;  // A with r-1 in Delta(L(A))
  std::string first_bad;
};

// Every zero-sum A over G \ {0} with |A| <= bound and Delta(L(A))
// nonempty: r-1 in Delta(L(A)) iff supp(A) is basis-plus-sum.
inline BasisPlusSumTally basis_plus_sum_tally(const AbelianGroup& g, int bound, const SearchOptions& opt) {
  const int r = g.rank();
  std::vector<ElemId> elems;
  for (ElemId x = 1; x < g.order(); ++x) elems.push_back(x);
  struct Branch {
    BasisPlusSumTally t;
    std::uint64_t nodes = 0;
    bool over = false;
  };
  auto run = [&](std::size_t first) {
    Branch br;
    LengthCalculator calc(g);
    std::map<std::uint64_t, bool> bps;
    std::vector<std::uint32_t> counts(g.order(), 0);
    int len = 0;
    auto rec = [&](auto&& self, std::size_t idx, ElemId sum, std::uint64_t mask) -> void {
      if (br.over) return;
      if (++br.nodes > opt.budget) {
        br.over = true;
        return;
      }
      ElemId x = elems[idx];
      ++counts[x];
      ++len;
      mask |= std::uint64_t{1} << x;
      ElemId s2 = g.add_id(sum, x);
      if (s2 == g.zero_id()) {
        auto bits = calc.compute_counts(counts);
        LengthSet l = zslen::detail::to_length_set(bits, 0);
        auto d = delta_of_set(l);
        if (!d.empty()) {
          auto it = bps.find(mask);
          if (it == bps.end()) {
            std::vector<ElemId> supp;
            for (ElemId y = 1; y < g.order(); ++y)
              if (mask >> y & 1) supp.push_back(y);
            it = bps.emplace(mask, is_basis_plus_sum(g, supp)).first;
          }
          bool top = std::binary_search(d.begin(), d.end(), r - 1);
          ++br.t.checked;
          br.t.top_seen += top ? 1 : 0;
          if (top == it->second) {
            ++br.t.agree;
          } else if (br.t.first_bad.empty()) {
            br.t.first_bad = format_sequence(Sequence(g, counts));
          }
        }
      }
      if (len < bound)
        for (std::size_t j = idx; j < elems.size(); ++j) self(self, j, s2, mask);
      --counts[x];
      --len;
    };
    rec(rec, first, g.zero_id(), 0);
    return br;
  };
  auto parts = zslen::detail::ordered_parallel(elems.size(), opt.threads, run, [](const Branch& x) { return x.over; });
  BasisPlusSumTally out;
  std::uint64_t nodes = 0;
  for (auto& p : parts) {
    if (!p) break;
    nodes += p->nodes;
    if (p->over || nodes > opt.budget) throw BudgetExceeded("basis-plus-sum enumeration", opt.budget);
    out.checked += p->t.checked;
    out.agree += p->t.agree;
    out.top_seen += p->t.top_seen;
    if (out.first_bad.empty()) out.first_bad = p->t.first_bad;
  }
  return out;
}

}  // namespace detail

inline Scenario lemma_3_5_2(const VerifyOptions& opt) {
  const std::string ref = "Lemma on basis-plus-sum supports";
  std::vector<AbelianGroup> groups{detail::elementary_two(3), detail::elementary_two(4)};
  ScenarioBuilder b("lemma-3.5_2", groups);
  for (const auto& g : groups) {
    const int r = g.rank();
    const int bound = r == 3 ? (opt.heavy ? 14 : 12) : 10;
    const std::string tag = " over " + g.to_string() + ", |A| <= " + std::to_string(bound);
    b.claim("r-1 in Delta(L(A)) iff supp(A) \\ {0} = {f_1, ..., f_r, f_1 + ... + f_r}" + tag, ref, ClaimKind::Bounded,
            [&] {
              auto t = detail::basis_plus_sum_tally(g, bound, opt.search);
              bool ok = t.agree == t.checked && t.top_seen > 0;
              return holds(ok,
                           std::to_string(t.agree) + " of " + std::to_string(t.checked) + " agree, " +
                               std::to_string(t.top_seen) + " with r-1 in Delta" +
                               (t.first_bad.empty() ? "" : "; first disagreement " + t.first_bad),
                           "all agree, some with r-1 in Delta");
            });
    const int star_bound = r == 3 ? 12 : 10;
    b.claim("min Delta(G1) = r-1 iff G1 is basis-plus-sum, over " + g.to_string() + ", |B| <= " +
                std::to_string(star_bound),
            ref, ClaimKind::Bounded, [&] {
              auto est = delta_star_bounded(g, star_bound, opt.search);
              std::size_t good = 0, top = 0;
              for (const auto& c : est.classes) {
                bool is_top = c.min_delta == r - 1;
                top += is_top ? 1 : 0;
                good += is_top == is_basis_plus_sum(g, c.representative) ? 1 : 0;
              }
              return holds(good == est.classes.size() && top == 1,
                           std::to_string(good) + " of " + std::to_string(est.classes.size()) + " classes agree, " +
                               std::to_string(top) + " with min Delta = r-1",
                           "all classes agree, 1 with min Delta = r-1");
            });
  }
  return b.take();
}

}  // namespace zslen::verify
