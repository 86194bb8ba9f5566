#pragma once

#include <set>
#include <string>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/distances.hpp"
#include "zslen/factorization.hpp"
#include "zslen/oracle.hpp"
#include "zslen/sumset.hpp"
#include "zslen/verify/basis.hpp"
#include "zslen/verify/checks.hpp"

namespace zslen::verify {

namespace detail {

// The four atoms V_1 = U, V_2, V_3, V_4 of length 5 over C2xC4 and the
// displayed length-5 factorizations of (-U)U(-V_nu)V_nu.
struct C2C4Gadget {
  explicit C2C4Gadget(Basis b) : basis(std::move(b)) {
    v = {
        basis.seq({{{0, 1}, 3}, {{1, 0}, 1}, {{1, 1}, 1}}),
        basis.seq({{{0, 1}, 3}, {{1, 2}, 1}, {{1, -1}, 1}}),
        basis.seq({{{1, 1}, 3}, {{1, 0}, 1}, {{0, 1}, 1}}),
        basis.seq({{{1, 1}, 3}, {{1, 2}, 1}, {{0, -1}, 1}}),
    };
  }

  const Sequence& u() const { return v[0]; }

  std::vector<Sequence> refactorization(int nu) const {
    const Sequence mu = negate(u());
    const Sequence mv = negate(v[static_cast<std::size_t>(nu - 1)]);
    switch (nu) {
      case 1:
        return {basis.seq({{{1, 1}, 2}, {{0, 1}, 2}}), basis.seq({{{0, 1}, 4}}), basis.seq({{{1, 0}, 2}}), mu, mu};
      case 2:
        return {basis.seq({{{0, 1}, 4}}), basis.seq({{{1, 1}, 1}, {{1, 2}, 1}, {{0, 1}, 1}}),
                basis.seq({{{1, 0}, 1}, {{1, -1}, 1}, {{0, 1}, 1}}), mu, mv};
      case 3:
        return {basis.seq({{{1, 1}, 4}}), basis.seq({{{0, 1}, 4}}), basis.seq({{{1, 0}, 2}}), mu, mv};
      default:
        return {basis.seq({{{1, 1}, 4}}), basis.seq({{{1, 2}, 1}, {{0, 1}, 2}, {{1, 0}, 1}}),
                basis.seq({{{0, -1}, 1}, {{0, 1}, 1}}), mu, mv};
    }
  }

  Sequence paired(int nu) const {
    const Sequence& w = v[static_cast<std::size_t>(nu - 1)];
    return product(product(negate(u()), u()), product(negate(w), w));
  }

  std::set<Sequence> with_negatives() const {
    std::set<Sequence> s;
    for (const auto& w : v) {
      s.insert(w);
      s.insert(negate(w));
    }
    return s;
  }

  Basis basis;
  std::vector<Sequence> v;
};

}  // namespace detail

inline Scenario lemma_3_3(const VerifyOptions& opt) {
  const AbelianGroup g = parse_group("C2xC4");
  const std::string ref = "Lemma 3.3";
  ScenarioBuilder b("lemma-3.3", {g});
  LengthCalculator calc(g);
  detail::C2C4Gadget std_g(Basis::standard(g));
  detail::C2C4Gadget skew_g(Basis::skewed(g));
  const LengthSet l{2, 4, 5};

  b.claim("D(C2xC4) = 5", ref, [&] { return compare(davenport(g, std::nullopt, opt.search.threads), 5); });
  std::set<Sequence> longest;
  for (auto& a : atoms_of_max_length(g, opt.search.threads)) longest.insert(a);
  for (const auto* gad : {&std_g, &skew_g}) {
    std::string tag = " (basis " + gad->basis.to_string() + ")";
    b.claim("the atoms of length 5 are exactly +-V_1, ..., +-V_4" + tag, ref, [&] {
      auto listed = gad->with_negatives();
      bool ok = listed == longest && listed.size() == 8;
      return holds(ok, std::to_string(longest.size()) + " atoms of length 5, listed " + std::to_string(listed.size()) +
                           (listed == longest ? ", equal" : ", different"),
                   "8 atoms of length 5, listed 8, equal");
    });
    b.claim("L((-U)U) = {2,4,5} for U = e2^3 e1 (e1+e2)" + tag, ref,
            [&] { return compare(calc(product(negate(gad->u()), gad->u())), l); });
    for (int nu = 1; nu <= 4; ++nu)
      b.claim("displayed length-5 factorization of (-U)U(-V_" + std::to_string(nu) + ")V_" + std::to_string(nu) + tag,
              ref, [&] { return displayed_factorization(gad->refactorization(nu), gad->paired(nu), calc); });
  }
  const LengthSet sum = sumset(l, l);
  b.claim("L + L = {4,6,7,8,9,10}", ref, [&] { return compare(sum, LengthSet{4, 6, 7, 8, 9, 10}); });
  b.claim("{4,6,7,8,9,10} is not a set of lengths over C2xC4", ref, [&] {
    LengthOracle oracle(g, opt.search.threads);
    auto r = conclusive(oracle.decide(sum, opt.search), opt.search.budget);
    return compare(std::string(to_string(r.verdict)), "not realizable");
  });
  return b.take();
}

namespace detail {

// W = f1^4 (a_1 f1 + f2) ... (a_5 f1 + f2) for every basis (f1, f2) of
// C5xC5 and every a in [0,4]^5 (as a multiset), kept when W is an atom of
// length 9.
inline std::set<Sequence> structural_length_nine(const AbelianGroup& g) {
  std::set<Sequence> out;
  for (ElemId f1 = 1; f1 < g.order(); ++f1)
    for (ElemId f2 = 1; f2 < g.order(); ++f2) {
      std::vector<GroupElement> pair{g.element(f1), g.element(f2)};
      if (!g.is_basis(pair)) continue;
      Basis basis(g, {f1, f2});
      std::vector<int> a(5, 0);
      auto rec = [&](auto&& self, std::size_t i, int from) -> void {
        if (i == a.size()) {
          Sequence w = basis.seq({{{1, 0}, 4}});
          for (int ai : a) w.insert(basis.combine({ai, 1}));
          if (w.length() == 9 && is_atom(w)) out.insert(std::move(w));
          return;
        }
        for (int x = from; x <= 4; ++x) {
          a[i] = x;
          self(self, i + 1, x);
        }
      };
      rec(rec, 0, 0);
    }
  return out;
}

}  // namespace detail

inline Scenario lemma_3_4_light(const VerifyOptions& opt) {
  const AbelianGroup g = parse_group("C5xC5");
  const std::string ref = "Lemma 3.4";
  ScenarioBuilder b("lemma-3.4-light", {g});
  LengthCalculator calc(g);
  const LengthSet l{2, 5, 8, 9};
  for (const Basis& basis : {Basis::standard(g), Basis::skewed(g)}) {
    b.claim("L((-U)U) = {2,5,8,9} for U = e1^4 e2^4 (e1+e2) (basis " + basis.to_string() + ")", ref, [&] {
      Sequence u = basis.seq({{{1, 0}, 4}, {{0, 1}, 4}, {{1, 1}, 1}});
      return compare(calc(product(negate(u), u)), l);
    });
  }
  for (int k = 1; k <= 3; ++k)
    b.claim("k = " + std::to_string(k) + ": min L_k = 2k and min(L_k \\ {2k}) = 2k + 3", ref, ClaimKind::FiniteCase,
            [&] {
              LengthSet lk = k_fold(l, k);
              int second = lk.size() > 1 ? lk.values()[1] : -1;
              return compare(std::to_string(lk.min()) + ", " + std::to_string(second),
                             std::to_string(2 * k) + ", " + std::to_string(2 * k + 3));
            });

  std::set<Sequence> family;
  b.claim("3 in L(W^2) and W^2 has a term of multiplicity >= 5, for every structural W of length 9", ref, [&] {
    family = detail::structural_length_nine(g);
    std::size_t good = 0;
    for (const auto& w : family) {
      Sequence w2 = power(w, 2);
      if (!calc(w2).contains(3)) continue;
      bool has_fifth_power = false;
      for (ElemId x : w2.support()) has_fifth_power = has_fifth_power || w2.count(x) >= 5;
      good += has_fifth_power ? 1 : 0;
    }
    return holds(!family.empty() && good == family.size(),
                 std::to_string(good) + " of " + std::to_string(family.size()) + " atoms",
                 "all " + std::to_string(family.size()) + " atoms");
  });
  if (opt.heavy) {
    b.claim("D(C5xC5) = 9", ref, [&] { return compare(davenport(g, std::nullopt, opt.search.threads), 9); });
    b.claim("the structural form yields every atom of length 9 (full enumeration)", ref, [&] {
      std::set<Sequence> all;
      for (auto& a : atoms_of_max_length(g, opt.search.threads)) all.insert(a);
      return holds(all == family,
                   std::to_string(all.size()) + " atoms of length 9, " + std::to_string(family.size()) + " structural" +
                       (all == family ? ", equal" : ", different"),
                   "equal");
    });
  }
  return b.take();
}

inline Scenario prop_3_8_r2(const VerifyOptions& opt) {
  const AbelianGroup g = parse_group("C3xC3");
  const std::string ref = "Proposition 3.8";
  ScenarioBuilder b("prop-3.8-r2", {g, parse_group("C3xC3xC3")});
  LengthCalculator calc(g);
  b.claim("D(C3xC3) = 5", ref, [&] { return compare(davenport(g, std::nullopt, opt.search.threads), 5); });
  for (const Basis& basis : {Basis::standard(g), Basis::skewed(g)}) {
    std::string tag = " (basis " + basis.to_string() + ")";
    Sequence u = basis.seq({{{1, 0}, 2}, {{0, 1}, 2}, {{1, 1}, 1}});
    Sequence w3 = basis.seq({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}});
    Sequence w4 = basis.seq({{{1, 0}, 2}, {{0, 1}, 1}, {{1, -1}, 1}});
    Sequence pu = product(negate(u), u);
    Sequence p3 = product(negate(w3), w3);
    Sequence p4 = product(negate(w4), w4);
    b.claim("L((-U)U) = [2,5] for U = e1^2 e2^2 e0" + tag, ref,
            [&] { return compare(calc(pu), LengthSet::interval(2, 5)); });
    b.claim("L((-W3)W3) = [2,3] for W3 = e1 e2 (-e0)" + tag, ref,
            [&] { return compare(calc(p3), LengthSet::interval(2, 3)); });
    b.claim("L((-W4)W4) = [2,4] for W4 = e1^2 e2 (e1-e2)" + tag, ref,
            [&] { return compare(calc(p4), LengthSet::interval(2, 4)); });
    for (std::uint32_t k = 1; k <= 3; ++k) {
      std::string ks = std::to_string(k);
      int ki = static_cast<int>(k);
      Sequence base = power(pu, k);
      b.claim("L((-U)^k U^k) = [2k, 5k] for k = " + ks + tag, ref,
              [&] { return compare(calc(base), LengthSet::interval(2 * ki, 5 * ki)); });
      b.claim("L((-U)^k U^k (-W3)W3) = [2k+2, 5k+3] for k = " + ks + tag, ref,
              [&] { return compare(calc(product(base, p3)), LengthSet::interval(2 * ki + 2, 5 * ki + 3)); });
      b.claim("L((-U)^k U^k (-W4)W4) = [2k+2, 5k+4] for k = " + ks + tag, ref,
              [&] { return compare(calc(product(base, p4)), LengthSet::interval(2 * ki + 2, 5 * ki + 4)); });
    }
  }
  b.claim("rho_k(C3xC3) = floor(5k/2) for k in [2,5]", ref, ClaimKind::FiniteCase, [&] {
    LengthOracle oracle(g, opt.search.threads);
    std::vector<std::string> got, want;
    for (int k = 2; k <= 5; ++k) {
      got.push_back(std::to_string(oracle.rho(k, opt.search).value));
      want.push_back(std::to_string(5 * k / 2));
    }
    return compare(join(got), join(want));
  });
  b.claim("Delta(L) = {1} for every L over C3xC3 with |B| <= 10", ref, ClaimKind::Bounded, [&] {
    auto d = delta_bounded(g, std::nullopt, 10, opt.search);
    std::vector<std::string> s;
    for (int x : d) s.push_back(std::to_string(x));
    return compare("{" + join(s, ",") + "}", "{1}");
  });
  add_form_claims(b, g, opt.heavy ? 16 : 12, ref, opt);

  const AbelianGroup g3 = parse_group("C3xC3xC3");
  b.claim("L((-U)U) = [2,5] u {7} over C3xC3xC3 for U = e1^2 e2^2 e3^2 e0", ref, [&] {
    Basis basis = Basis::standard(g3);
    Sequence u = basis.seq({{{1, 0, 0}, 2}, {{0, 1, 0}, 2}, {{0, 0, 1}, 2}, {{1, 1, 1}, 1}});
    return compare(length_set(product(negate(u), u)), LengthSet{2, 3, 4, 5, 7});
  });
  return b.take();
}

inline Scenario prop_3_9_witnesses(const VerifyOptions& opt) {
  const std::string ref = "Proposition 3.9";
  std::vector<AbelianGroup> groups;
  for (const char* name : {"C2xC4", "C2xC6", "C3xC6", "C4xC4", "C2xC8", "C2xC2xC4"}) groups.push_back(parse_group(name));
  ScenarioBuilder b("prop-3.9-witnesses", groups);
  for (const auto& g : groups) {
    int n = g.exponent();
    int d0 = 1;
    for (int ni : g.factors()) d0 += ni / 2;
    int top = std::max(n, d0);
    b.claim("{2,d} in L(" + g.to_string() + ") for d in [3, " + std::to_string(top) + "] (n = " + std::to_string(n) +
                ", d0 = " + std::to_string(d0) + ")",
            ref, [&] {
              LengthOracle oracle(g, opt.search.threads);
              std::vector<std::string> bad;
              for (int d = 3; d <= top; ++d) {
                LengthSet l{2, d};
                auto r = conclusive(oracle.decide(l, opt.search), opt.search.budget);
                if (r.verdict != Verdict::Realizable || oracle.lengths(*r.witness) != l) bad.push_back(std::to_string(d));
              }
              return holds(bad.empty(), "unrealized d: [" + join(bad) + "]", "unrealized d: []");
            });
  }
  return b.take();
}

}  // namespace zslen::verify
