#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "zslen/zslen.hpp"

using namespace zslen;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Failures {
  std::size_t count = 0;
  std::string first;

  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  std::string summary() const { return count == 0 ? "" : "; " + std::to_string(count) + " failures, first: " + first; }
};

std::string trimmed(const std::ostringstream& os) {
  std::string s = os.str();
  while (!s.empty() && (s.back() == ' ' || s.back() == ';' || s.back() == ',')) s.pop_back();
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<const char*> kSmallGroups{"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "C2xC2xC2"};

// Every zero-sum B over the given elements with |B| <= max_len, as counts.
void for_each_zero_sum(const AbelianGroup& g, const std::vector<ElemId>& elems, int max_len,
                       const std::function<void(const std::vector<std::uint32_t>&, int)>& f) {
  std::vector<std::uint32_t> counts(g.order(), 0);
  auto rec = [&](auto&& self, std::size_t from, ElemId sum, int len) -> void {
    if (len > 0 && sum == g.zero_id()) f(counts, len);
    if (len == max_len) return;
    for (std::size_t j = from; j < elems.size(); ++j) {
      ++counts[elems[j]];
      self(self, j, g.add_id(sum, elems[j]), len + 1);
      --counts[elems[j]];
    }
  };
  rec(rec, 0, g.zero_id(), 0);
}

std::vector<ElemId> nonzero_elements(const AbelianGroup& g) {
  std::vector<ElemId> v;
  for (ElemId x = 1; x < g.order(); ++x) v.push_back(x);
  return v;
}

Result davenport_constants(bool) {
  Result r;
  Failures f;
  std::size_t checked = 0;
  auto check = [&](const std::string& spec, int expected) {
    int got = davenport(parse_group(spec));
    ++checked;
    if (got != expected) f.add("D(" + spec + ") = " + std::to_string(got) + ", expected " + std::to_string(expected));
  };
  for (int n = 2; n <= 9; ++n) check("C" + std::to_string(n), n);
  std::string e2 = "C2";
  for (int rank = 1; rank <= 4; ++rank, e2 += "xC2") check(e2, rank + 1);
  check("C2xC4", 5);
  check("C3xC3", 5);
  check("C5xC5", 9);
  r.pass = f.count == 0;
  r.detail = std::to_string(checked) + " groups" + f.summary();
  return r;
}

Result lemma_3_3_end_to_end(bool) {
  Result r;
  Failures f;
  AbelianGroup g = parse_group("C2xC4");
  verify::detail::C2C4Gadget gad(verify::Basis::standard(g));
  std::set<Sequence> longest;
  for (const auto& a : enumerate_atoms(g).atoms)
    if (a.length() == 5) longest.insert(a);
  if (longest != gad.with_negatives()) f.add("length-5 atoms differ from +-V_1, ..., +-V_4");
  const Sequence& u = gad.u();
  LengthSet l = length_set(product(negate(u), u));
  if (l != LengthSet{2, 4, 5}) f.add("L((-U)U) = " + l.to_string());
  for (int nu = 1; nu <= 4; ++nu) {
    if (!length_set(gad.paired(nu)).contains(5)) f.add("5 not in L((-U)U(-V_" + std::to_string(nu) + ")V_" + std::to_string(nu) + ")");
    Sequence prod(g);
    for (const auto& p : gad.refactorization(nu)) {
      if (!is_atom(p)) f.add("displayed factor " + format_sequence(p) + " is not an atom");
      prod = product(prod, p);
    }
    if (prod != gad.paired(nu)) f.add("displayed factorization " + std::to_string(nu) + " has the wrong product");
  }
  auto t0 = std::chrono::steady_clock::now();
  SearchOptions opt;
  opt.budget = 5'000'000;
  DecideResult d = decide_length_set(g, LengthSet{4, 6, 7, 8, 9, 10}, opt);
  double secs = seconds_since(t0);
  if (d.verdict != Verdict::NotRealizable) f.add(std::string("decide({4,6,7,8,9,10}) = ") + to_string(d.verdict));
  if (secs >= 60) f.add("decide took " + std::to_string(secs) + " s");
  r.pass = f.count == 0;
  std::ostringstream os;
  os << longest.size() << " atoms of length 5, L((-U)U) = " << l.to_string() << ", decide({4,6,7,8,9,10}) = "
     << to_string(d.verdict) << " in " << d.nodes << " nodes, " << secs << " s" << f.summary();
  r.detail = os.str();
  return r;
}

Result system_formulas(bool heavy) {
  Result r;
  Failures f;
  const int bound = heavy ? 14 : 12;
  std::ostringstream os;
  for (const char* spec : {"C3", "C3xC3", "C2xC2", "C2xC2xC2"}) {
    AbelianGroup g = parse_group(spec);
    SearchOptions opt;
    LengthSystem sys = enumerate_system(g, std::nullopt, BoundKind::SeqLength, bound, opt);
    LengthOracle oracle(g);
    auto cmp = verify::compare_with_form(sys, verify::system_form(g), oracle, opt);
    bool ok = cmp.outside_form.empty() && cmp.missing.empty() && cmp.unexpected.empty() && cmp.fitting == cmp.observed;
    if (!ok) f.add(std::string(spec) + ": outside " + verify::format_sets(cmp.outside_form) + ", missing " +
                   verify::format_sets(cmp.missing));
    os << spec << " " << cmp.observed << "/" << cmp.fitting << ", ";
  }
  r.pass = f.count == 0;
  r.detail = "bound " + std::to_string(bound) + ", observed/fitting: " + trimmed(os) + f.summary();
  return r;
}

Result theorem_table(bool heavy) {
  Result r;
  Failures f;
  std::ostringstream os;
  auto check = [&](const std::string& spec, ClosureVerdict expected, const ClosureReport& rep) {
    os << spec << " " << to_string(rep.verdict) << ", ";
    if (rep.verdict != expected) {
      f.add(spec + " " + to_string(rep.verdict));
      return;
    }
    if (expected != ClosureVerdict::NotClosed) return;
    if (!rep.witness) {
      f.add(spec + " without witness");
      return;
    }
    const auto& w = *rep.witness;
    AbelianGroup g = parse_group(spec);
    bool ok = length_set(w.first.witness) == w.first.set && length_set(w.second.witness) == w.second.set &&
              sumset(w.first.set, w.second.set) == w.sum &&
              decide_length_set(g, w.sum).verdict == Verdict::NotRealizable;
    if (!ok) f.add(spec + " witness does not check out");
  };
  for (const char* spec : {"C2", "C3", "C4", "C2xC2", "C2xC2xC2", "C3xC3"})
    check(spec, ClosureVerdict::ClosedAtBound, check_additively_closed(parse_group(spec), 12));
  for (const char* spec : {"C5", "C6", "C2xC4"})
    check(spec, ClosureVerdict::NotClosed, check_additively_closed(parse_group(spec), 12));
  if (heavy) {
    AbelianGroup g = parse_group("C2xC2xC2xC2");
    LengthOracle oracle(g);
    SearchOptions opt;
    auto seeds = verify::elementary_two_seeds(4, oracle, opt);
    check("C2xC2xC2xC2", ClosureVerdict::NotClosed, check_additively_closed(g, 6, opt, seeds, &oracle));
  }
  r.pass = f.count == 0;
  r.detail = trimmed(os) + f.summary();
  return r;
}

Result rho_and_elasticity(bool) {
  Result r;
  Failures f;
  std::ostringstream os;
  for (const char* spec : {"C3xC3", "C2xC4"}) {
    AbelianGroup g = parse_group(spec);
    LengthOracle oracle(g);
    const int dv = oracle.davenport();
    int r2 = oracle.rho(2).value, r4 = oracle.rho(4).value;
    if (r2 != dv) f.add(std::string(spec) + " rho_2 = " + std::to_string(r2));
    if (r4 != 2 * dv) f.add(std::string(spec) + " rho_4 = " + std::to_string(r4));
    if (std::string(spec) == "C3xC3") {
      int r3 = oracle.rho(3).value;
      if (r3 != 7) f.add("rho_3(C3xC3) = " + std::to_string(r3));
      os << "rho_3(C3xC3) = " << r3 << ", ";
    }
    Rational e = elasticity(g);
    if (!(e == Rational::make(dv, 2))) f.add(std::string(spec) + " elasticity " + e.to_string());
    std::size_t recovered = 0, tried = 0;
    for (const auto& u : oracle.atoms()) {
      if (static_cast<int>(u.length()) != dv) continue;
      ++tried;
      Sequence b = product(negate(u), u);
      auto dec = extremal_elasticity_decomposition(b);
      Sequence back(g);
      if (dec)
        for (const auto& x : *dec) back = product(back, product(negate(x), x));
      if (dec && dec->size() == 1 && back == b) ++recovered;
    }
    if (recovered != tried || tried == 0) f.add(std::string(spec) + " extremal decomposition recovered " +
                                                std::to_string(recovered) + "/" + std::to_string(tried));
    os << spec << ": rho_2 = " << r2 << ", rho_4 = " << r4 << ", elasticity " << e.to_string() << ", " << recovered
       << "/" << tried << " decompositions; ";
  }
  r.pass = f.count == 0;
  r.detail = trimmed(os) + f.summary();
  return r;
}

Result distance_properties(bool) {
  Result r;
  Failures f;
  std::size_t sequences = 0, pairs = 0, squarefree = 0;
  for (const char* spec : kSmallGroups) {
    AbelianGroup g = parse_group(spec);
    AtomSet atoms = enumerate_atoms(g);
    LengthCalculator calc(g);
    for_each_zero_sum(g, all_elements(g), 10, [&](const std::vector<std::uint32_t>& counts, int) {
      Sequence b(g, counts);
      ++sequences;
      auto z = zslen::detail::factorization_indices(b, atoms, kDefaultFactorizationCap);
      std::set<int> lens;
      for (const auto& x : z) lens.insert(static_cast<int>(x.size()));
      LengthSet l(std::vector<int>(lens.begin(), lens.end()));
      if (l != calc(b)) f.add("lengths of " + format_sequence(b));
      int c = catenary_degree_of(z);
      auto d = delta_of_set(l);
      int md = d.empty() ? 0 : d.back();
      if (z.size() >= 2 && !(2 + md <= c && c <= l.max())) f.add("c bounds fail for " + format_sequence(b));
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
          ++pairs;
          int gap = std::abs(static_cast<int>(z[i].size()) - static_cast<int>(z[j].size()));
          if (zslen::detail::index_distance(z[i], z[j]) < 2 + gap) f.add("distance bound fails for " + format_sequence(b));
        }
    });
  }
  for (int rank = 3; rank <= 4; ++rank) {
    std::string spec = "C2";
    for (int i = 1; i < rank; ++i) spec += "xC2";
    AbelianGroup g = parse_group(spec);
    AtomSet atoms = enumerate_atoms(g);
    std::vector<ElemId> nz = nonzero_elements(g);
    for (std::uint32_t mask = 1; mask < (1u << nz.size()); ++mask) {
      Sequence a(g);
      for (std::size_t i = 0; i < nz.size(); ++i)
        if (mask >> i & 1) a.insert(nz[i]);
      if (!is_zero_sum(a)) continue;
      ++squarefree;
      auto z = zslen::detail::factorization_indices(a, atoms, kDefaultFactorizationCap);
      std::set<int> lens;
      for (const auto& x : z) lens.insert(static_cast<int>(x.size()));
      auto d = delta_of_set(LengthSet(std::vector<int>(lens.begin(), lens.end())));
      int md = d.empty() ? 0 : d.back();
      if (catenary_degree_of(z) > rank || md > rank - 2) f.add("squarefree bound fails for " + format_sequence(a));
    }
  }
  r.pass = f.count == 0;
  r.detail = std::to_string(sequences) + " sequences, " + std::to_string(pairs) + " factorization pairs, " +
             std::to_string(squarefree) + " squarefree A over C2^3, C2^4" + f.summary();
  return r;
}

Result oracle_equivalence(bool) {
  Result r;
  Failures f;
  std::size_t candidates = 0, realizable = 0;
  for (const char* spec : kSmallGroups) {
    AbelianGroup g = parse_group(spec);
    LengthOracle oracle(g);
    const int dv = std::max(oracle.davenport(), 1);
    // Every B with min L(B) <= 3 is a product of at most three atoms.
    std::set<LengthSet> naive;
    LengthCalculator calc(g);
    std::vector<ElemId> nz = nonzero_elements(g);
    for_each_zero_sum(g, nz, 3 * dv, [&](const std::vector<std::uint32_t>& counts, int) {
      LengthSet l = calc(Sequence(g, counts));
      for (int v = 0; l.min() + v <= 3; ++v) naive.insert(l.shifted(v));
    });
    naive.insert(LengthSet{1});
    naive.insert(LengthSet{2});
    naive.insert(LengthSet{3});
    for (int m = 1; m <= 3; ++m) {
      const int hi = std::max(m, m * dv / 2) + 1;
      const int free = hi - m;
      for (std::uint32_t mask = 0; mask < (1u << free); ++mask) {
        std::vector<int> v{m};
        for (int i = 0; i < free; ++i)
          if (mask >> i & 1) v.push_back(m + 1 + i);
        LengthSet l(v);
        ++candidates;
        DecideResult d = oracle.decide(l);
        bool expected = naive.count(l) > 0;
        realizable += expected ? 1 : 0;
        if (d.verdict == Verdict::Inconclusive || (d.verdict == Verdict::Realizable) != expected)
          f.add(std::string(spec) + " " + l.to_string() + ": " + to_string(d.verdict));
        else if (d.witness && length_set(*d.witness) != l)
          f.add(std::string(spec) + " " + l.to_string() + ": witness has the wrong set");
      }
    }
  }
  r.pass = f.count == 0;
  r.detail = std::to_string(candidates) + " candidates, " + std::to_string(realizable) + " realizable" + f.summary();
  return r;
}

Result length_formulas(bool heavy) {
  Result r;
  Failures f;
  std::ostringstream os;
  verify::VerifyOptions vo;
  vo.heavy = heavy;
  for (const char* id : {"lem-length-r4", "lem-length-r5"}) {
    verify::Scenario s = verify::run_scenario(id, vo);
    std::size_t passed = 0;
    for (const auto& c : s.claims) {
      if (c.pass())
        ++passed;
      else
        f.add(std::string(id) + ": " + c.desc + " computed " + c.computed);
    }
    os << id << " " << passed << "/" << s.claims.size() << " claims, ";
  }
  r.pass = f.count == 0;
  r.detail = trimmed(os) + f.summary();
  return r;
}

Result aamp_structure(bool) {
  Result r;
  Failures f;
  std::ostringstream os;
  for (const char* spec : {"C3xC3", "C2xC4", "C2xC2xC2"}) {
    AbelianGroup g = parse_group(spec);
    AampSurvey s = aamp_survey(g, 12);
    for (const auto& e : s.entries) {
      bool d_ok = std::find(s.differences.begin(), s.differences.end(), e.best.d) != s.differences.end() ||
                  (s.differences.empty() && e.set.is_singleton());
      if (!d_ok || !is_aamp(e.set, e.best.d, s.max_bound)) f.add(std::string(spec) + " " + e.set.to_string());
    }
    int top = s.differences.empty() ? 0 : s.differences.back();
    int formula = std::max(g.exponent() - 2, g.rank() - 1);
    if (top != formula)
      f.add(std::string(spec) + " max Delta* estimate " + std::to_string(top) + " vs " + std::to_string(formula));
    os << spec << ": " << s.entries.size() << " sets, Delta* estimate max " << top << ", M = " << s.max_bound << "; ";
  }
  r.pass = f.count == 0;
  r.detail = trimmed(os) + f.summary();
  return r;
}

Result cli_determinism(bool) {
  Result r;
  Failures f;
  const std::vector<std::vector<std::string>> commands{
      {"atoms", "--group", "C2xC4"},
      {"davenport", "--group", "C3xC3"},
      {"factorize", "--group", "C2xC4", "--seq", "(0,1)^3 (1,0) (1,1) (0,3)^3 (1,0) (1,3)"},
      {"lengths", "--group", "C2xC4", "--seq", "(0,1)^3 (1,0) (1,1) (0,3)^3 (1,0) (1,3)"},
      {"catenary", "--group", "C3xC3", "--seq", "(0,1)^3 (1,0)^3 (1,1)^3 (2,2)^3"},
      {"system", "--group", "C2xC4", "--bound", "10"},
      {"system", "--group", "C3", "--bound", "4", "--kind", "num_atom_factors"},
      {"decide", "--group", "C3xC3", "--set", "2,3,4,5,6"},
      {"decide", "--group", "C2xC4", "--set", "4,6,7,8,9,10"},
      {"closed", "--group", "C2xC4", "--bound", "10"},
      {"closed", "--group", "C2xC2xC2", "--bound", "10"},
      {"rho", "--group", "C3xC3", "--k", "3", "--seq", "(0,1)^3 (1,0)^3 (1,1)^3 (2,2)^3"},
      {"delta", "--group", "C2xC4", "--bound", "10"},
      {"delta", "--group", "C2xC2xC2", "--bound", "10", "--star"},
      {"aamp", "--group", "C3xC3", "--bound", "10"},
      {"aamp", "--set", "2,5,8,9", "--d", "3"},
      {"verify", "--scenario", "lemma-3.3"},
      {"verify", "--scenario", "prop-el2-r2"},
  };
  std::size_t runs = 0;
  for (const auto& cmd : commands) {
    std::optional<std::string> reference;
    for (const char* threads : {"1", "4", "8"})
      for (bool sym : {false, true}) {
        std::vector<std::string> args = cmd;
        args.insert(args.end(), {"--json", "--threads", threads});
        if (sym) args.push_back("--symmetry");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        ++runs;
        if (code != 0) f.add(cmd[0] + " exited " + std::to_string(code) + ": " + err.str());
        if (!reference)
          reference = out.str();
        else if (*reference != out.str())
          f.add(cmd[0] + " output differs at --threads " + threads + (sym ? " --symmetry" : ""));
      }
  }
  r.pass = f.count == 0;
  r.detail = std::to_string(commands.size()) + " commands, " + std::to_string(runs) + " runs" + f.summary();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--heavy") == 0) heavy = true;
  const std::vector<std::pair<std::string, std::function<Result(bool)>>> criteria{
      {"Davenport constants", davenport_constants},
      {"C2xC4 lengths and the non-realizable {4,6,7,8,9,10}", lemma_3_3_end_to_end},
      {"system closed forms for C3, C3xC3, C2xC2, C2xC2xC2", system_formulas},
      {"additive closure verdict table", theorem_table},
      {"rho_k and elasticity", rho_and_elasticity},
      {"distance and catenary properties", distance_properties},
      {"decide against full sequence-space search", oracle_equivalence},
      {"length formulas over C2^4 and C2^5", length_formulas},
      {"AAMP structure of bounded systems", aamp_structure},
      {"CLI JSON determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = criteria[i].second(heavy);
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    failed += res.pass ? 0 : 1;
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << seconds_since(t0);
    std::cout << (res.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << res.detail << ") [" << secs.str() << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
