#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zslen/zslen.hpp"

namespace zslen::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kUsage = 2, kBudget = 3 };

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

struct Common {
  std::string group;
  bool json = false;
  std::uint64_t budget = default_budget_from_env();
  unsigned threads = default_threads();
  bool symmetry = false;
  std::size_t max_factorizations = kDefaultFactorizationCap;

  SearchOptions search() const { return SearchOptions{budget, threads, symmetry}; }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline json ints(const std::vector<int>& v) { return json(v); }
inline json ints(const LengthSet& l) { return json(l.values()); }

inline std::string braces(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

inline json elements(const AbelianGroup& g, const std::vector<ElemId>& ids) {
  json out = json::array();
  for (ElemId x : ids) out.push_back(g.format_element(x));
  return out;
}

inline std::string element_list(const AbelianGroup& g, const std::vector<ElemId>& ids) {
  std::string s;
  for (ElemId x : ids) s += (s.empty() ? "" : " ") + g.format_element(x);
  return s;
}

inline std::string seq_text(const Sequence& s) { return s.empty() ? "1" : format_sequence(s); }

inline AbelianGroup group_of(const Common& c) {
  if (c.group.empty()) throw UsageError("--group is required");
  return parse_group(c.group);
}

inline std::optional<std::vector<ElemId>> support_of(const AbelianGroup& g, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_sequence(g, text).support();
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

/// Parses the arguments (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of zero-sum sequence monoids over finite abelian groups", "zslen"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--group,-g", c.group, "group spec, e.g. C2xC4 or 2,4");
    sc->add_flag("--json", c.json, "JSON output");
    sc->add_option("--budget", c.budget, "search node cap (ZSLEN_BUDGET overrides the default)")
        ->check(CLI::PositiveNumber);
    sc->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sc->add_flag("--symmetry", c.symmetry, "reduce atom-multiset searches by automorphisms");
    sc->add_option("--max-factorizations", c.max_factorizations, "factorization enumeration cap")
        ->check(CLI::PositiveNumber);
  };

  std::string support, seq, set;
  std::optional<int> max_len, max_size, k, d, max_bound;
  int bound = 0;
  std::string kind = "seq_length";
  std::optional<bool> expect;
  std::vector<std::string> seeds;
  bool star = false, heavy = false;
  std::string scenario;

  auto* atoms = app.add_subcommand("atoms", "list the atoms over G or a support");
  add_common(atoms);
  atoms->add_option("--support", support, "support elements, e.g. \"(1,0) (0,1)\"");
  atoms->add_option("--max-len", max_len, "only atoms up to this length")->check(CLI::NonNegativeNumber);

  auto* dav = app.add_subcommand("davenport", "Davenport constant of G or a support");
  add_common(dav);
  dav->add_option("--support", support, "support elements");

  auto* fac = app.add_subcommand("factorize", "all factorizations of a zero-sum sequence");
  add_common(fac);
  fac->add_option("--seq", seq, "sequence, e.g. \"(0,1)^3 (1,0)\"")->required();

  auto* len = app.add_subcommand("lengths", "set of lengths of a zero-sum sequence");
  add_common(len);
  len->add_option("--seq", seq, "sequence")->required();

  auto* cat = app.add_subcommand("catenary", "catenary degree of a zero-sum sequence");
  add_common(cat);
  cat->add_option("--seq", seq, "sequence")->required();

  auto* sys = app.add_subcommand("system", "all sets of lengths within a bound");
  add_common(sys);
  sys->add_option("--bound", bound, "bound on |B| or on the number of atom factors")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sys->add_option("--kind", kind, "seq_length or num_atom_factors")
      ->check(CLI::IsMember({"seq_length", "num_atom_factors"}));
  sys->add_option("--support", support, "support elements");

  auto* dec = app.add_subcommand("decide", "whether a set of integers is a set of lengths over G");
  add_common(dec);
  dec->add_option("--set", set, "length set, e.g. \"4,6,7\" or \"{4,6,7}\"")->required();
  dec->add_option("--max-size", max_size, "only realizers of length <= N")->check(CLI::NonNegativeNumber);
  dec->add_option("--expect", expect, "exit 1 unless the verdict is realizable (true) or not (false)");

  auto* clo = app.add_subcommand("closed", "bounded additive-closure check of the system");
  add_common(clo);
  clo->add_option("--bound", bound, "bound on |B|")->required()->check(CLI::NonNegativeNumber);
  clo->add_option("--seed", seeds, "extra zero-sum sequence whose set joins the check (repeatable)");

  auto* rho = app.add_subcommand("rho", "rho_k(G), elasticity, extremal decompositions");
  add_common(rho);
  rho->add_option("--k", k, "k >= 1")->check(CLI::PositiveNumber);
  rho->add_option("--seq", seq, "sequence to test for an extremal decomposition");

  auto* del = app.add_subcommand("delta", "bounded distance sets");
  add_common(del);
  del->add_option("--bound", bound, "bound on |B|")->required()->check(CLI::PositiveNumber);
  del->add_option("--support", support, "support elements (default: all of G)");
  del->add_flag("--star", star, "estimate Delta*(G) per automorphism class of supports");

  auto* aam = app.add_subcommand("aamp", "almost arithmetical multiprogression structure");
  add_common(aam);
  aam->add_option("--set", set, "length set to decompose");
  aam->add_option("--d", d, "difference")->check(CLI::PositiveNumber);
  aam->add_option("--max-bound", max_bound, "test for an AAMP with this bound")->check(CLI::NonNegativeNumber);
  aam->add_option("--bound", bound, "with --group: survey the system within this bound")
      ->check(CLI::NonNegativeNumber);

  auto* ver = app.add_subcommand("verify", "run reproducibility scenarios");
  add_common(ver);
  ver->add_option("--scenario", scenario, "scenario id or 'all'")->required();
  ver->add_flag("--heavy", heavy, "include the expensive checks");

  auto usage = [&](const std::string& msg) {
    err << "zslen: " << msg << '\n' << kGroupGrammar << '\n' << "run 'zslen --help' for usage\n";
    return kUsage;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  const SearchOptions opt = c.search();
  try {
    if (atoms->parsed() || dav->parsed()) {
      AbelianGroup g = detail::group_of(c);
      auto sup = detail::support_of(g, support);
      std::vector<ElemId> sup_ids = ::zslen::detail::normalized_support(g, sup);
      int dv = davenport(g, sup, c.threads);
      json j{{"group", g.to_string()}, {"support", detail::elements(g, sup_ids)}, {"davenport", dv}};
      if (dav->parsed()) {
        if (c.json)
          detail::emit(out, j);
        else
          out << dv << '\n';
        return kOk;
      }
      AtomSet as = enumerate_atoms(g, sup, max_len, c.threads);
      json list = json::array();
      for (const auto& a : as.atoms) list.push_back(format_sequence(a));
      j["atoms"] = list;
      j["count"] = as.size();
      if (c.json) {
        detail::emit(out, j);
      } else {
        for (const auto& a : as.atoms) out << format_sequence(a) << '\n';
        out << "# " << as.size() << " atoms, D = " << dv << '\n';
      }
      return kOk;
    }

    if (fac->parsed() || len->parsed() || cat->parsed()) {
      AbelianGroup g = detail::group_of(c);
      Sequence b = parse_sequence(g, seq);
      LengthSet l = length_set(b);
      json j{{"seq", detail::seq_text(b)},
             {"lengths", detail::ints(l)},
             {"delta", detail::ints(delta_of_set(l))},
             {"catenary", nullptr},
             {"num_factorizations", nullptr}};
      if (len->parsed()) {
        if (c.json)
          detail::emit(out, j);
        else
          out << l.to_string() << '\n';
        return kOk;
      }
      AtomSet as = enumerate_atoms(g, b.support(), std::nullopt, c.threads);
      if (cat->parsed()) {
        auto z = ::zslen::detail::factorization_indices(b, as, c.max_factorizations);
        int cd = catenary_degree_of(z);
        j["catenary"] = cd;
        j["num_factorizations"] = z.size();
        if (c.json)
          detail::emit(out, j);
        else
          out << cd << '\n';
        return kOk;
      }
      auto zs = factorizations(b, as, c.max_factorizations);
      j["num_factorizations"] = zs.size();
      json list = json::array();
      for (const auto& z : zs) {
        json parts = json::array();
        for (const auto& p : z.parts) parts.push_back(format_sequence(p));
        list.push_back(parts);
      }
      j["factorizations"] = list;
      if (c.json) {
        detail::emit(out, j);
      } else {
        for (const auto& z : zs) {
          out << z.length() << ':';
          for (const auto& p : z.parts) out << " [" << format_sequence(p) << ']';
          out << '\n';
        }
        out << "# " << zs.size() << " factorizations, L = " << l.to_string() << '\n';
      }
      return kOk;
    }

    if (sys->parsed()) {
      AbelianGroup g = detail::group_of(c);
      BoundKind bk = kind == "seq_length" ? BoundKind::SeqLength : BoundKind::NumAtomFactors;
      LengthSystem s = enumerate_system(g, detail::support_of(g, support), bk, bound, opt);
      json sets = json::array();
      for (const auto& e : s.entries)
        sets.push_back(json{{"lengths", detail::ints(e.set)}, {"witness", detail::seq_text(e.witness)}});
      json j{{"group", g.to_string()}, {"bound", bound},       {"kind", to_string(bk)},
             {"support", detail::elements(g, s.support)}, {"sets", sets}, {"count", s.entries.size()}};
      if (c.json) {
        detail::emit(out, j);
      } else {
        for (const auto& e : s.entries) out << e.set.to_string() << "  " << detail::seq_text(e.witness) << '\n';
        out << "# " << s.entries.size() << " sets, " << to_string(bk) << " <= " << bound << '\n';
      }
      return kOk;
    }

    if (dec->parsed()) {
      AbelianGroup g = detail::group_of(c);
      LengthSet l = parse_length_set(set);
      LengthOracle oracle(g, c.threads);
      DecideResult r = oracle.decide(l, opt, max_size);
      json j{{"group", g.to_string()},
             {"set", detail::ints(l)},
             {"verdict", to_string(r.verdict)},
             {"max_size", max_size ? json(*max_size) : json(nullptr)},
             {"witness", r.witness ? json(detail::seq_text(*r.witness)) : json(nullptr)}};
      if (c.json) {
        detail::emit(out, j);
      } else {
        out << to_string(r.verdict) << '\n';
        if (r.witness) out << "witness: " << detail::seq_text(*r.witness) << '\n';
      }
      if (r.verdict == Verdict::Inconclusive) {
        err << "zslen: decision ran out of budget (" << c.budget << " nodes)\n";
        return kBudget;
      }
      if (expect && *expect != (r.verdict == Verdict::Realizable)) return kClaimFailed;
      return kOk;
    }

    if (clo->parsed()) {
      AbelianGroup g = detail::group_of(c);
      std::vector<Sequence> seed_seqs;
      for (const auto& s : seeds) seed_seqs.push_back(parse_sequence(g, s));
      for (const auto& s : seed_seqs)
        if (!is_zero_sum(s)) throw NotZeroSum("seed " + format_sequence(s) + " is not a zero-sum sequence");
      ClosureReport rep = check_additively_closed(g, bound, opt, seed_seqs);
      auto entry = [](const SystemEntry& e) {
        return json{{"lengths", detail::ints(e.set)}, {"witness", detail::seq_text(e.witness)}};
      };
      json pair = json::array(), failed = json::array(), inconclusive = json::array();
      if (rep.witness) {
        pair = json::array({entry(rep.witness->first), entry(rep.witness->second)});
        failed = detail::ints(rep.witness->sum);
      }
      for (const auto& p : rep.inconclusive)
        inconclusive.push_back(json{{"pair", json::array({entry(p.first), entry(p.second)})},
                                    {"sumset", detail::ints(p.sum)}});
      json j{{"group", g.to_string()},
             {"bound", bound},
             {"verdict", to_string(rep.verdict)},
             {"witness_pair", pair},
             {"failed_sumset", failed},
             {"inconclusive", inconclusive},
             {"system_size", rep.system_size},
             {"base_sets", rep.base_sets},
             {"pairs_checked", rep.pairs_checked}};
      if (c.json) {
        detail::emit(out, j);
      } else {
        out << to_string(rep.verdict) << '\n';
        out << rep.system_size << " sets with |B| <= " << bound << ", " << rep.base_sets << " checked, "
            << rep.pairs_checked << " pairs\n";
        if (rep.witness) {
          const auto& w = *rep.witness;
          out << w.first.set.to_string() << " + " << w.second.set.to_string() << " = " << w.sum.to_string()
              << " is not a set of lengths\n";
          out << "  " << w.first.set.to_string() << ": " << detail::seq_text(w.first.witness) << '\n';
          out << "  " << w.second.set.to_string() << ": " << detail::seq_text(w.second.witness) << '\n';
        }
        for (const auto& p : rep.inconclusive)
          out << "inconclusive: " << p.first.set.to_string() << " + " << p.second.set.to_string() << " = "
              << p.sum.to_string() << '\n';
      }
      return rep.verdict == ClosureVerdict::Inconclusive ? kBudget : kOk;
    }

    if (rho->parsed()) {
      AbelianGroup g = detail::group_of(c);
      if (!k && seq.empty()) throw UsageError("rho needs --k and/or --seq");
      json j{{"group", g.to_string()}, {"k", nullptr},   {"rho_k", nullptr},   {"witness", nullptr},
             {"seq", nullptr},         {"extremal", nullptr}, {"elasticity", nullptr}};
      if (g.order() >= 3) j["elasticity"] = elasticity(g).to_string();
      if (k) {
        LengthOracle oracle(g, c.threads);
        auto r = oracle.rho(*k, opt);
        j["k"] = *k;
        j["rho_k"] = r.value;
        j["witness"] = detail::seq_text(r.witness);
      }
      if (!seq.empty()) {
        Sequence b = parse_sequence(g, seq);
        j["seq"] = detail::seq_text(b);
        if (auto dec_parts = extremal_elasticity_decomposition(b)) {
          json parts = json::array();
          for (const auto& u : *dec_parts) parts.push_back(format_sequence(u));
          j["extremal"] = parts;
        }
      }
      if (c.json) {
        detail::emit(out, j);
      } else {
        if (k) out << "rho_" << *k << " = " << j["rho_k"].get<int>() << "  " << j["witness"].get<std::string>() << '\n';
        if (!j["elasticity"].is_null()) out << "elasticity = " << j["elasticity"].get<std::string>() << '\n';
        if (!seq.empty()) {
          if (j["extremal"].is_null()) {
            out << "no extremal decomposition\n";
          } else {
            out << "extremal: ";
            for (const auto& u : j["extremal"]) out << "(-U)U with U = " << u.get<std::string>() << "; ";
            out << '\n';
          }
        }
      }
      return kOk;
    }

    if (del->parsed()) {
      AbelianGroup g = detail::group_of(c);
      if (star) {
        DeltaStarEstimate est = delta_star_bounded(g, bound, opt);
        json classes = json::array();
        for (const auto& cl : est.classes)
          classes.push_back(json{{"representative", detail::elements(g, cl.representative)},
                                 {"class_size", cl.class_size},
                                 {"delta", detail::ints(cl.delta)},
                                 {"min_delta", cl.min_delta}});
        int top = est.values.empty() ? 0 : est.values.back();
        json j{{"group", g.to_string()}, {"bound", bound},  {"classes", classes},
               {"values", est.values},   {"max", top},      {"formula", std::max(g.exponent() - 2, g.rank() - 1)}};
        if (c.json) {
          detail::emit(out, j);
        } else {
          for (const auto& cl : est.classes)
            out << '{' << detail::element_list(g, cl.representative) << "} x" << cl.class_size
                << "  Delta = " << detail::braces(cl.delta) << "  min = " << cl.min_delta << '\n';
          out << "Delta* estimate at |B| <= " << bound << ": " << detail::braces(est.values) << ", max " << top
              << " (max{exp(G)-2, r(G)-1} = " << std::max(g.exponent() - 2, g.rank() - 1) << ")\n";
        }
        return kOk;
      }
      auto sup = detail::support_of(g, support);
      std::vector<int> dl = delta_bounded(g, sup, bound, opt);
      std::vector<ElemId> ids = ::zslen::detail::normalized_support(g, sup);
      json j{{"group", g.to_string()}, {"bound", bound}, {"support", detail::elements(g, ids)},
             {"delta", dl}, {"gcd", ::zslen::detail::gcd_of(dl)}};
      if (c.json)
        detail::emit(out, j);
      else
        out << detail::braces(dl) << '\n';
      return kOk;
    }

    if (aam->parsed()) {
      auto witness_json = [](const AampWitness& w) {
        return json{{"y", w.y},         {"d", w.d},           {"period", w.period}, {"bound", w.bound},
                    {"lower", w.lower}, {"central", w.central}, {"upper", w.upper}};
      };
      if (!set.empty()) {
        if (!d) throw UsageError("aamp --set needs --d");
        LengthSet l = parse_length_set(set);
        AampWitness w = min_aamp_bound(l, *d);
        json j{{"set", detail::ints(l)}, {"witness", witness_json(w)}, {"max_bound", nullptr}, {"is_aamp", nullptr}};
        if (max_bound) {
          j["max_bound"] = *max_bound;
          j["is_aamp"] = w.bound <= *max_bound;
        }
        if (c.json) {
          detail::emit(out, j);
        } else {
          out << l.to_string() << " = " << w.y << " + (" << detail::braces(w.lower) << " u " << detail::braces(w.central)
              << " u " << detail::braces(w.upper) << "), d = " << w.d << ", D = " << detail::braces(w.period)
              << ", M = " << w.bound << '\n';
          if (max_bound) out << (w.bound <= *max_bound ? "AAMP" : "not an AAMP") << " with bound " << *max_bound << '\n';
        }
        return kOk;
      }
      if (c.group.empty() || bound < 1) throw UsageError("aamp needs --set with --d, or --group with --bound");
      AbelianGroup g = detail::group_of(c);
      AampSurvey s = aamp_survey(g, bound, opt);
      json sets = json::array();
      for (const auto& e : s.entries)
        sets.push_back(json{{"lengths", detail::ints(e.set)}, {"witness", witness_json(e.best)}});
      json j{{"group", g.to_string()}, {"bound", bound}, {"differences", s.differences},
             {"max_bound", s.max_bound}, {"sets", sets}};
      if (c.json) {
        detail::emit(out, j);
      } else {
        for (const auto& e : s.entries)
          out << e.set.to_string() << "  d = " << e.best.d << ", M = " << e.best.bound << '\n';
        out << "# " << s.entries.size() << " sets, differences " << detail::braces(s.differences)
            << ", empirical M = " << s.max_bound << '\n';
      }
      return kOk;
    }

    if (ver->parsed()) {
      std::vector<std::string> ids;
      if (scenario == "all")
        ids = verify::scenario_ids();
      else
        ids.push_back(scenario);
      verify::VerifyOptions vo{heavy, opt};
      bool failed = false, inconclusive = false;
      json all = json::array();
      for (const auto& id : ids) {
        verify::Scenario sc = verify::run_scenario(id, vo);
        json groups = json::array(), claims = json::array();
        for (const auto& g : sc.groups) groups.push_back(g.to_string());
        for (const auto& cl : sc.claims) {
          failed = failed || cl.status == verify::ClaimStatus::Fail;
          inconclusive = inconclusive || cl.status == verify::ClaimStatus::Inconclusive;
          claims.push_back(json{{"desc", cl.desc},
                                {"ref", cl.ref},
                                {"kind", verify::to_string(cl.kind)},
                                {"status", verify::to_string(cl.status)},
                                {"pass", cl.pass()},
                                {"computed", cl.computed},
                                {"expected", cl.expected}});
        }
        all.push_back(json{{"scenario", sc.id}, {"groups", groups}, {"claims", claims}});
        if (!c.json) {
          std::string gl;
          for (const auto& g : sc.groups) gl += (gl.empty() ? "" : ", ") + g.to_string();
          out << "== " << sc.id << " [" << gl << "]\n";
          for (const auto& cl : sc.claims) {
            std::string tag = cl.status == verify::ClaimStatus::Pass   ? "PASS"
                              : cl.status == verify::ClaimStatus::Fail ? "FAIL"
                                                                       : "INCONCLUSIVE";
            out << tag << "  " << cl.desc << "  (" << cl.ref << "; " << verify::to_string(cl.kind) << ")\n";
            out << "      computed: " << cl.computed << '\n';
            if (!cl.pass()) out << "      expected: " << cl.expected << '\n';
          }
        }
      }
      if (c.json) detail::emit(out, ids.size() == 1 ? all[0] : json{{"scenarios", all}});
      if (failed) return kClaimFailed;
      if (inconclusive) return kBudget;
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "zslen: " << e.what() << '\n';
    return kBudget;
  } catch (const TooManyFactorizations& e) {
    err << "zslen: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  }
  return usage("no subcommand");
}

}  // namespace zslen::cli
