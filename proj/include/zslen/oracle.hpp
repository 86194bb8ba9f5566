#pragma once

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cstdint>
#include <cstring>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/automorphism.hpp"
#include "zslen/detail/parallel.hpp"
#include "zslen/factorization.hpp"
#include "zslen/length_set.hpp"
#include "zslen/options.hpp"
#include "zslen/sequence.hpp"

namespace zslen {

enum class Verdict { Realizable, NotRealizable, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Realizable:
      return "realizable";
    case Verdict::NotRealizable:
      return "not realizable";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct DecideResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Sequence> witness;
  /// Search nodes visited. Depends on the symmetry flag, not on threads.
  std::uint64_t nodes = 0;
};

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) n = -n, d = -d;
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  bool operator==(const Rational&) const = default;
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

namespace detail {

/// Pool of length calculators so that parallel branches never share a memo.
class CalculatorPool {
 public:
  explicit CalculatorPool(AbelianGroup g) : group_(std::move(g)) {}

  class Lease {
   public:
    Lease(CalculatorPool& pool, std::unique_ptr<LengthCalculator> calc) : pool_(pool), calc_(std::move(calc)) {}
    Lease(const Lease&) = delete;
    Lease& operator=(const Lease&) = delete;
    ~Lease() { pool_.release(std::move(calc_)); }
    LengthCalculator& operator*() { return *calc_; }
    LengthCalculator* operator->() { return calc_.get(); }

   private:
    CalculatorPool& pool_;
    std::unique_ptr<LengthCalculator> calc_;
  };

  Lease acquire() {
    std::lock_guard lock(mu_);
    if (free_.empty()) return Lease(*this, std::make_unique<LengthCalculator>(group_, 1'000'000));
    auto c = std::move(free_.back());
    free_.pop_back();
    return Lease(*this, std::move(c));
  }

 private:
  void release(std::unique_ptr<LengthCalculator> c) {
    std::lock_guard lock(mu_);
    free_.push_back(std::move(c));
  }

  AbelianGroup group_;
  std::mutex mu_;
  std::vector<std::unique_ptr<LengthCalculator>> free_;
};

inline LengthBits bits_of(const LengthSet& l) {
  LengthBits b;
  for (int x : l.values()) {
    if (x >= static_cast<int>(b.size())) throw std::invalid_argument("lengths above 127 are not supported");
    b.set(static_cast<std::size_t>(x));
  }
  return b;
}

}  // namespace detail

/// Shared state for exact questions about L(G): the nonzero atoms of G,
/// sorted by length descending (ties in canonical order), a pool of memoized
/// length calculators, and lazily computed automorphism data.
class LengthOracle {
 public:
  explicit LengthOracle(const AbelianGroup& g, unsigned threads = 1) : group_(g), pool_(g) {
    AtomSet all = enumerate_atoms(g, std::nullopt, std::nullopt, threads);
    for (auto& a : all.atoms)
      if (!a.count(g.zero_id())) atoms_.push_back(std::move(a));
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const Sequence& a, const Sequence& b) { return a.length() > b.length(); });
    davenport_ = all.max_len;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      lengths_.push_back(static_cast<int>(atoms_[i].length()));
      std::vector<std::pair<ElemId, std::uint32_t>> terms;
      for (ElemId x : atoms_[i].support()) terms.emplace_back(x, atoms_[i].count(x));
      terms_.push_back(std::move(terms));
      index_.emplace(key(atoms_[i].counts()), i);
    }
    const std::size_t n = atoms_.size();
    if (n <= kMaxPairTableAtoms && davenport_ < 64) {
      pairs_.reset(new std::atomic<std::uint64_t>[n * (n + 1) / 2]);
      for (std::size_t k = 0; k < n * (n + 1) / 2; ++k) pairs_[k].store(0, std::memory_order_relaxed);
    }
  }

  /// Above this many atoms the pairwise length table is not kept.
  static constexpr std::size_t kMaxPairTableAtoms = 4096;

  const AbelianGroup& group() const { return group_; }
  /// Nonzero atoms, longest first.
  const std::vector<Sequence>& atoms() const { return atoms_; }
  int davenport() const { return davenport_; }

  LengthSet lengths(const Sequence& b) {
    auto calc = pool_.acquire();
    return (*calc)(b);
  }

  /// Exact decision of L in L(G).
  ///
  /// Any B with L(B) = L and m = min L is 0^v B' with B' zero-free and a
  /// product of exactly m - v nonzero atoms, so the search enumerates
  /// multisets of m - v nonzero atoms for v = m-2, ..., 0 and compares
  /// L(B') with L - v. Singletons {m} are realized by 0^m. Sequences in
  /// `hints` are tried first; `max_size` restricts witnesses to |B| <= max_size.
  DecideResult decide(const LengthSet& l, const SearchOptions& opt = {}, std::optional<int> max_size = std::nullopt,
                      const std::vector<Sequence>& hints = {}) {
    if (l.empty()) throw std::invalid_argument("decide: empty length set");
    DecideResult res;
    const int m = l.min();
    if (m == 0) {
      res.verdict = l.is_singleton() ? Verdict::Realizable : Verdict::NotRealizable;
      if (l.is_singleton()) res.witness = Sequence(group_);
      return res;
    }
    if (l.is_singleton()) {
      if (max_size && *max_size < m) {
        // shortest realizer is 0^m
        res.verdict = Verdict::NotRealizable;
        return res;
      }
      Sequence w(group_);
      w.insert(group_.zero_id(), static_cast<std::uint32_t>(m));
      res.verdict = Verdict::Realizable;
      res.witness = std::move(w);
      return res;
    }
    const detail::LengthBits target = detail::bits_of(l);
    for (const auto& h : hints) {
      if (max_size && static_cast<int>(h.length()) > *max_size) continue;
      if (!is_zero_sum(h)) continue;
      std::uint32_t zeros = 0;
      detail::LengthBits b;
      {
        auto calc = pool_.acquire();
        b = calc->compute(h, zeros);
      }
      if (zeros <= 127 && (b << zeros) == target) {
        res.verdict = Verdict::Realizable;
        res.witness = h;
        return res;
      }
    }
    std::uint64_t left = opt.budget;
    for (int v = m - 2; v >= 0; --v) {
      detail::LengthBits t = target >> static_cast<std::size_t>(v);
      int cap = max_size ? *max_size - v : std::numeric_limits<int>::max();
      auto found = search(t, m - v, l.max() - v, cap, opt, left);
      res.nodes += found.nodes;
      if (found.verdict == Verdict::Inconclusive) {
        res.verdict = Verdict::Inconclusive;
        return res;
      }
      if (found.verdict == Verdict::Realizable) {
        Sequence w = *found.witness;
        w.insert(group_.zero_id(), static_cast<std::uint32_t>(v));
        res.verdict = Verdict::Realizable;
        res.witness = std::move(w);
        return res;
      }
      left -= found.nodes;
    }
    res.verdict = Verdict::NotRealizable;
    return res;
  }

  struct RhoResult {
    int value = 0;
    Sequence witness;
    std::uint64_t nodes = 0;
  };

  /// rho_k(G) = max { max L : k in L in L(G) }: branch and bound over
  /// products of exactly k nonzero atoms.
  RhoResult rho(int k, const SearchOptions& opt = {}) {
    if (k < 1) throw std::invalid_argument("rho_k needs k >= 1");
    RhoResult res;
    res.witness = Sequence(group_);
    if (atoms_.empty()) {
      // Only the zero atom: every B is 0^k.
      res.value = k;
      res.witness.insert(group_.zero_id(), static_cast<std::uint32_t>(k));
      return res;
    }
    if (k == 1) {
      res.value = 1;
      res.witness = atoms_.front();
      return res;
    }
    const int ceiling = k * davenport_ / 2;
    struct Branch {
      int best = 0;
      std::vector<std::size_t> tuple;
      std::uint64_t nodes = 0;
      bool over = false;
    };
    const std::uint64_t budget = opt.budget;
    auto run = [&](std::size_t first) {
      Branch br;
      auto calc = pool_.acquire();
      std::vector<std::uint32_t> counts(group_.order(), 0);
      std::vector<std::size_t> chosen;
      auto add = [&](std::size_t i, int sign) {
        for (auto [x, c] : terms_[i]) counts[x] = sign > 0 ? counts[x] + c : counts[x] - c;
      };
      auto rec = [&](auto&& self, std::size_t from, int s) -> bool {
        int j = static_cast<int>(chosen.size());
        for (std::size_t i = from; i < atoms_.size(); ++i) {
          int s2 = s + lengths_[i];
          int bound = (s2 + (k - j - 1) * lengths_[i]) / 2;
          if (bound <= br.best) break;
          if (++br.nodes > budget) {
            br.over = true;
            return true;
          }
          add(i, +1);
          chosen.push_back(i);
          bool stop = false;
          if (j + 1 == k) {
            int mx = static_cast<int>(max_length(calc->compute_counts(counts)));
            if (mx > br.best) {
              br.best = mx;
              br.tuple = chosen;
              stop = mx >= ceiling;
            }
          } else {
            stop = self(self, i, s2);
          }
          chosen.pop_back();
          add(i, -1);
          if (stop) return true;
        }
        return false;
      };
      br.nodes = 1;
      add(first, +1);
      chosen.push_back(first);
      rec(rec, first, lengths_[first]);
      return br;
    };
    auto parts = detail::ordered_parallel(atoms_.size(), opt.threads, run,
                                          [&](const Branch& b) { return b.over || b.best >= ceiling; });
    std::uint64_t total = 0;
    for (auto& p : parts) {
      if (!p) break;
      total += p->nodes;
      if (p->over || total > budget) throw BudgetExceeded("rho_" + std::to_string(k) + " search", budget);
      if (p->best > res.value) {
        res.value = p->best;
        Sequence w(group_);
        for (std::size_t i : p->tuple) w = product(w, atoms_[i]);
        res.witness = std::move(w);
      }
      if (p->best >= ceiling) break;
    }
    res.nodes = total;
    return res;
  }

 private:
  struct SearchOutcome {
    Verdict verdict = Verdict::NotRealizable;
    std::optional<Sequence> witness;
    std::uint64_t nodes = 0;
  };

  static std::size_t max_length(const detail::LengthBits& b) {
    for (std::size_t i = b.size(); i-- > 0;)
      if (b[i]) return i;
    return 0;
  }

  static std::string key(std::span<const std::uint32_t> counts) {
    std::string k(counts.size() * sizeof(std::uint32_t), '\0');
    std::memcpy(k.data(), counts.data(), k.size());
    return k;
  }

  /// Index of phi(atom i).
  std::size_t image(const Automorphism& phi, std::size_t i) const {
    std::vector<std::uint32_t> c(group_.order(), 0);
    for (auto [x, n] : terms_[i]) c[phi[x]] += n;
    return index_.at(key(c));
  }

  void prepare_symmetry() {
    std::call_once(sym_once_, [&] {
      auto autos = automorphisms(group_);
      if (!autos) return;
      autos_ = std::move(*autos);
      orbit_rep_.assign(atoms_.size(), 0);
      std::vector<char> seen(atoms_.size(), 0);
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (seen[i]) continue;
        orbit_rep_[i] = 1;
        for (const auto& phi : autos_) seen[image(phi, i)] = 1;
      }
    });
  }

  // Multisets of exactly `m` nonzero atoms with L(product) == target.
  SearchOutcome search(const detail::LengthBits& target, int m, int max_target, int size_cap, const SearchOptions& opt,
                       std::uint64_t budget) {
    const bool sym = opt.symmetry && (prepare_symmetry(), !autos_.empty());
    const int min_len = atoms_.empty() ? 0 : lengths_.back();
    struct Branch {
      bool found = false;
      bool over = false;
      std::uint64_t nodes = 0;
      std::vector<std::size_t> tuple;
    };
    auto run = [&](std::size_t first) {
      Branch br;
      if (lengths_[first] * m < 2 * max_target) return br;  // branch cannot reach max L
      if (lengths_[first] + (m - 1) * min_len > size_cap) return br;
      if (sym && !orbit_rep_[first]) return br;
      br.nodes = 1;
      auto calc = pool_.acquire();
      std::vector<std::uint32_t> counts(group_.order(), 0);
      std::vector<std::uint32_t> scratch(group_.order(), 0);
      std::vector<std::size_t> chosen{first};
      for (auto [x, c] : terms_[first]) counts[x] += c;
      // Any two chosen atoms A, A' force L(AA') + (m - 2) into the target.
      auto pairs_fit = [&](std::size_t i) {
        if (!pairs_ || m < 2) return true;
        for (std::size_t c : chosen) {
          std::uint64_t p = pair_lengths(c, i, *calc, scratch);
          if (((detail::LengthBits(p) << static_cast<std::size_t>(m - 2)) & ~target).any()) return false;
        }
        return true;
      };
      std::vector<std::uint32_t> tied;
      if (sym)
        for (std::uint32_t p = 0; p < autos_.size(); ++p)
          if (image(autos_[p], first) == first) tied.push_back(p);

      auto rec = [&](auto&& self, std::size_t from, int s, const std::vector<std::uint32_t>& ties) -> bool {
        const int j = static_cast<int>(chosen.size());
        std::vector<std::uint32_t> next_ties;
        for (std::size_t i = from; i < atoms_.size(); ++i) {
          const int s2 = s + lengths_[i];
          if (s2 + (m - j - 1) * lengths_[i] < 2 * max_target) break;
          if (s2 + (m - j - 1) * min_len > size_cap) continue;
          if (++br.nodes > budget) {
            br.over = true;
            return true;
          }
          if (sym) {
            next_ties.clear();
            bool smaller = false;
            for (std::uint32_t p : ties) {
              std::size_t im = image(autos_[p], i);
              if (im < i) {
                smaller = true;
                break;
              }
              if (im == i) next_ties.push_back(p);
            }
            if (smaller) continue;
          }
          if (!pairs_fit(i)) continue;
          for (auto [x, c] : terms_[i]) counts[x] += c;
          chosen.push_back(i);
          bool done = false;
          detail::LengthBits b = calc->compute_counts(counts);
          if (j + 1 == m) {
            done = b == target;
          } else if (((b << static_cast<std::size_t>(m - j - 1)) & ~target).none()) {
            done = self(self, i, s2, next_ties);
          }
          if (done) return true;
          chosen.pop_back();
          for (auto [x, c] : terms_[i]) counts[x] -= c;
        }
        return false;
      };
      if (m == 1) {
        br.found = calc->compute_counts(counts) == target;
      } else {
        br.found = rec(rec, first, lengths_[first], tied) && !br.over;
      }
      if (br.found) br.tuple = chosen;
      return br;
    };
    auto parts = detail::ordered_parallel(atoms_.size(), opt.threads, run,
                                          [](const Branch& b) { return b.found || b.over; });
    SearchOutcome out;
    for (auto& p : parts) {
      if (!p) break;
      out.nodes += p->nodes;
      if (p->over || out.nodes > budget) {
        out.verdict = Verdict::Inconclusive;
        return out;
      }
      if (p->found) {
        Sequence w(group_);
        for (std::size_t i : p->tuple) w = product(w, atoms_[i]);
        out.verdict = Verdict::Realizable;
        out.witness = std::move(w);
        return out;
      }
    }
    out.verdict = Verdict::NotRealizable;
    return out;
  }

  // L(A_i A_j) as a bit mask, 0 while unknown; empty when there are too many atoms.
  std::uint64_t pair_lengths(std::size_t i, std::size_t j, LengthCalculator& calc, std::vector<std::uint32_t>& scratch) {
    if (i > j) std::swap(i, j);
    auto& slot = pairs_[j * (j + 1) / 2 + i];
    std::uint64_t v = slot.load(std::memory_order_relaxed);
    if (v) return v;
    for (auto [x, c] : terms_[i]) scratch[x] += c;
    for (auto [x, c] : terms_[j]) scratch[x] += c;
    v = calc.compute_counts(scratch).to_ullong();
    for (auto [x, c] : terms_[i]) scratch[x] -= c;
    for (auto [x, c] : terms_[j]) scratch[x] -= c;
    slot.store(v, std::memory_order_relaxed);
    return v;
  }

  AbelianGroup group_;
  detail::CalculatorPool pool_;
  std::vector<Sequence> atoms_;
  std::vector<int> lengths_;
  std::vector<std::vector<std::pair<ElemId, std::uint32_t>>> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  int davenport_ = 0;
  std::unique_ptr<std::atomic<std::uint64_t>[]> pairs_;

  std::once_flag sym_once_;
  std::vector<Automorphism> autos_;
  std::vector<char> orbit_rep_;
};

/// decide_length_set(G, L) with a fresh oracle.
inline DecideResult decide_length_set(const AbelianGroup& g, const LengthSet& l, const SearchOptions& opt = {}) {
  LengthOracle oracle(g, opt.threads);
  return oracle.decide(l, opt);
}

inline int rho_k(const AbelianGroup& g, int k, const SearchOptions& opt = {}) {
  LengthOracle oracle(g, opt.threads);
  return oracle.rho(k, opt).value;
}

/// rho(G) = D(G)/2 for |G| >= 3.
inline Rational elasticity(const AbelianGroup& g) {
  if (g.order() < 3) throw std::invalid_argument("elasticity is defined here for |G| >= 3");
  return Rational::make(davenport(g), 2);
}

/// When max L(B) / min L(B) = D(G)/2, the factors U_1, ..., U_j of
/// B = (-U_1)U_1 ... (-U_j)U_j with |U_i| = D(G), each reported as the
/// smaller of U_i and -U_i; otherwise nullopt.
inline std::optional<std::vector<Sequence>> extremal_elasticity_decomposition(const Sequence& b) {
  const AbelianGroup& g = b.group();
  if (g.order() < 3) throw std::invalid_argument("extremal decomposition needs |G| >= 3");
  if (!is_zero_sum(b)) throw NotZeroSum("sequence " + format_sequence(b) + " is not a zero-sum sequence");
  if (b.empty()) return std::nullopt;
  LengthSet l = length_set(b);
  int d = davenport(g);
  if (2 * l.max() != d * l.min()) return std::nullopt;

  std::vector<Sequence> pairs;  // U and -U, U <= -U
  for (const auto& u : enumerate_atoms(g, b.support(), d).atoms)
    if (static_cast<int>(u.length()) == d && u <= negate(u)) pairs.push_back(u);

  std::vector<Sequence> chosen;
  auto rec = [&](auto&& self, const Sequence& rest, std::size_t bound) -> bool {
    if (rest.empty()) return true;
    for (std::size_t i = bound + 1; i-- > 0;) {
      Sequence both = product(pairs[i], negate(pairs[i]));
      if (!divides(both, rest)) continue;
      chosen.push_back(pairs[i]);
      if (self(self, quotient(rest, both), i)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (pairs.empty() || !rec(rec, b, pairs.size() - 1))
    throw std::logic_error("ratio D(G)/2 attained without a decomposition into negation pairs");
  if (2 * static_cast<int>(chosen.size()) != l.min())
    throw std::logic_error("extremal decomposition size disagrees with min L");
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace zslen
