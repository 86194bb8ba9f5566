#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zslen {

/// Dense index of a group element. Index order coincides with the
/// lexicographic order of coordinate vectors.
using ElemId = std::uint32_t;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupElement {
  std::vector<int> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

namespace detail {

inline std::vector<std::pair<int, int>> prime_powers(int n) {
  std::vector<std::pair<int, int>> out;  // (p, p^k)
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    out.emplace_back(p, q);
  }
  if (n > 1) out.emplace_back(n, n);
  return out;
}

/// Elementary-divisor merge: split every factor into prime powers and
/// reassemble so that n_1 | n_2 | ... | n_r.
inline std::vector<int> canonical_factors(std::span<const int> raw) {
  std::map<int, std::vector<int>> by_prime;
  for (int n : raw) {
    if (n < 2) throw GroupError("cyclic factor must be >= 2, got " + std::to_string(n));
    for (auto [p, q] : prime_powers(n)) by_prime[p].push_back(q);
  }
  std::size_t rank = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    rank = std::max(rank, qs.size());
  }
  // out[0] is the largest invariant factor before the final reversal.
  std::vector<long long> out(rank, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) out[i] *= qs[i];
  std::vector<int> factors;
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    if (*it > (1LL << 30)) throw GroupError("group too large");
    factors.push_back(static_cast<int>(*it));
  }
  return factors;
}

struct GroupData {
  std::vector<int> factors;
  std::size_t order = 1;
  std::vector<std::size_t> strides;
  std::vector<ElemId> add_table;  // only for small groups
  std::vector<ElemId> neg_table;
  std::vector<int> orders;
};

inline constexpr std::size_t kAddTableMaxOrder = 256;
inline constexpr std::size_t kElementTableMaxOrder = std::size_t{1} << 16;

}  // namespace detail

/// Finite abelian group C_{n_1} + ... + C_{n_r} with n_1 | ... | n_r, stored
/// in canonical invariant-factor form. Cheap to copy: all copies share one
/// immutable table block.
class AbelianGroup {
 public:
  AbelianGroup() : AbelianGroup(std::vector<int>{}) {}

  /// Any list of cyclic orders >= 2 is accepted and normalized.
  explicit AbelianGroup(std::span<const int> factors) { build(detail::canonical_factors(factors)); }
  explicit AbelianGroup(const std::vector<int>& factors)
      : AbelianGroup(std::span<const int>(factors.data(), factors.size())) {}
  AbelianGroup(std::initializer_list<int> factors)
      : AbelianGroup(std::vector<int>(factors)) {}

  const std::vector<int>& factors() const { return data_->factors; }
  std::size_t order() const { return data_->order; }
  int rank() const { return static_cast<int>(data_->factors.size()); }
  int exponent() const { return data_->factors.empty() ? 1 : data_->factors.back(); }
  bool is_trivial() const { return data_->factors.empty(); }

  bool is_cyclic() const { return rank() <= 1; }
  bool is_elementary(int p) const {
    return std::all_of(factors().begin(), factors().end(), [p](int n) { return n == p; });
  }
  bool is_p_group() const {
    if (is_trivial()) return true;
    auto pp = detail::prime_powers(exponent());
    return pp.size() == 1;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.data_ == b.data_ || a.factors() == b.factors();
  }

  // ---- element indexing ----

  ElemId zero_id() const { return 0; }

  ElemId id_of(const GroupElement& g) const {
    check_member(g);
    std::size_t id = 0;
    for (std::size_t i = 0; i < g.coords.size(); ++i) id += static_cast<std::size_t>(g.coords[i]) * data_->strides[i];
    return static_cast<ElemId>(id);
  }

  GroupElement element(ElemId id) const {
    GroupElement g;
    g.coords.resize(factors().size());
    std::size_t rest = id;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      g.coords[i] = static_cast<int>(rest / data_->strides[i]);
      rest %= data_->strides[i];
    }
    return g;
  }

  int coord(ElemId id, int i) const {
    return static_cast<int>((id / data_->strides[i]) % static_cast<std::size_t>(factors()[i]));
  }

  bool contains(const GroupElement& g) const {
    if (g.coords.size() != factors().size()) return false;
    for (std::size_t i = 0; i < g.coords.size(); ++i)
      if (g.coords[i] < 0 || g.coords[i] >= factors()[i]) return false;
    return true;
  }

  ElemId add_id(ElemId a, ElemId b) const {
    if (!data_->add_table.empty()) return data_->add_table[a * data_->order + b];
    std::size_t id = 0;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      int n = factors()[i];
      id += static_cast<std::size_t>((coord(a, static_cast<int>(i)) + coord(b, static_cast<int>(i))) % n) * data_->strides[i];
    }
    return static_cast<ElemId>(id);
  }

  ElemId neg_id(ElemId a) const {
    if (!data_->neg_table.empty()) return data_->neg_table[a];
    std::size_t id = 0;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      int n = factors()[i];
      id += static_cast<std::size_t>((n - coord(a, static_cast<int>(i))) % n) * data_->strides[i];
    }
    return static_cast<ElemId>(id);
  }

  ElemId scale_id(ElemId a, long long k) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      long long n = factors()[i];
      long long c = (coord(a, static_cast<int>(i)) * (k % n)) % n;
      if (c < 0) c += n;
      id += static_cast<std::size_t>(c) * data_->strides[i];
    }
    return static_cast<ElemId>(id);
  }

  int order_of(ElemId a) const {
    if (!data_->orders.empty()) return data_->orders[a];
    return compute_order(a);
  }

  // ---- element-level API ----

  GroupElement zero() const { return GroupElement{std::vector<int>(factors().size(), 0)}; }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    return element(add_id(id_of(a), id_of(b)));
  }
  GroupElement neg(const GroupElement& a) const { return element(neg_id(id_of(a))); }
  GroupElement scale(const GroupElement& a, long long k) const { return element(scale_id(id_of(a), k)); }

  /// Least k >= 1 with k*a = 0.
  int element_order(const GroupElement& a) const { return order_of(id_of(a)); }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(order());
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element(static_cast<ElemId>(i)));
    return out;
  }

  /// Size of the subgroup generated by the given elements (closure by BFS).
  std::size_t span_size(std::span<const ElemId> gens) const {
    std::vector<char> seen(order(), 0);
    std::vector<ElemId> stack{zero_id()};
    seen[zero_id()] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      ElemId x = stack.back();
      stack.pop_back();
      for (ElemId g : gens) {
        ElemId y = add_id(x, g);
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count;
  }

  /// Nonzero elements whose span is the internal direct sum of the cyclic
  /// subgroups they generate.
  bool is_independent(std::span<const GroupElement> tuple) const {
    std::vector<ElemId> ids;
    std::size_t prod = 1;
    for (const auto& g : tuple) {
      ElemId id = id_of(g);
      if (id == zero_id()) return false;
      ids.push_back(id);
      prod *= static_cast<std::size_t>(order_of(id));
      if (prod > order()) return false;
    }
    return span_size(ids) == prod;
  }

  bool is_basis(std::span<const GroupElement> tuple) const {
    if (!is_independent(tuple)) return false;
    std::vector<ElemId> ids;
    for (const auto& g : tuple) ids.push_back(id_of(g));
    return span_size(ids) == order();
  }

  /// Standard unit vectors (empty for the trivial group).
  std::vector<GroupElement> standard_basis() const {
    std::vector<GroupElement> out;
    for (int i = 0; i < rank(); ++i) {
      GroupElement g = zero();
      g.coords[i] = 1;
      out.push_back(g);
    }
    return out;
  }

  std::string to_string() const {
    if (is_trivial()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      if (i) s += "x";
      s += "C" + std::to_string(factors()[i]);
    }
    return s;
  }

  std::string format_element(const GroupElement& g) const {
    std::string s = "(";
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(g.coords[i]);
    }
    return s + ")";
  }
  std::string format_element(ElemId id) const { return format_element(element(id)); }

  void check_member(const GroupElement& g) const {
    if (!contains(g))
      throw GroupError("element " + format_element(g) + " does not belong to " + to_string());
  }

 private:
  int compute_order(ElemId a) const {
    long long l = 1;
    for (std::size_t i = 0; i < factors().size(); ++i) {
      int n = factors()[i];
      int c = coord(a, static_cast<int>(i));
      long long o = n / std::gcd(n, c);
      l = std::lcm(l, o);
    }
    return static_cast<int>(l);
  }

  void build(std::vector<int> factors) {
    auto d = std::make_shared<detail::GroupData>();
    d->factors = std::move(factors);
    d->order = 1;
    for (int n : d->factors) {
      d->order *= static_cast<std::size_t>(n);
      if (d->order > (std::size_t{1} << 31)) throw GroupError("group order exceeds 2^31");
    }
    d->strides.assign(d->factors.size(), 1);
    for (std::size_t i = d->factors.size(); i-- > 1;)
      d->strides[i - 1] = d->strides[i] * static_cast<std::size_t>(d->factors[i]);
    data_ = d;
    if (d->order <= detail::kElementTableMaxOrder) {
      std::vector<ElemId> neg(d->order);
      std::vector<int> ord(d->order);
      for (std::size_t a = 0; a < d->order; ++a) {
        neg[a] = neg_id(static_cast<ElemId>(a));
        ord[a] = compute_order(static_cast<ElemId>(a));
      }
      d->neg_table = std::move(neg);
      d->orders = std::move(ord);
    }
    if (d->order <= detail::kAddTableMaxOrder) {
      std::vector<ElemId> add(d->order * d->order);
      for (std::size_t a = 0; a < d->order; ++a)
        for (std::size_t b = 0; b < d->order; ++b)
          add[a * d->order + b] = add_id(static_cast<ElemId>(a), static_cast<ElemId>(b));
      d->add_table = std::move(add);
    }
  }

  std::shared_ptr<const detail::GroupData> data_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline int parse_positive(std::string_view tok, std::string_view context) {
  std::string t = trim(tok);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw GroupError("malformed group spec '" + std::string(context) + "'");
  if (t.size() > 9) throw GroupError("cyclic factor too large in '" + std::string(context) + "'");
  return std::stoi(t);
}

}  // namespace detail

inline constexpr std::string_view kGroupGrammar =
    "group spec: C<n> atoms joined by 'x' (e.g. C2xC4, c3 x c3) or a comma list "
    "of cyclic orders (e.g. 2,4); each n >= 2; the lone literal C1 denotes the trivial group";

/// Parses "C2xC4", "c3 x C3", or "4,2" into canonical invariant-factor form.
inline AbelianGroup parse_group(std::string_view spec) {
  std::string s = detail::trim(spec);
  if (s.empty()) throw GroupError("empty group spec");
  std::vector<int> raw;
  if (s.find(',') != std::string::npos || std::isdigit(static_cast<unsigned char>(s[0]))) {
    std::size_t start = 0;
    while (true) {
      std::size_t comma = s.find(',', start);
      raw.push_back(detail::parse_positive(s.substr(start, comma - start), spec));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::size_t start = 0;
    while (true) {
      std::size_t x = lower.find('x', start);
      std::string atom = detail::trim(std::string_view(lower).substr(start, x - start));
      if (atom.size() < 2 || atom[0] != 'c') throw GroupError("malformed group spec '" + std::string(spec) + "'");
      raw.push_back(detail::parse_positive(std::string_view(atom).substr(1), spec));
      if (x == std::string::npos) break;
      start = x + 1;
    }
    if (raw.size() == 1 && raw[0] == 1) return AbelianGroup{};
  }
  for (int n : raw)
    if (n < 2) throw GroupError("cyclic factor must be >= 2 in '" + std::string(spec) + "'");
  return AbelianGroup(raw);
}

/// Parses an element literal "(c1,...,cr)"; coordinates must already be reduced.
inline GroupElement parse_element(const AbelianGroup& g, std::string_view text) {
  std::string s = detail::trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw GroupError("malformed element literal '" + std::string(text) + "'");
  std::string inner = detail::trim(std::string_view(s).substr(1, s.size() - 2));
  GroupElement e;
  if (!inner.empty()) {
    std::size_t start = 0;
    while (true) {
      std::size_t comma = inner.find(',', start);
      std::string tok = detail::trim(std::string_view(inner).substr(start, comma - start));
      bool neg = !tok.empty() && tok[0] == '-';
      std::string digits = neg ? tok.substr(1) : tok;
      if (digits.empty() || digits.size() > 9 ||
          !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw GroupError("malformed element literal '" + std::string(text) + "'");
      int v = std::stoi(digits);
      e.coords.push_back(neg ? -v : v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (!g.contains(e)) throw GroupError("element " + s + " is not a reduced element of " + g.to_string());
  return e;
}

}  // namespace zslen
