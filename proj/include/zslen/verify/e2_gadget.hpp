#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "zslen/verify/basis.hpp"

namespace zslen::verify {

/// Sequences over an elementary 2-group of rank r built from a basis
/// e_1, ..., e_r and e_0 = e_1 + ... + e_r. Index sets I in [1, r] are
/// bitmasks: bit i-1 stands for i.
class E2Gadget {
 public:
  using Mask = std::uint32_t;

  explicit E2Gadget(Basis b) : basis_(std::move(b)) {
    if (!basis_.group().is_elementary(2) || basis_.rank() < 1)
      throw std::invalid_argument("E2 gadget needs an elementary 2-group");
  }
  explicit E2Gadget(int r) : E2Gadget(Basis::standard(AbelianGroup(std::vector<int>(static_cast<std::size_t>(r), 2)))) {}

  int rank() const { return basis_.rank(); }
  const AbelianGroup& group() const { return basis_.group(); }
  const Basis& basis() const { return basis_; }
  Mask full() const { return (Mask{1} << rank()) - 1; }

  /// e_i for i in [1, r]; e_0 for i = 0.
  ElemId e(int i) const { return i == 0 ? e_I(full()) : basis_[static_cast<std::size_t>(i - 1)]; }

  ElemId e_I(Mask m) const {
    check(m);
    ElemId x = group().zero_id();
    for (int i = 1; i <= rank(); ++i)
      if (has(m, i)) x = group().add_id(x, basis_[static_cast<std::size_t>(i - 1)]);
    return x;
  }

  /// U_I = e_I prod_{i in I} e_i
  Sequence U(Mask m) const { return with(Sequence(group()), {e_I(m)}, m, false); }
  /// V_I = e_I prod_{i in [0,r] \ I} e_i
  Sequence V(Mask m) const { return with(Sequence(group()), {e_I(m)}, full() & ~m, true); }
  /// V_0 = e_0 e_1 ... e_r
  Sequence V0() const { return with(Sequence(group()), {}, full(), true); }
  /// U_{I,J} = e_I e_J prod_{i in I sym J} e_i
  Sequence U(Mask i, Mask j) const { return with(Sequence(group()), {e_I(i), e_I(j)}, i ^ j, false); }
  /// V_{I,J} = e_I e_J prod_{i in [0,r] \ (I sym J)} e_i
  Sequence V(Mask i, Mask j) const { return with(Sequence(group()), {e_I(i), e_I(j)}, full() & ~(i ^ j), true); }

  static bool has(Mask m, int i) { return (m >> (i - 1) & 1) != 0; }
  static int size(Mask m) { return std::popcount(m); }

  std::string name(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (int i = 1; i <= rank(); ++i)
      if (has(m, i)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
    return s + "}";
  }

 private:
  void check(Mask m) const {
    if (m == 0 || (m & ~full()) != 0) throw std::invalid_argument("index set must be a nonempty subset of [1, r]");
  }

  Sequence with(Sequence s, std::initializer_list<ElemId> heads, Mask m, bool with_e0) const {
    for (ElemId x : heads) s.insert(x);
    for (int i = 1; i <= rank(); ++i)
      if (has(m, i)) s.insert(e(i));
    if (with_e0) s.insert(e(0));
    return s;
  }

  Basis basis_;
};

}  // namespace zslen::verify
