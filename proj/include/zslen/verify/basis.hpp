#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zslen/group.hpp"
#include "zslen/sequence.hpp"

namespace zslen::verify {

/// A basis (f_1, ..., f_r) of G with ord(f_i) = n_i, used to build
/// sequences from integer coordinates relative to it.
class Basis {
 public:
  Basis(AbelianGroup g, std::vector<ElemId> f) : group_(std::move(g)), f_(std::move(f)) {
    std::vector<GroupElement> elems;
    for (ElemId x : f_) elems.push_back(group_.element(x));
    if (static_cast<int>(f_.size()) != group_.rank() || !group_.is_basis(elems))
      throw std::invalid_argument("not a basis of " + group_.to_string());
    for (std::size_t i = 0; i < f_.size(); ++i)
      if (group_.order_of(f_[i]) != group_.factors()[i])
        throw std::invalid_argument("basis element orders must follow the invariant factors");
  }

  /// The unit vectors.
  static Basis standard(const AbelianGroup& g) {
    std::vector<ElemId> f;
    for (const auto& e : g.standard_basis()) f.push_back(g.id_of(e));
    return Basis(g, std::move(f));
  }

  /// f_1 = -e_1 and f_i = e_{i-1} + e_i for i >= 2. Unitriangular up to a
  /// sign, so again a basis with the same orders.
  static Basis skewed(const AbelianGroup& g) {
    Basis s = standard(g);
    std::vector<ElemId> f = s.f_;
    if (!f.empty()) f[0] = g.neg_id(s.f_[0]);
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = g.add_id(s.f_[i - 1], s.f_[i]);
    return Basis(g, std::move(f));
  }

  const AbelianGroup& group() const { return group_; }
  int rank() const { return static_cast<int>(f_.size()); }
  ElemId operator[](std::size_t i) const { return f_.at(i); }

  ElemId combine(const std::vector<int>& coeffs) const {
    if (coeffs.size() != f_.size()) throw std::invalid_argument("coefficient count must equal the rank");
    ElemId x = group_.zero_id();
    for (std::size_t i = 0; i < f_.size(); ++i) x = group_.add_id(x, group_.scale_id(f_[i], coeffs[i]));
    return x;
  }

  /// Sequence with the given (coefficients, multiplicity) terms.
  Sequence seq(const std::vector<std::pair<std::vector<int>, std::uint32_t>>& terms) const {
    Sequence s(group_);
    for (const auto& [c, k] : terms) s.insert(combine(c), k);
    return s;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (i) s += ", ";
      s += group_.format_element(group_.element(f_[i]));
    }
    return s + ")";
  }

 private:
  AbelianGroup group_;
  std::vector<ElemId> f_;
};

}  // namespace zslen::verify
