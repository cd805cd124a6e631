#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/numeric.hpp"

namespace zsum {

/// Position of an element in the canonical (lexicographic) order of its group.
using ElementIndex = std::uint64_t;

/// A finite abelian group C_{n_1} + ... + C_{n_r} in invariant-factor form,
/// 1 < n_1 | n_2 | ... | n_r. The trivial group has no factors.
class GroupSpec {
 public:
  GroupSpec() = default;

  /// Validates the divisibility chain; use canonicalize() for arbitrary input.
  explicit GroupSpec(std::vector<Int> invariant_factors);

  static GroupSpec cyclic(Int n);

  const std::vector<Int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  Int order() const;
  Int exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool is_trivial() const { return factors_.empty(); }
  bool is_cyclic() const { return factors_.size() <= 1; }
  /// True for the trivial group as well.
  bool is_p_group() const;

  ElementIndex index_of(const std::vector<Int>& coords) const;
  std::vector<Int> coords_of(ElementIndex index) const;

  /// "2,12"; the trivial group prints as "1".
  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
  friend auto operator<=>(const GroupSpec& a, const GroupSpec& b) {
    return a.factors_ <=> b.factors_;
  }

 private:
  std::vector<Int> factors_;
};

/// Invariant-factor form of the direct sum of cyclic groups of the given orders.
GroupSpec canonicalize(const std::vector<Int>& orders);

GroupSpec direct_sum(const GroupSpec& g, const GroupSpec& h);

/// The p-primary component G_p. Throws for non-prime p.
GroupSpec p_component(const GroupSpec& g, Int p);

/// Distinct primes dividing |G|, increasing.
std::vector<Int> prime_divisors(const GroupSpec& g);

/// Parses "2,6,4" (any cyclic presentation) into canonical form. "" and "1"
/// denote the trivial group.
GroupSpec parse_group(std::string_view text);

/// Residue vector bound to a GroupSpec.
class GroupElement {
 public:
  GroupElement(GroupSpec group, std::vector<Int> coords);

  static GroupElement zero(const GroupSpec& group);
  /// e_i: 1 in slot i (0-based), zero elsewhere.
  static GroupElement basis(const GroupSpec& group, int i);
  static GroupElement at(const GroupSpec& group, ElementIndex index);

  const GroupSpec& group() const { return group_; }
  const std::vector<Int>& coords() const { return coords_; }
  ElementIndex index() const { return group_.index_of(coords_); }
  bool is_zero() const;

  /// "1.3"; the element of the trivial group prints as "0".
  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  /// Canonical order: lexicographic on coordinates (same group only).
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  GroupSpec group_;
  std::vector<Int> coords_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement scale(const GroupElement& a, Int k);
Int element_order(const GroupElement& a);

/// All elements in canonical (lexicographic) order.
std::vector<GroupElement> enumerate_elements(const GroupSpec& g);

/// Parses "c1.c2" against g, reducing nothing: coordinates must be in range.
GroupElement parse_element(const GroupSpec& g, std::string_view text);

/// Isomorphism from an arbitrary cyclic presentation C_{q_1} + ... + C_{q_k}
/// onto its invariant-factor form, built by CRT-splitting every factor into
/// prime powers and restacking them.
class CyclicPresentation {
 public:
  explicit CyclicPresentation(std::vector<Int> orders);

  const std::vector<Int>& orders() const { return orders_; }
  const GroupSpec& canonical() const { return canonical_; }

  /// Maps a residue vector (c_i mod q_i) to canonical coordinates.
  std::vector<Int> to_canonical(const std::vector<Int>& coords) const;

 private:
  struct Piece {
    std::size_t source;  // index into orders_
    Int prime_power;
    std::size_t target;  // canonical factor slot
  };
  std::vector<Int> orders_;
  GroupSpec canonical_;
  std::vector<Piece> pieces_;
};

/// Coordinatewise reduction G -> (+) C_{q_i} with q_i | n_i, landing in the
/// canonical form of the image.
class ReductionHom {
 public:
  ReductionHom(GroupSpec domain, std::vector<Int> moduli);

  static ReductionHom identity(const GroupSpec& g) { return ReductionHom(g, g.factors()); }

  const GroupSpec& domain() const { return domain_; }
  const GroupSpec& codomain() const { return image_.canonical(); }
  const std::vector<Int>& moduli() const { return moduli_; }
  Int kernel_order() const;

  GroupElement operator()(const GroupElement& a) const;

 private:
  GroupSpec domain_;
  std::vector<Int> moduli_;
  CyclicPresentation image_;
};

}  // namespace zsum
