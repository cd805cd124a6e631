#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

/// A sequence over G in the free-abelian-monoid sense: a finite multiset,
/// stored as a multiplicity map keyed by canonical element index.
class Sequence {
 public:
  explicit Sequence(GroupSpec group) : group_(std::move(group)) {}

  static Sequence from_indices(const GroupSpec& group, const std::vector<ElementIndex>& elements);
  static Sequence from_elements(const GroupSpec& group, const std::vector<GroupElement>& elements);
  /// Parses "0.1^3 1.2" (coordinates dot-separated, optional ^multiplicity).
  static Sequence parse(const GroupSpec& group, std::string_view text);

  const GroupSpec& group() const { return group_; }
  const std::map<ElementIndex, Int>& multiplicities() const { return mult_; }

  void add(ElementIndex g, Int count = 1);
  void add(const GroupElement& g, Int count = 1);

  Int length() const { return length_; }
  bool empty() const { return length_ == 0; }
  Int multiplicity(ElementIndex g) const;
  std::vector<ElementIndex> support() const;
  GroupElement sum() const;
  /// Largest support element in canonical order; requires a nonempty sequence.
  ElementIndex max_element() const;

  /// T | S: every multiplicity of *this is at most the one in `other`.
  bool divides(const Sequence& other) const;

  /// Elements expanded in non-decreasing canonical order.
  std::vector<ElementIndex> sorted_elements() const;

  /// "0.1^3 1.2^1"; the empty sequence prints as "".
  std::string to_string() const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.group_ == b.group_ && a.mult_ == b.mult_;
  }

 private:
  GroupSpec group_;
  std::map<ElementIndex, Int> mult_;
  Int length_ = 0;
};

/// Canonical multiset order: lexicographic on sorted_elements(), so a proper
/// prefix sorts first.
bool canonical_less(const Sequence& a, const Sequence& b);

Sequence concat(const Sequence& s, const Sequence& t);
/// T^{-1} S. Throws std::invalid_argument unless T | S.
Sequence remove(const Sequence& s, const Sequence& t);

bool is_zero_sum_free(const Sequence& s);
bool is_minimal_zero_sum(const Sequence& s);

class ReductionHom;
Sequence apply_hom(const ReductionHom& phi, const Sequence& s);

/// DFS children: S extended by one element not below max(supp S).
std::vector<Sequence> canonical_extensions(const Sequence& s);

}  // namespace zsum
