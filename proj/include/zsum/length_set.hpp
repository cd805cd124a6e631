#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/numeric.hpp"

namespace zsum {

/// The admissible-length set L of s_L(G).
class LengthSet {
 public:
  enum class Kind { all, multiples_of, exactly, interval, finite };

  static LengthSet all_n();
  static LengthSet multiples_of(Int d);
  static LengthSet exactly(Int k);
  static LengthSet interval(Int a, Int b);
  static LengthSet finite(std::vector<Int> values);

  /// "N", "4N", "3" (exactly), "[1,3]", "{2,4}".
  static LengthSet parse(std::string_view text);

  Kind kind() const { return kind_; }
  /// d for multiples_of; k for exactly; a for interval.
  Int param() const { return a_; }
  Int upper() const { return b_; }
  const std::vector<Int>& values() const { return values_; }

  bool contains(Int length) const;
  /// Largest member for the bounded kinds; nullopt for N and dN.
  std::optional<Int> max_bound() const;
  /// L meets nN; s_L(G) is finite iff this holds for n = exp(G).
  bool meets_multiples_of(Int n) const;

  std::string to_string() const;

  friend bool operator==(const LengthSet&, const LengthSet&) = default;

 private:
  LengthSet(Kind kind, Int a, Int b, std::vector<Int> values)
      : kind_(kind), a_(a), b_(b), values_(std::move(values)) {}

  Kind kind_;
  Int a_ = 0;
  Int b_ = 0;
  std::vector<Int> values_;
};

}  // namespace zsum
