#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/search.hpp"
#include "zsum/store.hpp"

namespace zsum {

/// The group order exceeds the configured search ceiling.
class SearchCeilingExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by InvariantResult::require_exact for budget-limited results.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nonnegative integer or infinity.
class ExtendedInt {
 public:
  ExtendedInt(Int v) : value_(v) {}  // NOLINT: implicit by design
  static ExtendedInt infinity() { return ExtendedInt(); }

  bool is_infinite() const { return !value_; }
  Int value() const;
  std::string to_string() const;

  friend bool operator==(const ExtendedInt&, const ExtendedInt&) = default;

 private:
  ExtendedInt() = default;
  std::optional<Int> value_;
};

enum class InvariantName { D, s, eta, ZS, s_dN, s_L };
std::string to_string(InvariantName n);

struct InvariantResult {
  InvariantName name = InvariantName::s_L;
  GroupSpec group;
  std::optional<Int> d;  // s_dN only
  LengthSet lengths = LengthSet::all_n();
  /// s_L(G). When !exact this is only a lower bound (longest sequence found + 1).
  ExtendedInt value = ExtendedInt::infinity();
  /// Longest L-free sequence found; empty for infinite values.
  Sequence witness{GroupSpec{}};
  bool exact = true;
  bool capped = false;
  bool cached = false;
  std::uint64_t nodes = 0;
  double seconds = 0;

  const InvariantResult& require_exact() const;
};

nlohmann::json to_json(const InvariantResult& r);

struct CalculatorOptions {
  Int max_order = 36;
  SearchLimits limits;
  /// Stop s_dN searches at D*(G + C_d) - 1 when D(G + C_d) = D*(G + C_d) is known.
  bool use_known_caps = false;
  std::shared_ptr<ResultsStore> store;
};

/// Named invariants over max_extremal, memoized by (group, L).
class InvariantCalculator {
 public:
  explicit InvariantCalculator(CalculatorOptions options = {});

  InvariantResult davenport(const GroupSpec& g);
  InvariantResult egz(const GroupSpec& g);
  InvariantResult eta(const GroupSpec& g);
  InvariantResult zs(const GroupSpec& g);
  InvariantResult s_dN(const GroupSpec& g, Int d);
  InvariantResult s_L(const GroupSpec& g, const LengthSet& lengths);

  const CalculatorOptions& options() const { return options_; }
  void set_limits(const SearchLimits& limits) { options_.limits = limits; }

 private:
  InvariantResult compute(InvariantName name, const GroupSpec& g, const LengthSet& lengths,
                          std::optional<Int> cap);

  CalculatorOptions options_;
  std::mutex mu_;
  std::map<std::string, InvariantResult> cache_;
};

/// All minimal zero-sum sequences A(G), in canonical order.
std::vector<Sequence> enumerate_atoms(const GroupSpec& g, Int max_order = 16);

}  // namespace zsum
