#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/formulas.hpp"
#include "zsum/invariants.hpp"
#include "zsum/witnesses.hpp"

namespace zsum {

enum class VerifyStatus { match, bounds_only, mismatch, skipped };
std::string to_string(VerifyStatus s);

struct VerifyRecord {
  std::string kind;  // s_dN, D, eta, s, witness-dstar, witness-padding, short, lemma
  std::string group;
  Int d = 0;
  std::optional<Int> brute;
  std::optional<Prediction> predicted;
  Int lower = 0;
  std::optional<Int> upper;
  std::string bounds;  // "lower..upper" with the tags of the binding bounds
  VerifyStatus status = VerifyStatus::skipped;
  std::string reason;
  double runtime = 0;
  std::uint64_t nodes = 0;
  std::string witness;

  bool budget_skip() const { return status == VerifyStatus::skipped && reason.rfind("budget", 0) == 0; }
};

nlohmann::json to_json(const VerifyRecord& r);
std::string csv_header();
std::string to_csv(const VerifyRecord& r);

struct VerifyOptions {
  Int max_order = 9;
  Int d_min = 1;
  Int d_max = 6;
  /// Any of sdn, davenport, eta-s, witness, short; empty selects all.
  std::vector<std::string> theorems;
  unsigned workers = 1;  // grid cells in flight
  EnumerationBudget enumeration{20'000, 2'000, 20240601};
};

/// Every group of order <= max_order in invariant-factor form, by order then factors.
std::vector<GroupSpec> groups_up_to(Int max_order);

VerifyRecord verify_s_dN_cell(InvariantCalculator& calc, const GroupSpec& g, Int d);
VerifyRecord verify_davenport_cell(InvariantCalculator& calc, const GroupSpec& g);
std::vector<VerifyRecord> verify_eta_s_cells(InvariantCalculator& calc, const GroupSpec& g);
std::vector<VerifyRecord> verify_witness_cells(InvariantCalculator& calc, const GroupSpec& g, Int d);
/// Empty when neither statement's hypothesis holds for (G, d).
std::vector<VerifyRecord> verify_short_cells(InvariantCalculator& calc, const GroupSpec& g, Int d,
                                             const VerifyOptions& options);

/// Runs the selected cells over the grid. Records reach `sink` in grid order
/// regardless of the worker count.
std::vector<VerifyRecord> run_verify(InvariantCalculator& calc, const VerifyOptions& options,
                                     const std::function<void(const VerifyRecord&)>& sink = {});

/// 2 on any MISMATCH, else 3 when a cell ran out of budget, else 0.
int exit_code_for(const std::vector<VerifyRecord>& records);

}  // namespace zsum
