#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zsum/finder.hpp"
#include "zsum/invariants.hpp"

namespace zsum {

/// prod_{i=0}^r e_i^{m_i - 1} over G, with e_0 = 0 and e_i the i-th basis
/// element, from the D*(G + C_d) chain. Length D*(G + C_d) - 1.
Sequence witness_dstar_extended(const GroupSpec& g, Int d);

/// 0^{d-1} S with S the canonical longest zero-sum-free sequence over G.
Sequence witness_davenport_padding(InvariantCalculator& calc, const GroupSpec& g, Int d);

/// No nonempty zero-sum subsequence has length divisible by d.
bool certify_dN_free(const Sequence& s, Int d);
/// The only nonempty zero-sum subsequences are 0^k, k in [1, multiplicity of 0].
bool certify_only_zero_blocks(const Sequence& s);

struct DisjointAtoms {
  GroupSpec group;  // H + H
  Sequence u{GroupSpec{}};
  Sequence v{GroupSpec{}};
};

/// Minimal zero-sum U on H + 0 and V on 0 + H, each of length D(H).
/// Rejects H that is neither cyclic nor a p-group.
DisjointAtoms witness_remark_disjoint(const GroupSpec& h);

/// U and V are minimal zero-sum and UV has exactly the three nonempty
/// zero-sum subsequences U, V and UV.
bool certify_disjoint_atoms(const DisjointAtoms& w);

/// Number of nonempty zero-sum sub-multisets of S (distinct multiplicity
/// vectors), by a counting pass over the support.
std::uint64_t count_zero_sum_subsequences(const Sequence& s);

struct LemmaReport {
  GroupSpec group;
  Int d = 1;
  Int davenport = 0;
  bool applicable = false;  // D(G) <= 2d - 1
  bool a_holds = true;
  bool b_holds = true;
  bool c_holds = true;
  std::uint64_t atom_pairs = 0;
  std::uint64_t sequences_examined = 0;  // short-free sequences walked for (c)
  std::optional<Sequence> b_counterexample;
  std::optional<Sequence> c_counterexample;
  /// (a), (b) and (c) agree, as they must when applicable.
  bool consistent() const { return a_holds == b_holds && b_holds == c_holds; }
};

/// Tests the atom-pair statements over all pairs of atoms and the zero-sum
/// statement over all zero-sum sequences of length D(G)+1 .. max(2D(G), D(G)+3).
LemmaReport check_lemma_equivalence(InvariantCalculator& calc, const GroupSpec& g, Int d);

struct ShortTheoremReport {
  GroupSpec group;
  Int d = 1;
  Int davenport = 0;
  Int s_dN = 0;
  bool applicable = false;  // D(G) <= 2d - 1 and s_dN(G) <= 3d - 1
  bool sampled = false;
  std::uint64_t part1_checked = 0;
  std::uint64_t part2_checked = 0;
  std::uint64_t failures = 0;
  std::optional<Sequence> first_failure;
  bool ok() const { return !applicable || failures == 0; }
};

struct EnumerationBudget {
  std::uint64_t exhaustive_limit = 2'000'000;  // multisets per length before sampling
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 20240601;
};

/// Part 1 over all sequences of length s_dN(G); part 2 over all zero-sum
/// sequences with length in [D(G)+1, s_dN(G)+1]. Each instance is solved by
/// the proof procedure and cross-checked against the direct search.
ShortTheoremReport check_short_zero_sum_theorem(InvariantCalculator& calc, const GroupSpec& g, Int d,
                                                const EnumerationBudget& budget = {});

/// Calls f on every multiset of `length` elements of [0, n), as a sorted
/// index vector. Stops early when f returns false.
void for_each_multiset(std::uint32_t n, Int length, const std::function<bool(const std::vector<ElementIndex>&)>& f);

}  // namespace zsum
