#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

/// D*(G) = 1 + sum (n_i - 1); 1 for the trivial group.
Int dstar(const GroupSpec& g);

struct DStarExtended {
  Int value = 1;          // D*(G + C_d)
  std::vector<Int> m;     // m_0 | m_1 | ... | m_r, some leading entries may be 1
};

/// D*(G + C_d) from the chain m_i = n_i gcd(n_{i+1}, d) / gcd(n_i, d), with
/// n_0 = 1 and n_{r+1} = 0 (so gcd(n_{r+1}, d) = d).
DStarExtended dstar_extended(const GroupSpec& g, Int d);

/// The same chain via m_i = gcd(n_{i+1}, lcm(n_i, d)).
std::vector<Int> dstar_chain_via_gcd_of_lcm(const GroupSpec& g, Int d);
/// The same chain via m_i = lcm(n_i, gcd(n_{i+1}, d)).
std::vector<Int> dstar_chain_via_lcm_of_gcd(const GroupSpec& g, Int d);

/// Families for which D(G) = D*(G) is a known theorem.
enum class DavenportEquality {
  unknown,
  rank_at_most_two,
  p_group,
  p_group_plus_coprime_cyclic,  // G = G' + C_k, G' a p-group with D*(G') <= 2 exp(G') - 1, p !| k
};

DavenportEquality davenport_equality(const GroupSpec& g);
std::string to_string(DavenportEquality e);

/// Returns the exact D(G) when known by other means (e.g. a search), else nullopt.
using DavenportOracle = std::function<std::optional<Int>(const GroupSpec&)>;

struct Bound {
  Int value = 0;
  std::string source;
};

struct Prediction {
  Int value = 0;
  std::string tag;
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct BoundsReport {
  GroupSpec group;
  Int d = 1;
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::optional<Prediction> predicted;
  /// D(G) was needed but neither an oracle value nor a known equality was
  /// available; D*(G) then appears only as a lower bound.
  bool davenport_unknown = false;
  bool extended_davenport_unknown = false;

  Int max_lower() const;
  std::optional<Int> min_upper() const;
  bool pinched() const;
};

/// Every applicable lower and upper bound for s_{dN}(G).
BoundsReport bounds_s_dN(const GroupSpec& g, Int d, const DavenportOracle& oracle = {});

/// Every closed form whose hypothesis holds for (G, d), in priority order:
/// cyclic, rank2, pgroup-a, pgroup-b, pgroup-c, odd-q-exact.
std::vector<Prediction> all_s_dN_predictions(const GroupSpec& g, Int d);

/// First applicable prediction from all_s_dN_predictions.
std::optional<Prediction> predict_s_dN(const GroupSpec& g, Int d);

/// The odd prime q making the odd-q exact-value theorem applicable: G_p cyclic
/// for every p != q and D(G_q) - exp(G_q) + 1 | exp(G_q). q need not divide |G|.
std::optional<Int> odd_q_for_exact_theorem(const GroupSpec& g);

struct EtaSPrediction {
  bool exact = false;  // false: the values are upper bounds only
  Int eta = 0;
  Int s = 0;
  std::string tag;
  std::optional<Int> q;
};

std::optional<EtaSPrediction> predict_eta_s(const GroupSpec& g);

/// D(G_p) <= 2 exp(G_p) - 1 for every prime p (D(G_p) = D*(G_p) for p-groups).
bool p_components_davenport_bounded(const GroupSpec& g);

/// (D*(G) + i) / 2 is an integral power of p, for a p-group G.
bool corollary_power_flag(const GroupSpec& g, Int i);

struct HypothesisFlags {
  GroupSpec group;
  Int d = 1;
  bool p_components_bounded = false;  // D(G_p) <= 2 exp(G_p) - 1 for all p
  bool exponent_odd = false;
  DavenportEquality davenport_g = DavenportEquality::unknown;
  DavenportEquality davenport_extended = DavenportEquality::unknown;  // for G + C_d
  std::optional<Int> odd_q;
  bool odd_q_modulus_divides_d = false;
  std::optional<Int> davenport;  // value used below, if known
  std::optional<Int> s_dN;       // value used below, if known
  /// D(G) <= 2d - 1 and s_{dN}(G) <= 3d - 1; nullopt when D or s_{dN} unknown.
  std::optional<bool> short_zero_sum_applicable;
  /// The same with d = exp(G).
  std::optional<bool> short_zero_sum_at_exponent;
  /// For p-groups: all i in [1, D(G)] with (D*(G) + i)/2 a power of p.
  std::vector<Int> corollary_power_indices;
};

/// Evaluates every named hypothesis for (G, d). Exact D(G) and s_{dN}(G) may
/// be supplied (e.g. from a search); otherwise known equalities and closed
/// forms are used where they apply.
HypothesisFlags hypothesis_flags(const GroupSpec& g, Int d, std::optional<Int> davenport = std::nullopt,
                                 std::optional<Int> s_dN = std::nullopt,
                                 std::optional<Int> s_nN = std::nullopt);

}  // namespace zsum
