#include "zsum/formulas.hpp"

#include <algorithm>
#include <stdexcept>

namespace zsum {

namespace {

void require_d(Int d) {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
}

// n_0 = 1, n_1..n_r, n_{r+1} = 0
std::vector<Int> padded_chain(const GroupSpec& g) {
  std::vector<Int> n{1};
  n.insert(n.end(), g.factors().begin(), g.factors().end());
  n.push_back(0);
  return n;
}

Int dstar_of_chain(const std::vector<Int>& m) {
  Int v = 1;
  for (Int x : m) v += x - 1;
  return v;
}

// The unique prime of a nontrivial p-group.
Int prime_of(const GroupSpec& g) { return prime_divisors(g).front(); }

}  // namespace

Int dstar(const GroupSpec& g) {
  Int v = 1;
  for (Int n : g.factors()) v += n - 1;
  return v;
}

DStarExtended dstar_extended(const GroupSpec& g, Int d) {
  require_d(d);
  auto n = padded_chain(g);
  DStarExtended out;
  for (std::size_t i = 0; i + 1 < n.size(); ++i)
    out.m.push_back(n[i] * gcd(n[i + 1], d) / gcd(n[i], d));
  out.value = dstar_of_chain(out.m);
  return out;
}

std::vector<Int> dstar_chain_via_gcd_of_lcm(const GroupSpec& g, Int d) {
  require_d(d);
  auto n = padded_chain(g);
  std::vector<Int> m;
  for (std::size_t i = 0; i + 1 < n.size(); ++i) m.push_back(gcd(n[i + 1], lcm(n[i], d)));
  return m;
}

std::vector<Int> dstar_chain_via_lcm_of_gcd(const GroupSpec& g, Int d) {
  require_d(d);
  auto n = padded_chain(g);
  std::vector<Int> m;
  for (std::size_t i = 0; i + 1 < n.size(); ++i) m.push_back(lcm(n[i], gcd(n[i + 1], d)));
  return m;
}

bool p_components_davenport_bounded(const GroupSpec& g) {
  for (Int p : prime_divisors(g)) {
    auto gp = p_component(g, p);
    if (dstar(gp) > 2 * gp.exponent() - 1) return false;
  }
  return true;
}

DavenportEquality davenport_equality(const GroupSpec& g) {
  if (g.rank() <= 2) return DavenportEquality::rank_at_most_two;
  if (g.is_p_group()) return DavenportEquality::p_group;
  for (Int p : prime_divisors(g)) {
    bool others_cyclic = true;
    for (Int q : prime_divisors(g))
      if (q != p && !p_component(g, q).is_cyclic()) others_cyclic = false;
    if (!others_cyclic) continue;
    auto gp = p_component(g, p);
    if (dstar(gp) <= 2 * gp.exponent() - 1) return DavenportEquality::p_group_plus_coprime_cyclic;
  }
  return DavenportEquality::unknown;
}

std::string to_string(DavenportEquality e) {
  switch (e) {
    case DavenportEquality::unknown: return "unknown";
    case DavenportEquality::rank_at_most_two: return "rank<=2";
    case DavenportEquality::p_group: return "p-group";
    case DavenportEquality::p_group_plus_coprime_cyclic: return "p-group+coprime-cyclic";
  }
  return "unknown";
}

Int BoundsReport::max_lower() const {
  Int v = 0;
  for (const auto& b : lower) v = std::max(v, b.value);
  return v;
}

std::optional<Int> BoundsReport::min_upper() const {
  std::optional<Int> v;
  for (const auto& b : upper)
    if (!v || b.value < *v) v = b.value;
  return v;
}

bool BoundsReport::pinched() const {
  auto u = min_upper();
  return u && *u == max_lower();
}

BoundsReport bounds_s_dN(const GroupSpec& g, Int d, const DavenportOracle& oracle) {
  require_d(d);
  BoundsReport r;
  r.group = g;
  r.d = d;

  auto known_davenport = [&](const GroupSpec& h) -> std::optional<Int> {
    if (oracle)
      if (auto v = oracle(h)) return v;
    if (davenport_equality(h) != DavenportEquality::unknown) return dstar(h);
    return std::nullopt;
  };

  const auto ext = dstar_extended(g, d);
  r.lower.push_back({dstar(g) + d - 1, "D*(G)+d-1"});
  r.lower.push_back({ext.value, "D*(G+C_d)"});
  if (auto dg = known_davenport(g))
    r.lower.push_back({*dg + d - 1, "D(G)+d-1"});
  else
    r.davenport_unknown = true;

  if (auto de = known_davenport(direct_sum(g, GroupSpec::cyclic(d))))
    r.upper.push_back({*de, "D(G+C_d)"});
  else
    r.extended_davenport_unknown = true;
  if (d == g.exponent() && p_components_davenport_bounded(g))
    r.upper.push_back({3 * d - 2, "3n-2"});

  r.predicted = predict_s_dN(g, d);
  return r;
}

std::optional<Int> odd_q_for_exact_theorem(const GroupSpec& g) {
  auto primes = prime_divisors(g);
  std::vector<Int> candidates;
  for (Int p : primes)
    if (p != 2) candidates.push_back(p);
  // An odd prime not dividing |G| has trivial G_q, for which the divisibility
  // condition reads 1 | 1; it qualifies whenever every G_p is cyclic.
  Int spare = 3;
  while (std::find(primes.begin(), primes.end(), spare) != primes.end()) {
    do spare += 2;
    while (!is_prime(spare));
  }
  candidates.push_back(spare);
  std::sort(candidates.begin(), candidates.end());

  for (Int q : candidates) {
    bool others_cyclic = true;
    for (Int p : primes)
      if (p != q && !p_component(g, p).is_cyclic()) others_cyclic = false;
    if (!others_cyclic) continue;
    auto gq = p_component(g, q);
    Int m = dstar(gq) - gq.exponent() + 1;
    if (gq.exponent() % m == 0) return q;
  }
  return std::nullopt;
}

std::vector<Prediction> all_s_dN_predictions(const GroupSpec& g, Int d) {
  require_d(d);
  std::vector<Prediction> out;
  const Int n = g.exponent();

  if (g.is_cyclic()) out.push_back({lcm(n, d) + gcd(n, d) - 1, "cyclic"});

  if (g.rank() <= 2) {
    Int m = g.rank() == 2 ? g.factors()[0] : 1;
    out.push_back({lcm(n, d) + gcd(n, lcm(m, d)) + gcd(m, d) - 2, "rank2"});
  }

  if (g.is_p_group() && !g.is_trivial()) {
    const Int p = prime_of(g);
    const Int ds = dstar(g);
    const Int pv = ipow(p, valuation(d, p));
    if (is_power_of(d, p)) out.push_back({ds + d - 1, "p-group(a)"});
    if (ds <= pv) out.push_back({ds + d - 1, "p-group(b)"});
    if (pv <= 2 * n - ds) out.push_back({ds - n + lcm(n, d) + gcd(n, d) - 1, "p-group(c)"});
  }

  if (auto q = odd_q_for_exact_theorem(g)) {
    auto gq = p_component(g, *q);
    Int excess = dstar(gq) - gq.exponent();
    if (d % (excess + 1) == 0) out.push_back({excess + gcd(n, d) + lcm(n, d) - 1, "odd-q-exact"});
  }
  return out;
}

std::optional<Prediction> predict_s_dN(const GroupSpec& g, Int d) {
  auto all = all_s_dN_predictions(g, d);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<EtaSPrediction> predict_eta_s(const GroupSpec& g) {
  const Int n = g.exponent();
  if (auto q = odd_q_for_exact_theorem(g)) {
    auto gq = p_component(g, *q);
    Int excess = dstar(gq) - gq.exponent();
    EtaSPrediction r;
    r.exact = true;
    r.eta = 2 * excess + n;
    r.s = 2 * excess + 2 * n - 1;
    r.tag = "odd-q-exact";
    r.q = q;
    return r;
  }
  if (n % 2 == 1 && p_components_davenport_bounded(g)) {
    EtaSPrediction r;
    r.exact = false;
    r.eta = 3 * n - 2;
    r.s = 4 * n - 3;
    r.tag = "odd-exponent-bounds";
    return r;
  }
  return std::nullopt;
}

bool corollary_power_flag(const GroupSpec& g, Int i) {
  if (!g.is_p_group() || g.is_trivial()) return false;
  Int twice = dstar(g) + i;
  if (twice % 2 != 0 || twice <= 0) return false;
  return is_power_of(twice / 2, prime_of(g)) && twice / 2 > 1;
}

HypothesisFlags hypothesis_flags(const GroupSpec& g, Int d, std::optional<Int> davenport,
                                 std::optional<Int> s_dN, std::optional<Int> s_nN) {
  require_d(d);
  HypothesisFlags f;
  f.group = g;
  f.d = d;
  f.p_components_bounded = p_components_davenport_bounded(g);
  f.exponent_odd = g.exponent() % 2 == 1;
  f.davenport_g = davenport_equality(g);
  f.davenport_extended = davenport_equality(direct_sum(g, GroupSpec::cyclic(d)));
  f.odd_q = odd_q_for_exact_theorem(g);
  if (f.odd_q) {
    auto gq = p_component(g, *f.odd_q);
    f.odd_q_modulus_divides_d = d % (dstar(gq) - gq.exponent() + 1) == 0;
  }

  f.davenport = davenport;
  if (!f.davenport && f.davenport_g != DavenportEquality::unknown) f.davenport = dstar(g);
  f.s_dN = s_dN;
  if (!f.s_dN)
    if (auto p = predict_s_dN(g, d)) f.s_dN = p->value;

  if (f.davenport && f.s_dN)
    f.short_zero_sum_applicable = *f.davenport <= 2 * d - 1 && *f.s_dN <= 3 * d - 1;

  const Int n = g.exponent();
  if (!s_nN) {
    if (n == d && s_dN) s_nN = s_dN;
    else if (auto p = predict_s_dN(g, n)) s_nN = p->value;
  }
  if (f.davenport && s_nN) f.short_zero_sum_at_exponent = *f.davenport <= 2 * n - 1 && *s_nN <= 3 * n - 1;

  if (g.is_p_group() && !g.is_trivial() && f.davenport)
    for (Int i = 1; i <= *f.davenport; ++i)
      if (corollary_power_flag(g, i)) f.corollary_power_indices.push_back(i);
  return f;
}

}  // namespace zsum
