#include "zsum/witnesses.hpp"

#include <random>

#include "zsum/formulas.hpp"
#include "zsum/reach_table.hpp"

namespace zsum {

Sequence witness_dstar_extended(const GroupSpec& g, Int d) {
  auto chain = dstar_extended(g, d).m;
  Sequence s(g);
  s.add(GroupElement::zero(g), chain[0] - 1);
  for (int i = 0; i < g.rank(); ++i) s.add(GroupElement::basis(g, i), chain[static_cast<std::size_t>(i) + 1] - 1);
  return s;
}

Sequence witness_davenport_padding(InvariantCalculator& calc, const GroupSpec& g, Int d) {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  Sequence s = calc.davenport(g).require_exact().witness;
  s.add(GroupElement::zero(g), d - 1);
  return s;
}

bool certify_dN_free(const Sequence& s, Int d) {
  return !has_forbidden_subsequence(s, LengthSet::multiples_of(d));
}

bool certify_only_zero_blocks(const Sequence& s) {
  Sequence rest(s.group());
  for (const auto& [x, k] : s.multiplicities())
    if (x != 0) rest.add(x, k);
  return is_zero_sum_free(rest);
}

DisjointAtoms witness_remark_disjoint(const GroupSpec& h) {
  if (!h.is_cyclic() && !h.is_p_group())
    throw std::invalid_argument("disjoint atoms are only constructed for cyclic groups and p-groups");
  if (h.is_trivial()) throw std::invalid_argument("H must be nontrivial");

  std::vector<Int> doubled;
  for (Int n : h.factors()) doubled.insert(doubled.end(), {n, n});
  DisjointAtoms w;
  w.group = GroupSpec(doubled);

  // Basis i of H sits in slot 2i of the first copy and slot 2i+1 of the second.
  auto embed = [&](const GroupElement& x, int copy) {
    std::vector<Int> c(doubled.size(), 0);
    for (std::size_t i = 0; i < x.coords().size(); ++i) c[2 * i + static_cast<std::size_t>(copy)] = x.coords()[i];
    return GroupElement(w.group, c);
  };

  Sequence free_part(h);
  for (int i = 0; i < h.rank(); ++i) free_part.add(GroupElement::basis(h, i), h.factors()[static_cast<std::size_t>(i)] - 1);
  const GroupElement closing = neg(free_part.sum());

  w.u = Sequence(w.group);
  w.v = Sequence(w.group);
  for (const auto& [x, k] : free_part.multiplicities()) {
    w.u.add(embed(GroupElement::at(h, x), 0), k);
    w.v.add(embed(GroupElement::at(h, x), 1), k);
  }
  w.u.add(embed(closing, 0));
  w.v.add(embed(closing, 1));
  return w;
}

std::uint64_t count_zero_sum_subsequences(const Sequence& s) {
  const GroupSpec& g = s.group();
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<std::uint64_t> ways(n, 0);
  ways[0] = 1;  // the empty subsequence
  for (const auto& [x, k] : s.multiplicities()) {
    const auto e = GroupElement::at(g, x);
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t from = 0; from < n; ++from) {
      if (!ways[from]) continue;
      GroupElement cur = GroupElement::at(g, from);
      for (Int j = 0; j <= k; ++j) {
        next[cur.index()] += ways[from];
        cur = add(cur, e);
      }
    }
    ways = std::move(next);
  }
  return ways[0] - 1;
}

bool certify_disjoint_atoms(const DisjointAtoms& w) {
  return is_minimal_zero_sum(w.u) && is_minimal_zero_sum(w.v) &&
         count_zero_sum_subsequences(concat(w.u, w.v)) == 3;
}

void for_each_multiset(std::uint32_t n, Int length, const std::function<bool(const std::vector<ElementIndex>&)>& f) {
  if (length < 0 || n == 0) return;
  std::vector<ElementIndex> v(static_cast<std::size_t>(length), 0);
  while (true) {
    if (!f(v)) return;
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] == n - 1) --i;
    if (i == 0) return;
    ElementIndex next = v[i - 1] + 1;
    for (std::size_t j = i - 1; j < v.size(); ++j) v[j] = next;
  }
}

namespace {

std::uint32_t index_sum(const ReachContext& ctx, const std::vector<ElementIndex>& v) {
  std::uint32_t s = 0;
  for (ElementIndex x : v) s = ctx.add(s, static_cast<std::uint32_t>(x));
  return s;
}

}  // namespace

LemmaReport check_lemma_equivalence(InvariantCalculator& calc, const GroupSpec& g, Int d) {
  LemmaReport r;
  r.group = g;
  r.d = d;
  r.davenport = calc.davenport(g).require_exact().value.value();
  r.applicable = r.davenport <= 2 * d - 1;
  if (!r.applicable) return r;

  const auto short_lengths = LengthSet::interval(1, d);
  auto atoms = enumerate_atoms(g, calc.options().max_order);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      ++r.atom_pairs;
      Sequence uv = concat(atoms[i], atoms[j]);
      if (has_forbidden_subsequence(uv, short_lengths)) continue;
      if (r.b_holds) r.b_counterexample = uv;
      r.b_holds = false;
      if (uv.length() >= 2 * d) r.a_holds = false;
    }
  }

  // A counterexample to (c) has no zero-sum subsequence of length in [1, d],
  // and neither does any prefix of it, so the walk prunes every prefix that
  // already has one.
  const Int max_len = std::max(2 * r.davenport, r.davenport + 3);
  auto ctx = ReachContext::get(g, short_lengths);
  std::vector<ElementIndex> path;
  std::function<void(const std::vector<Word>&, std::uint32_t, std::uint32_t)> walk =
      [&](const std::vector<Word>& table, std::uint32_t start, std::uint32_t sum) {
        for (std::uint32_t x = start; x < ctx->group_size(); ++x) {
          std::vector<Word> next(table.size());
          ctx->step(table.data(), next.data(), x);
          if (ctx->forbidden(next.data())) continue;
          const std::uint32_t s = ctx->add(sum, x);
          path.push_back(x);
          ++r.sequences_examined;
          if (s == 0 && static_cast<Int>(path.size()) > r.davenport) {
            if (r.c_holds) r.c_counterexample = Sequence::from_indices(g, path);
            r.c_holds = false;
          }
          if (static_cast<Int>(path.size()) < max_len) walk(next, x, s);
          path.pop_back();
        }
      };
  walk(std::vector<Word>(ctx->table_words(), 0), 0, 0);
  return r;
}

ShortTheoremReport check_short_zero_sum_theorem(InvariantCalculator& calc, const GroupSpec& g, Int d,
                                                const EnumerationBudget& budget) {
  ShortTheoremReport r;
  r.group = g;
  r.d = d;
  r.davenport = calc.davenport(g).require_exact().value.value();
  r.s_dN = calc.s_dN(g, d).require_exact().value.value();
  r.applicable = r.davenport <= 2 * d - 1 && r.s_dN <= 3 * d - 1;
  if (!r.applicable) return r;

  const ShortZeroSumParams params{r.davenport, r.s_dN};
  const auto short_lengths = LengthSet::interval(1, d);
  auto ctx = ReachContext::get(g, LengthSet::all_n());
  const std::uint32_t n = ctx->group_size();
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);

  auto fail = [&](const Sequence& s) {
    if (!r.failures) r.first_failure = s;
    ++r.failures;
  };
  auto run_instance = [&](const std::vector<ElementIndex>& v, bool part1) {
    auto s = Sequence::from_indices(g, v);
    try {
      Certificate proof = part1 ? find_short_zero_sum_in(s, d, params) : find_short_zero_sum(s, d, params);
      Certificate direct = part1 ? find_short_zero_sum_in(s, d, params, ShortZeroSumMode::direct)
                                 : find_short_zero_sum(s, d, params, ShortZeroSumMode::direct);
      if (!verify_certificate(proof, s) || !verify_certificate(direct, s) || !short_lengths.contains(proof.length))
        fail(s);
    } catch (const std::logic_error&) {
      fail(s);
    }
    (part1 ? r.part1_checked : r.part2_checked) += 1;
  };
  auto multiset_count = [&](Int len) {
    // Saturates well above any exhaustive limit.
    double c = 1;
    for (Int i = 1; i <= len; ++i) c = c * static_cast<double>(n - 1 + i) / static_cast<double>(i);
    return c;
  };

  // Part 1: |S| = s_dN.
  if (multiset_count(r.s_dN) <= static_cast<double>(budget.exhaustive_limit)) {
    for_each_multiset(n, r.s_dN, [&](const std::vector<ElementIndex>& v) {
      run_instance(v, true);
      return true;
    });
  } else {
    r.sampled = true;
    for (std::uint64_t i = 0; i < budget.samples; ++i) {
      std::vector<ElementIndex> v(static_cast<std::size_t>(r.s_dN));
      for (auto& x : v) x = pick(rng);
      std::sort(v.begin(), v.end());
      run_instance(v, true);
    }
  }

  // Part 2: zero-sum A with D + 1 <= |A| <= s_dN + 1.
  for (Int len = r.davenport + 1; len <= r.s_dN + 1; ++len) {
    if (multiset_count(len) <= static_cast<double>(budget.exhaustive_limit)) {
      for_each_multiset(n, len, [&](const std::vector<ElementIndex>& v) {
        if (index_sum(*ctx, v) == 0) run_instance(v, false);
        return true;
      });
    } else {
      r.sampled = true;
      for (std::uint64_t i = 0; i < budget.samples; ++i) {
        std::vector<ElementIndex> v(static_cast<std::size_t>(len - 1));
        for (auto& x : v) x = pick(rng);
        v.push_back(ctx->neg(index_sum(*ctx, v)));
        std::sort(v.begin(), v.end());
        run_instance(v, false);
      }
    }
  }
  return r;
}

}  // namespace zsum
