#include "zsum/finder.hpp"

#include <algorithm>

#include "zsum/formulas.hpp"
#include "zsum/reach_table.hpp"

namespace zsum {

namespace {

Certificate make_certificate(Sequence t, const LengthSet& lengths) {
  Certificate c;
  c.length = t.length();
  c.sum = t.sum();
  c.subsequence = std::move(t);
  c.lengths = lengths;
  return c;
}

Certificate checked(Certificate c, const Sequence& original, const char* where) {
  if (!verify_certificate(c, original))
    throw ExtractionFailed(std::string(where) + ": produced an invalid certificate " + c.subsequence.to_string());
  return c;
}

// Length bookkeeping for walking the fold backwards: a partial subsequence is
// tracked by its class, except that bounded kinds track the exact length.
struct BackState {
  std::uint32_t sum;
  Int length;  // exact length for bounded kinds, residue for dN, 0 for N
};

}  // namespace

bool verify_certificate(const Certificate& c, const Sequence& original) {
  const auto& t = c.subsequence;
  return !t.empty() && t.group() == original.group() && t.divides(original) && t.sum().is_zero() &&
         c.sum.is_zero() && c.length == t.length() && c.lengths.contains(t.length());
}

std::optional<Certificate> find_zero_sum(const Sequence& s, const LengthSet& lengths) {
  const GroupSpec& g = s.group();
  auto ctx = ReachContext::get(g, lengths);
  const auto& classes = ctx->classes();
  const auto kind = lengths.kind();
  const auto supp = s.support();
  const std::size_t k = supp.size();

  auto prefix_table = [&](std::size_t i) {
    ReachTable t(g, lengths);
    for (std::size_t j = 0; j < i; ++j) t.incorporate(supp[j], s.multiplicity(supp[j]));
    return t;
  };

  ReachTable full = prefix_table(k);
  std::optional<BackState> state;
  for (int c = 0; c < classes.count() && !state; ++c) {
    if (!classes.accepts(c) || !full.test(0, c)) continue;
    if (kind == LengthSet::Kind::all) state = BackState{0, 0};
    else if (kind == LengthSet::Kind::multiples_of) state = BackState{0, c};
    else state = BackState{0, c + 1};
  }
  if (!state) return std::nullopt;

  auto class_of = [&](Int tracked) {
    if (kind == LengthSet::Kind::all) return 0;
    if (kind == LengthSet::Kind::multiples_of) return static_cast<int>(tracked);
    return classes.of_length(tracked);
  };
  // Tracked length after removing j copies; nullopt when impossible.
  auto remove_copies = [&](Int tracked, Int j) -> std::optional<Int> {
    if (kind == LengthSet::Kind::all) return 0;
    if (kind == LengthSet::Kind::multiples_of) {
      Int d = lengths.param();
      return ((tracked - j) % d + d) % d;
    }
    if (tracked - j < 0) return std::nullopt;
    return tracked - j;
  };
  auto is_empty_state = [&](std::uint32_t sum, Int tracked) { return sum == 0 && tracked == 0; };

  Sequence t(g);
  for (std::size_t i = k; i-- > 0;) {
    const auto x = static_cast<std::uint32_t>(supp[i]);
    const Int mult = s.multiplicity(supp[i]);
    ReachTable before = prefix_table(i);
    const std::uint32_t minus_x = ctx->neg(x);

    bool done = false;
    bool moved = false;
    std::uint32_t sum = state->sum;
    for (Int j = 0; j <= mult; ++j) {
      if (j > 0) sum = ctx->add(sum, minus_x);
      auto tracked = remove_copies(state->length, j);
      if (!tracked) break;
      if (j > 0 && is_empty_state(sum, *tracked)) {
        t.add(supp[i], j);
        done = true;
        break;
      }
      // A nonempty remainder must come from the first i support elements.
      // For bounded kinds tracked = 0 with nonzero sum is unreachable.
      if (kind != LengthSet::Kind::all && kind != LengthSet::Kind::multiples_of && *tracked == 0) continue;
      if (before.test(sum, class_of(*tracked))) {
        t.add(supp[i], j);
        state = BackState{sum, *tracked};
        moved = true;
        break;
      }
    }
    if (done) break;
    if (!moved) throw ExtractionFailed("find_zero_sum: backward pass lost the reachable state");
  }
  return checked(make_certificate(std::move(t), lengths), s, "find_zero_sum");
}

BlockDecomposition decompose_blocks(const Sequence& s, Int t, std::optional<Int> s_nN) {
  const GroupSpec& g = s.group();
  if (g.rank() > 2) throw HypothesisUnmet("decompose_blocks: group rank exceeds 2");
  if (t < 1) throw HypothesisUnmet("decompose_blocks: t must be at least 1");
  const Int n = g.exponent();
  if (!s_nN) s_nN = predict_s_dN(g, n)->value;
  if (s.length() < (t - 1) * n + *s_nN)
    throw HypothesisUnmet("decompose_blocks: |S| = " + std::to_string(s.length()) + " < (t-1)n + s_nN = " +
                          std::to_string((t - 1) * n + *s_nN));

  BlockDecomposition out;
  Sequence rest = s;
  for (Int i = 1; i <= t; ++i) {
    auto lengths = i < t ? LengthSet::exactly(n) : LengthSet::finite({n, 2 * n});
    auto cert = find_zero_sum(rest, lengths);
    if (!cert) throw ExtractionFailed("decompose_blocks: no block " + std::to_string(i) + " in " + rest.to_string());
    rest = remove(rest, cert->subsequence);
    out.blocks.push_back(std::move(cert->subsequence));
  }
  out.remainder = std::move(rest);
  return out;
}

namespace {

void check_short_hypotheses(Int d, const ShortZeroSumParams& p) {
  if (d < 1) throw HypothesisUnmet("d must be at least 1");
  if (p.davenport > 2 * d - 1) throw HypothesisUnmet("D(G) > 2d - 1");
  if (p.s_dN > 3 * d - 1) throw HypothesisUnmet("s_dN(G) > 3d - 1");
}

// The shorter factor of a zero-sum T = T_1 T_2 with both factors nonempty
// zero-sum; exists whenever T is zero-sum but not minimal.
Sequence shorter_factor(const Sequence& t) {
  for (ElementIndex x : t.support()) {
    Sequence without = t;
    without = remove(without, Sequence::from_indices(t.group(), {x}));
    if (auto c = find_zero_sum(without, LengthSet::all_n())) {
      Sequence other = remove(t, c->subsequence);
      return other.length() < c->subsequence.length() ? other : c->subsequence;
    }
  }
  throw ExtractionFailed("zero-sum sequence " + t.to_string() + " has no proper zero-sum factor");
}

Sequence prefix(const Sequence& s, Int len) {
  auto elems = s.sorted_elements();
  elems.resize(static_cast<std::size_t>(len));
  return Sequence::from_indices(s.group(), elems);
}

}  // namespace

Certificate find_short_zero_sum_in(const Sequence& s, Int d, const ShortZeroSumParams& params,
                                   ShortZeroSumMode mode) {
  check_short_hypotheses(d, params);
  if (s.length() < params.s_dN) throw HypothesisUnmet("|S| < s_dN(G)");
  const auto target = LengthSet::interval(1, d);
  if (mode == ShortZeroSumMode::direct) {
    auto c = find_zero_sum(s, target);
    if (!c) throw ExtractionFailed("no zero-sum subsequence of length at most d in " + s.to_string());
    return *c;
  }
  Sequence head = prefix(s, params.s_dN);
  auto block = find_zero_sum(head, LengthSet::finite({d, 2 * d}));
  if (!block) throw ExtractionFailed("no zero-sum block of length d or 2d in " + head.to_string());
  Sequence t = block->subsequence.length() == d ? block->subsequence : shorter_factor(block->subsequence);
  return checked(make_certificate(std::move(t), target), s, "find_short_zero_sum_in");
}

Certificate find_short_zero_sum(const Sequence& a, Int d, const ShortZeroSumParams& params,
                                ShortZeroSumMode mode) {
  check_short_hypotheses(d, params);
  if (!a.sum().is_zero()) throw HypothesisUnmet("A is not zero-sum");
  if (a.length() < params.davenport + 1) throw HypothesisUnmet("|A| < D(G) + 1");
  const GroupSpec& g = a.group();
  const auto target = LengthSet::interval(1, d);

  if (mode == ShortZeroSumMode::direct) {
    auto c = find_zero_sum(a, target);
    if (!c) throw ExtractionFailed("no zero-sum subsequence of length at most d in " + a.to_string());
    return *c;
  }

  if (a.multiplicity(0) > 0)
    return checked(make_certificate(Sequence::from_indices(g, {0}), target), a, "find_short_zero_sum");
  if (a.length() <= 2 * d)
    return checked(make_certificate(shorter_factor(a), target), a, "find_short_zero_sum");
  if (a.length() >= params.s_dN) {
    auto c = find_short_zero_sum_in(a, d, params, mode);
    return checked(c, a, "find_short_zero_sum");
  }

  const Int k = params.s_dN - a.length();
  Sequence padded = a;
  padded.add(ElementIndex{0}, k);
  auto block = find_zero_sum(padded, LengthSet::finite({d, 2 * d}));
  if (!block) throw ExtractionFailed("no zero-sum block of length d or 2d in " + padded.to_string());
  // 0 is not in supp(A), so every zero in the block is padding.
  Sequence a_part = block->subsequence;
  if (Int zeros = a_part.multiplicity(0); zeros > 0)
    a_part = remove(a_part, Sequence::from_indices(g, std::vector<ElementIndex>(static_cast<std::size_t>(zeros), 0)));
  Sequence t = block->subsequence.length() == d ? a_part : remove(a, a_part);
  return checked(make_certificate(std::move(t), target), a, "find_short_zero_sum");
}

}  // namespace zsum
