#include "zsum/invariants.hpp"

#include "zsum/formulas.hpp"
#include "zsum/reach_table.hpp"

namespace zsum {

Int ExtendedInt::value() const {
  if (!value_) throw std::logic_error("value of an infinite invariant");
  return *value_;
}

std::string ExtendedInt::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

std::string to_string(InvariantName n) {
  switch (n) {
    case InvariantName::D: return "D";
    case InvariantName::s: return "s";
    case InvariantName::eta: return "eta";
    case InvariantName::ZS: return "ZS";
    case InvariantName::s_dN: return "s_dN";
    case InvariantName::s_L: return "s_L";
  }
  return "s_L";
}

const InvariantResult& InvariantResult::require_exact() const {
  if (!exact)
    throw BudgetExceeded(to_string(name) + "(" + group.to_string() + ") search budget exhausted; " +
                         value.to_string() + " is a lower bound");
  return *this;
}

nlohmann::json to_json(const InvariantResult& r) {
  nlohmann::json j;
  j["name"] = to_string(r.name);
  j["group"] = r.group.to_string();
  j["L"] = r.lengths.to_string();
  if (r.d) j["d"] = *r.d;
  j["value"] = r.value.to_string();
  j["witness"] = r.witness.to_string();
  j["exact"] = r.exact;
  j["capped"] = r.capped;
  j["nodes"] = r.nodes;
  j["seconds"] = r.seconds;
  return j;
}

InvariantCalculator::InvariantCalculator(CalculatorOptions options) : options_(std::move(options)) {}

InvariantResult InvariantCalculator::davenport(const GroupSpec& g) {
  std::optional<Int> cap;
  if (options_.use_known_caps && davenport_equality(g) != DavenportEquality::unknown) cap = dstar(g);
  return compute(InvariantName::D, g, LengthSet::all_n(), cap);
}

InvariantResult InvariantCalculator::egz(const GroupSpec& g) {
  return compute(InvariantName::s, g, LengthSet::exactly(g.exponent()), std::nullopt);
}

InvariantResult InvariantCalculator::eta(const GroupSpec& g) {
  return compute(InvariantName::eta, g, LengthSet::interval(1, g.exponent()), std::nullopt);
}

InvariantResult InvariantCalculator::zs(const GroupSpec& g) {
  return compute(InvariantName::ZS, g, LengthSet::exactly(g.order()), std::nullopt);
}

InvariantResult InvariantCalculator::s_dN(const GroupSpec& g, Int d) {
  std::optional<Int> cap;
  if (options_.use_known_caps) {
    auto ext = direct_sum(g, GroupSpec::cyclic(d));
    if (davenport_equality(ext) != DavenportEquality::unknown) cap = dstar(ext);
  }
  auto r = compute(InvariantName::s_dN, g, LengthSet::multiples_of(d), cap);
  r.d = d;
  return r;
}

InvariantResult InvariantCalculator::s_L(const GroupSpec& g, const LengthSet& lengths) {
  return compute(InvariantName::s_L, g, lengths, std::nullopt);
}

InvariantResult InvariantCalculator::compute(InvariantName name, const GroupSpec& g, const LengthSet& lengths,
                                             std::optional<Int> cap) {
  InvariantResult r;
  r.name = name;
  r.group = g;
  r.lengths = lengths;
  r.witness = Sequence(g);

  if (!lengths.meets_multiples_of(g.exponent())) {
    r.value = ExtendedInt::infinity();
    return r;
  }
  if (g.order() > options_.max_order)
    throw SearchCeilingExceeded("|G| = " + std::to_string(g.order()) + " exceeds the search ceiling " +
                                std::to_string(options_.max_order));

  const std::string key = ResultsStore::key_for(g, lengths);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      InvariantResult hit = it->second;
      hit.name = name;
      hit.cached = true;
      return hit;
    }
  }
  if (options_.store) {
    if (auto j = options_.store->lookup(key)) {
      r.value = std::stoll((*j)["value"].get<std::string>());
      r.witness = Sequence::parse(g, (*j)["witness"].get<std::string>());
      r.exact = true;
      r.capped = j->value("capped", false);
      r.nodes = j->value("nodes", std::uint64_t{0});
      r.seconds = j->value("seconds", 0.0);
      r.cached = true;
      std::lock_guard lock(mu_);
      cache_.emplace(key, r);
      return r;
    }
  }

  SearchLimits limits = options_.limits;
  if (cap && (!limits.upper_bound || *cap < *limits.upper_bound)) limits.upper_bound = cap;
  auto out = max_extremal(g, lengths, limits);
  r.value = out.max_length + 1;
  r.witness = out.witness;
  r.exact = out.exact;
  r.capped = out.capped;
  r.nodes = out.nodes_expanded;
  r.seconds = out.wall_time.count();

  if (r.exact) {
    // Identical keys always carry identical values, so racing inserts agree.
    std::lock_guard lock(mu_);
    cache_.insert_or_assign(key, r);
  }
  if (r.exact && options_.store) options_.store->put(key, to_json(r));
  return r;
}

namespace {

struct AtomWalker {
  const ReachContext& ctx;
  std::uint32_t n;
  std::vector<ElementIndex> path;
  std::vector<Sequence>& out;
  const GroupSpec& g;

  void visit(const std::vector<Word>& table, std::uint32_t start, std::uint32_t sum) {
    for (std::uint32_t x = std::max<std::uint32_t>(start, 1); x < n; ++x) {
      // Appending x closes a zero-sum subsequence iff -x is already reachable.
      if (ctx.test(table.data(), ctx.neg(x), 0)) continue;
      std::vector<Word> next(table.size(), 0);
      ctx.step(table.data(), next.data(), x);
      const std::uint32_t s = ctx.add(sum, x);
      path.push_back(x);
      const std::uint32_t closing = ctx.neg(s);
      if (closing >= x) {
        auto atom = Sequence::from_indices(g, path);
        atom.add(closing);
        out.push_back(std::move(atom));
      }
      visit(next, x, s);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Sequence> enumerate_atoms(const GroupSpec& g, Int max_order) {
  if (g.order() > max_order)
    throw SearchCeilingExceeded("atom enumeration limited to |G| <= " + std::to_string(max_order));
  std::vector<Sequence> out;
  out.push_back(Sequence::from_indices(g, {0}));
  auto ctx = ReachContext::get(g, LengthSet::all_n());
  AtomWalker w{*ctx, ctx->group_size(), {}, out, g};
  std::vector<Word> empty(ctx->table_words(), 0);
  w.visit(empty, 1, 0);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace zsum
