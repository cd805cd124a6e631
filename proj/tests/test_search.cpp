#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "zsum/reach_table.hpp"
#include "zsum/search.hpp"

using namespace zsum;

namespace {

oracle::Multiset to_multiset(const Sequence& s) {
  oracle::Multiset m;
  for (ElementIndex x : s.sorted_elements()) {
    auto c = s.group().coords_of(x);
    m.emplace_back(c.begin(), c.end());
  }
  return m;
}

std::vector<long> orders_of(const GroupSpec& g) { return {g.factors().begin(), g.factors().end()}; }

Sequence random_sequence(const GroupSpec& g, int max_len, std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<ElementIndex> elem(0, static_cast<ElementIndex>(g.order() - 1));
  Sequence s(g);
  for (int i = len(rng); i > 0; --i) s.add(elem(rng));
  return s;
}

std::vector<LengthSet> sample_length_sets() {
  return {LengthSet::all_n(),        LengthSet::multiples_of(1), LengthSet::multiples_of(2),
          LengthSet::multiples_of(3), LengthSet::multiples_of(4), LengthSet::exactly(2),
          LengthSet::exactly(3),      LengthSet::exactly(4),      LengthSet::interval(1, 2),
          LengthSet::interval(2, 4),  LengthSet::finite({2, 5}),  LengthSet::finite({3, 6})};
}

const std::vector<GroupSpec> kGroups = {GroupSpec(),        GroupSpec({2}), GroupSpec({3}),    GroupSpec({4}),
                                        GroupSpec({2, 2}),  GroupSpec({5}), GroupSpec({6}),    GroupSpec({7}),
                                        GroupSpec({8}),     GroupSpec({2, 4}), GroupSpec({2, 2, 2}), GroupSpec({9}),
                                        GroupSpec({3, 3})};

}  // namespace

TEST_CASE("reach_incorporate examples") {
  ReachTable t(GroupSpec({3}), LengthSet::multiples_of(3));
  t.incorporate(1, 3);
  CHECK(t.test(0, 0));
  CHECK(t.has_forbidden());

  ReachTable z(GroupSpec({5}), LengthSet::exactly(1));
  z.incorporate(0, 1);
  CHECK(z.test(0, z.context().classes().of_length(1)));
  CHECK(z.has_forbidden());

  ReachTable e(GroupSpec({2}), LengthSet::exactly(2));
  e.incorporate(1, 2);
  CHECK(e.test(0, e.context().classes().of_length(2)));
  CHECK(e.has_forbidden());

  CHECK_THROWS(t.incorporate(1, 0));
}

TEST_CASE("has_forbidden_subsequence examples") {
  GroupSpec c2({2});
  CHECK(has_forbidden_subsequence(Sequence::parse(c2, "0^3 1^2"), LengthSet::multiples_of(4)));
  CHECK_FALSE(has_forbidden_subsequence(Sequence::parse(c2, "0^3"), LengthSet::multiples_of(4)));
  CHECK_FALSE(has_forbidden_subsequence(Sequence::parse(GroupSpec({6}), "1^11 0"), LengthSet::multiples_of(4)));
  CHECK_FALSE(has_forbidden_subsequence(Sequence(c2), LengthSet::all_n()));
}

TEST_CASE("has_forbidden_subsequence agrees with sub-multiset enumeration") {
  std::mt19937 rng(1);
  for (const auto& g : kGroups) {
    for (const auto& l : sample_length_sets()) {
      for (int trial = 0; trial < 25; ++trial) {
        auto s = random_sequence(g, 8, rng);
        bool brute = oracle::has_zero_sum(orders_of(g), to_multiset(s), [&](long len) { return l.contains(len); });
        CHECK_MESSAGE(has_forbidden_subsequence(s, l) == brute, g.to_string() << " " << l.to_string() << " "
                                                                               << s.to_string());
      }
    }
  }
}

TEST_CASE("reach table marks exactly the reachable (sum, class) pairs") {
  std::mt19937 rng(2);
  for (const auto& g : {GroupSpec({2, 2}), GroupSpec({6}), GroupSpec({3, 3})}) {
    for (const auto& l : {LengthSet::multiples_of(3), LengthSet::exactly(3), LengthSet::all_n()}) {
      for (int trial = 0; trial < 20; ++trial) {
        auto s = random_sequence(g, 7, rng);
        auto table = reach_table_of(s, l);
        const auto& classes = table.context().classes();
        std::vector<std::vector<bool>> seen(static_cast<std::size_t>(g.order()),
                                            std::vector<bool>(static_cast<std::size_t>(classes.count()), false));
        // enumerate sub-multisets directly
        auto elems = s.sorted_elements();
        auto supp = s.support();
        std::vector<Int> use(supp.size(), 0);
        while (true) {
          std::size_t i = 0;
          while (i < use.size() && use[i] == s.multiplicity(supp[i])) use[i++] = 0;
          if (i == use.size()) break;
          ++use[i];
          Sequence t(g);
          for (std::size_t j = 0; j < supp.size(); ++j) t.add(supp[j], use[j]);
          seen[t.sum().index()][static_cast<std::size_t>(classes.of_length(t.length()))] = true;
        }
        for (Int x = 0; x < g.order(); ++x)
          for (int c = 0; c < classes.count(); ++c)
            CHECK(table.test(static_cast<ElementIndex>(x), c) == seen[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)]);
      }
    }
  }
}

TEST_CASE("monotonicity under division") {
  std::mt19937 rng(3);
  for (const auto& g : {GroupSpec({2, 2}), GroupSpec({2, 4}), GroupSpec({4, 4}), GroupSpec({16}), GroupSpec({2, 8})}) {
    for (const auto& l : sample_length_sets()) {
      for (int trial = 0; trial < 20; ++trial) {
        auto s = random_sequence(g, 10, rng);
        // a random subsequence T of S
        Sequence t(g);
        for (const auto& [x, k] : s.multiplicities()) t.add(x, std::uniform_int_distribution<Int>(0, k)(rng));
        REQUIRE(t.divides(s));
        if (has_forbidden_subsequence(t, l)) CHECK(has_forbidden_subsequence(s, l));
      }
    }
  }
}

TEST_CASE("incorporation order does not matter") {
  std::mt19937 rng(4);
  for (const auto& g : {GroupSpec({2, 4}), GroupSpec({3, 3}), GroupSpec({12}), GroupSpec({2, 2, 2})}) {
    for (const auto& l : sample_length_sets()) {
      auto s = random_sequence(g, 10, rng);
      auto reference = reach_table_of(s, l);
      auto supp = s.support();
      for (int perm = 0; perm < 5; ++perm) {
        std::shuffle(supp.begin(), supp.end(), rng);
        ReachTable t(g, l);
        for (auto x : supp) t.incorporate(x, s.multiplicity(x));
        CHECK(t == reference);
      }
    }
  }
}

TEST_CASE("max_extremal examples") {
  auto d5 = max_extremal(GroupSpec({5}), LengthSet::all_n());
  CHECK(d5.max_length == 4);
  CHECK(d5.witness == Sequence::parse(GroupSpec({5}), "1^4"));

  auto s3 = max_extremal(GroupSpec({3}), LengthSet::exactly(3));
  CHECK(s3.max_length == 4);
  CHECK_FALSE(has_forbidden_subsequence(s3.witness, LengthSet::exactly(3)));
  CHECK(s3.witness.length() == 4);

  for (Int d = 1; d <= 6; ++d) {
    auto t = max_extremal(GroupSpec(), LengthSet::multiples_of(d));
    CHECK(t.max_length == d - 1);
    CHECK(t.witness == Sequence::parse(GroupSpec(), d > 1 ? "0^" + std::to_string(d - 1) : ""));
  }
}

TEST_CASE("max_extremal matches brute-force s_L on tiny groups") {
  for (const auto& g : {GroupSpec(), GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({2, 2})}) {
    for (const auto& l : sample_length_sets()) {
      if (!l.meets_multiples_of(g.exponent())) continue;
      auto out = max_extremal(g, l);
      long brute = oracle::s_L(orders_of(g), [&](long len) { return l.contains(len); }, 12);
      CHECK_MESSAGE(out.max_length + 1 == brute, g.to_string() << " " << l.to_string());
      CHECK(out.exact);
      CHECK(out.witness.length() == out.max_length);
      CHECK_FALSE(has_forbidden_subsequence(out.witness, l));
      // maximality: every one-element extension is forbidden
      for (const auto& child : canonical_extensions(out.witness)) CHECK(has_forbidden_subsequence(child, l));
    }
  }
}

TEST_CASE("infinite invariants are rejected") {
  CHECK_THROWS_AS(max_extremal(GroupSpec({3}), LengthSet::exactly(2)), InfiniteInvariant);
  CHECK_THROWS_AS(max_extremal(GroupSpec({4}), LengthSet::interval(1, 3)), InfiniteInvariant);
  CHECK_NOTHROW(check_finite(GroupSpec({4}), LengthSet::multiples_of(6)));
}

TEST_CASE("witness is canonically least among maximal sequences") {
  // enumerate every free sequence of maximal length directly
  for (const auto& [g, l] : std::vector<std::pair<GroupSpec, LengthSet>>{
           {GroupSpec({2, 2}), LengthSet::all_n()},
           {GroupSpec({6}), LengthSet::multiples_of(4)},
           {GroupSpec({3}), LengthSet::exactly(3)},
           {GroupSpec({2, 4}), LengthSet::all_n()}}) {
    auto out = max_extremal(g, l);
    std::optional<std::vector<long>> least;
    oracle::for_each_multiset(g.order(), out.max_length, [&](const std::vector<long>& v) {
      if (least) return;
      Sequence s(g);
      for (long x : v) s.add(static_cast<ElementIndex>(x));
      if (!has_forbidden_subsequence(s, l)) least = v;
    });
    REQUIRE(least);
    Sequence expected(g);
    for (long x : *least) expected.add(static_cast<ElementIndex>(x));
    CHECK(out.witness == expected);
  }
}

TEST_CASE("results do not depend on the worker count") {
  for (const auto& [g, l] : std::vector<std::pair<GroupSpec, LengthSet>>{
           {GroupSpec({3, 3}), LengthSet::exactly(3)},
           {GroupSpec({2, 8}), LengthSet::multiples_of(3)},
           {GroupSpec({4, 4}), LengthSet::all_n()},
           {GroupSpec({2, 2, 2}), LengthSet::interval(1, 2)},
           {GroupSpec({10}), LengthSet::multiples_of(9)}}) {
    SearchLimits one;
    auto base = max_extremal(g, l, one);
    for (unsigned w : {2u, 3u, 4u}) {
      SearchLimits many;
      many.workers = w;
      many.split_threshold = 64;  // force donation
      auto out = max_extremal(g, l, many);
      CHECK(out.max_length == base.max_length);
      CHECK(out.witness == base.witness);
      CHECK(out.exact);
    }
  }
}

TEST_CASE("budgets make results inexact") {
  SearchLimits tiny;
  tiny.max_nodes = 10;
  auto out = max_extremal(GroupSpec({3, 3, 3}), LengthSet::exactly(3), tiny);
  CHECK_FALSE(out.exact);
  CHECK_FALSE(has_forbidden_subsequence(out.witness, LengthSet::exactly(3)));
}

TEST_CASE("admissible cap stops at the bound without changing the answer") {
  SearchLimits capped;
  capped.upper_bound = 19;
  auto out = max_extremal(GroupSpec({3, 9}), LengthSet::multiples_of(9), capped);
  CHECK(out.exact);
  CHECK(out.capped);
  CHECK(out.max_length == 18);
  CHECK(out.witness == Sequence::parse(GroupSpec({3, 9}), "0.0^8 0.1^8 1.0^2"));

  SearchLimits loose;
  loose.upper_bound = 100;
  auto full = max_extremal(GroupSpec({2, 4}), LengthSet::multiples_of(3), loose);
  auto plain = max_extremal(GroupSpec({2, 4}), LengthSet::multiples_of(3));
  CHECK_FALSE(full.capped);
  CHECK(full.witness == plain.witness);
}
