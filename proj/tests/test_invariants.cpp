#include <doctest.h>

#include <filesystem>
#include <functional>
#include <set>

#include "oracle.hpp"
#include "zsum/invariants.hpp"
#include "zsum/reach_table.hpp"

using namespace zsum;

namespace {

std::vector<GroupSpec> groups_to(Int max_order) {
  std::vector<GroupSpec> out;
  std::vector<Int> chain;
  std::function<void(Int)> grow = [&](Int product) {
    out.emplace_back(chain);
    Int step = chain.empty() ? 2 : chain.back();
    for (Int f = step; product * f <= max_order; f += chain.empty() ? 1 : step) {
      chain.push_back(f);
      grow(product * f);
      chain.pop_back();
    }
  };
  grow(1);
  return out;
}

}  // namespace

TEST_CASE("named invariants") {
  InvariantCalculator calc;
  CHECK(calc.davenport(GroupSpec({2, 2})).value == 3);
  CHECK(calc.egz(GroupSpec({3, 3})).value == 9);
  CHECK(calc.s_dN(GroupSpec({6}), 4).value == 13);
  CHECK(calc.eta(GroupSpec({3, 3})).value == 7);
  CHECK(calc.davenport(GroupSpec({5})).value == 5);
  CHECK(calc.egz(GroupSpec({3})).value == 5);
  CHECK(calc.davenport(GroupSpec({3, 3})).value == 5);
  CHECK(calc.s_L(GroupSpec({4}), LengthSet::parse("{2,4}")).value ==
        oracle::s_L({4}, [](long len) { return len == 2 || len == 4; }));
}

TEST_CASE("ZS of C_2 is decided by brute force") {
  // 0.1 has no zero-sum subsequence of length 2, so ZS(C_2) > 2.
  InvariantCalculator calc;
  long brute = oracle::s_L({2}, [](long len) { return len == 2; });
  CHECK(brute == 3);
  CHECK(calc.zs(GroupSpec({2})).value == brute);
  CHECK(calc.zs(GroupSpec({3})).value == oracle::s_L({3}, [](long len) { return len == 3; }));
  CHECK(calc.zs(GroupSpec({2, 2})).value == oracle::s_L({2, 2}, [](long len) { return len == 4; }));
}

TEST_CASE("infinity is explicit") {
  InvariantCalculator calc;
  auto r = calc.s_L(GroupSpec({4}), LengthSet::exactly(3));
  CHECK(r.value.is_infinite());
  CHECK(r.value.to_string() == "inf");
  CHECK_THROWS(r.value.value());
  CHECK(r.witness.empty());
}

TEST_CASE("search ceiling") {
  CalculatorOptions o;
  o.max_order = 8;
  InvariantCalculator calc(o);
  CHECK_THROWS_AS(calc.davenport(GroupSpec({9})), SearchCeilingExceeded);
  CHECK(calc.davenport(GroupSpec({8})).value == 8);
}

TEST_CASE("budget-limited results are flagged and refused by require_exact") {
  CalculatorOptions o;
  o.limits.max_nodes = 5;
  InvariantCalculator calc(o);
  auto r = calc.egz(GroupSpec({3, 3, 3}));
  CHECK_FALSE(r.exact);
  CHECK_THROWS_AS(r.require_exact(), BudgetExceeded);
}

TEST_CASE("invariant chain and consistency on all groups up to order 16") {
  CalculatorOptions o;
  o.limits.max_seconds = 2;
  InvariantCalculator calc(o);
  for (const auto& g : groups_to(16)) {
    auto d = calc.davenport(g);
    auto e = calc.eta(g);
    auto s = calc.egz(g);
    REQUIRE(d.exact);
    REQUIRE(e.exact);
    if (!s.exact) continue;
    CHECK(1 <= d.value.value());
    CHECK(d.value.value() <= e.value.value());
    CHECK(e.value.value() <= s.value.value());
    CHECK(calc.s_dN(g, 1).value == d.value);
    for (const auto* r : {&d, &e, &s}) {
      CHECK(r->value.value() == r->witness.length() + 1);
      CHECK_FALSE(has_forbidden_subsequence(r->witness, r->lengths));
      for (const auto& child : canonical_extensions(r->witness)) CHECK(has_forbidden_subsequence(child, r->lengths));
    }
  }
}

TEST_CASE("memo cache returns identical results") {
  InvariantCalculator calc;
  auto first = calc.s_dN(GroupSpec({2, 4}), 3);
  auto second = calc.s_dN(GroupSpec({2, 4}), 3);
  CHECK_FALSE(first.cached);
  CHECK(second.cached);
  CHECK(first.value == second.value);
  CHECK(first.witness == second.witness);
}

TEST_CASE("results store persists across calculators") {
  auto dir = std::filesystem::temp_directory_path() / "zsum-test-invariants-store";
  std::filesystem::remove_all(dir);
  {
    CalculatorOptions o;
    o.store = std::make_shared<ResultsStore>(dir);
    InvariantCalculator calc(o);
    auto r = calc.s_dN(GroupSpec({2, 2}), 3);
    CHECK_FALSE(r.cached);
  }
  CalculatorOptions o;
  o.store = std::make_shared<ResultsStore>(dir);
  CHECK(o.store->size() == 1);
  InvariantCalculator calc(o);
  auto r = calc.s_dN(GroupSpec({2, 2}), 3);
  CHECK(r.cached);
  InvariantCalculator fresh;
  auto direct = fresh.s_dN(GroupSpec({2, 2}), 3);
  CHECK(r.value == direct.value);
  CHECK(r.witness == direct.witness);
  std::filesystem::remove_all(dir);
}

TEST_CASE("atoms of small cyclic groups") {
  auto a2 = enumerate_atoms(GroupSpec({2}));
  REQUIRE(a2.size() == 2);
  CHECK(a2[0].to_string() == "0^1");
  CHECK(a2[1].to_string() == "1^2");

  auto a3 = enumerate_atoms(GroupSpec({3}));
  std::set<std::string> names;
  for (const auto& a : a3) names.insert(a.to_string());
  CHECK(names == std::set<std::string>{"0^1", "1^1 2^1", "1^3", "2^3"});
}

TEST_CASE("atoms are minimal, complete, and reach length D") {
  InvariantCalculator calc;
  for (const auto& g : groups_to(16)) {
    auto atoms = enumerate_atoms(g);
    std::set<std::string> names;
    Int longest = 0;
    for (const auto& a : atoms) {
      CHECK(is_minimal_zero_sum(a));
      names.insert(a.to_string());
      longest = std::max(longest, a.length());
    }
    CHECK(names.size() == atoms.size());
    CHECK(longest == calc.davenport(g).value.value());
    if (g.order() > 9) continue;
    // every minimal zero-sum multiset of length <= 4, found directly
    for (Int len = 1; len <= 4; ++len)
      oracle::for_each_multiset(g.order(), len, [&](const std::vector<long>& v) {
        Sequence s(g);
        for (long x : v) s.add(static_cast<ElementIndex>(x));
        if (is_minimal_zero_sum(s)) CHECK(names.count(s.to_string()) == 1);
      });
  }
  CHECK_THROWS_AS(enumerate_atoms(GroupSpec({17})), SearchCeilingExceeded);
}
