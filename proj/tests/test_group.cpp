#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "zsum/group.hpp"

using namespace zsum;

namespace {

std::vector<GroupSpec> all_groups(Int max_order) {
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

// Number of solutions of kx = 0 in the direct sum of the given cyclic groups;
// these counts for all k determine the group up to isomorphism.
Int killed_by(const std::vector<Int>& orders, Int k) {
  Int c = 1;
  for (Int q : orders) c *= std::gcd(q, k);
  return c;
}

}  // namespace

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize({2, 6, 4}).factors() == std::vector<Int>{2, 2, 12});
  CHECK(canonicalize({1, 1}).is_trivial());
  CHECK(canonicalize({6}).factors() == std::vector<Int>{6});
  CHECK_THROWS_AS(canonicalize({0}), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize({-3}), std::invalid_argument);
}

TEST_CASE("GroupSpec validates the divisibility chain") {
  CHECK_THROWS_AS(GroupSpec({4, 2}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec({2, 3}), std::invalid_argument);
  GroupSpec g({2, 12});
  CHECK(g.order() == 24);
  CHECK(g.exponent() == 12);
  CHECK(g.rank() == 2);
  GroupSpec t;
  CHECK(t.order() == 1);
  CHECK(t.exponent() == 1);
  CHECK(t.rank() == 0);
  CHECK(t.to_string() == "1");
  CHECK(g.to_string() == "2,12");
}

TEST_CASE("canonicalize is idempotent and preserves the isomorphism type") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<Int> entry(1, 24), count(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Int> orders(static_cast<std::size_t>(count(rng)));
    for (auto& q : orders) q = entry(rng);
    auto g = canonicalize(orders);
    CHECK(canonicalize(g.factors()) == g);
    for (std::size_t i = 1; i < g.factors().size(); ++i) CHECK(g.factors()[i] % g.factors()[i - 1] == 0);
    for (Int k = 1; k <= 24; ++k) CHECK(killed_by(orders, k) == killed_by(g.factors(), k));
  }
}

TEST_CASE("direct_sum") {
  CHECK(direct_sum(GroupSpec({6}), GroupSpec({4})).factors() == std::vector<Int>{2, 12});
  CHECK(direct_sum(GroupSpec(), GroupSpec({5})).factors() == std::vector<Int>{5});
  CHECK(direct_sum(GroupSpec({2, 4}), GroupSpec({3})).factors() == std::vector<Int>{2, 12});

  std::mt19937 rng(11);
  std::uniform_int_distribution<Int> entry(1, 12), count(0, 3);
  auto random_group = [&] {
    std::vector<Int> orders(static_cast<std::size_t>(count(rng)));
    for (auto& q : orders) q = entry(rng);
    return canonicalize(orders);
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_group(), b = random_group(), c = random_group();
    CHECK(direct_sum(a, b) == direct_sum(b, a));
    CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
  }
}

TEST_CASE("p_component") {
  CHECK(p_component(GroupSpec({2, 12}), 3).factors() == std::vector<Int>{3});
  CHECK(p_component(GroupSpec({2, 12}), 2).factors() == std::vector<Int>{2, 4});
  CHECK(p_component(GroupSpec({9}), 2).is_trivial());
  CHECK_THROWS_AS(p_component(GroupSpec({6}), 4), std::invalid_argument);
  CHECK(prime_divisors(GroupSpec({2, 30})) == std::vector<Int>{2, 3, 5});
  CHECK(GroupSpec({3, 9}).is_p_group());
  CHECK_FALSE(GroupSpec({6}).is_p_group());
}

TEST_CASE("element arithmetic") {
  GroupSpec g({2, 4});
  auto a = GroupElement(g, {1, 3});
  auto b = GroupElement(g, {1, 2});
  CHECK(add(a, b).coords() == std::vector<Int>{0, 1});
  CHECK(neg(a).coords() == std::vector<Int>{1, 1});
  CHECK(element_order(GroupElement(GroupSpec({6}), {4})) == 3);
  CHECK(element_order(GroupElement::zero(g)) == 1);
  CHECK(GroupElement(g, {3, -1}).coords() == std::vector<Int>{1, 3});
  CHECK_THROWS_AS(add(a, GroupElement::zero(GroupSpec({8}))), std::invalid_argument);

  auto klein = enumerate_elements(GroupSpec({2, 2}));
  REQUIRE(klein.size() == 4);
  CHECK(klein[0].to_string() == "0.0");
  CHECK(klein[1].to_string() == "0.1");
  CHECK(klein[2].to_string() == "1.0");
  CHECK(klein[3].to_string() == "1.1");
  for (std::size_t i = 0; i < klein.size(); ++i) CHECK(klein[i].index() == i);
  CHECK(GroupElement::zero(GroupSpec()).to_string() == "0");
}

TEST_CASE("parse_group and parse_element") {
  CHECK(parse_group("2,6,4").factors() == std::vector<Int>{2, 2, 12});
  CHECK(parse_group("").is_trivial());
  CHECK(parse_group("1").is_trivial());
  CHECK_THROWS(parse_group("2,x"));
  GroupSpec g({2, 4});
  CHECK(parse_element(g, "1.3").coords() == std::vector<Int>{1, 3});
  CHECK_THROWS(parse_element(g, "1.4"));
  CHECK_THROWS(parse_element(g, "1"));
}

TEST_CASE("sum of all elements vanishes unless there is exactly one involution") {
  for (const auto& g : all_groups(64)) {
    GroupElement total = GroupElement::zero(g);
    int involutions = 0;
    for (const auto& x : enumerate_elements(g)) {
      total = add(total, x);
      if (element_order(x) == 2) ++involutions;
    }
    CHECK_MESSAGE(total.is_zero() == (involutions != 1), g.to_string());
  }
}

TEST_CASE("element order is lcm of n_i / gcd(n_i, c_i)") {
  for (const auto& g : all_groups(36))
    for (const auto& x : enumerate_elements(g)) {
      Int k = 1;
      while (!scale(x, k).is_zero()) ++k;
      CHECK(element_order(x) == k);
    }
}

TEST_CASE("reduction_hom examples") {
  ReductionHom mod2(GroupSpec({2, 4}), {2, 2});
  CHECK(mod2.codomain().factors() == std::vector<Int>{2, 2});
  CHECK(mod2(GroupElement(GroupSpec({2, 4}), {1, 3})).coords() == std::vector<Int>{1, 1});
  auto id = ReductionHom::identity(GroupSpec({6}));
  for (const auto& x : enumerate_elements(GroupSpec({6}))) CHECK(id(x) == x);
  CHECK(ReductionHom(GroupSpec({2, 12}), {2, 4}).kernel_order() == 3);
  CHECK_THROWS_AS(ReductionHom(GroupSpec({2, 12}), {2, 5}), std::invalid_argument);
  CHECK(ReductionHom(GroupSpec({6, 6}), {2, 3}).codomain().factors() == std::vector<Int>{6});
}

TEST_CASE("reduction_hom is a homomorphism onto its codomain") {
  for (const auto& g : all_groups(36)) {
    // every divisor pattern for the first and last factor
    std::vector<Int> moduli = g.factors();
    for (std::size_t slot = 0; slot < moduli.size(); ++slot) {
      for (Int q = 1; q <= g.factors()[slot]; ++q) {
        if (g.factors()[slot] % q != 0) continue;
        auto m = moduli;
        m[slot] = q;
        ReductionHom phi(g, m);
        Int expected_image = 1;
        for (Int x : m) expected_image *= x;
        CHECK(phi.codomain().order() == expected_image);
        CHECK(phi.kernel_order() * expected_image == g.order());
        auto elems = enumerate_elements(g);
        for (std::size_t i = 0; i < elems.size(); i += 3)
          for (std::size_t j = 0; j < elems.size(); j += 5)
            CHECK(phi(add(elems[i], elems[j])) == add(phi(elems[i]), phi(elems[j])));
      }
    }
  }
}
