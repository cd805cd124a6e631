#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "zsum/store.hpp"
#include "zsum/verify.hpp"

using namespace zsum;

namespace {

std::vector<std::string> value_columns(const std::vector<VerifyRecord>& records) {
  std::vector<std::string> out;
  for (auto r : records) {
    r.runtime = 0;
    out.push_back(to_csv(r));
  }
  return out;
}

}  // namespace

TEST_CASE("groups_up_to") {
  auto gs = groups_up_to(8);
  std::vector<std::string> names;
  for (const auto& g : gs) names.push_back(g.to_string());
  CHECK(names == std::vector<std::string>{"1", "2", "3", "2,2", "4", "5", "6", "7", "2,2,2", "2,4", "8"});
  CHECK(groups_up_to(16).size() == 25);
}

TEST_CASE("s_dN cells") {
  InvariantCalculator calc;
  auto c6 = verify_s_dN_cell(calc, GroupSpec({6}), 4);
  CHECK(c6.status == VerifyStatus::match);
  CHECK(c6.brute == 13);
  CHECK(c6.predicted->tag == "cyclic");

  auto e = verify_s_dN_cell(calc, GroupSpec({2, 2, 2}), 2);
  CHECK(e.status == VerifyStatus::match);
  CHECK(e.brute == 5);
  CHECK(e.predicted->tag == "p-group(a)");

  CalculatorOptions o;
  o.max_order = 4;
  InvariantCalculator small(o);
  auto sk = verify_s_dN_cell(small, GroupSpec({2, 4}), 2);
  CHECK(sk.status == VerifyStatus::skipped);
  CHECK(sk.reason.rfind("ceiling", 0) == 0);
  CHECK_FALSE(sk.budget_skip());
}

TEST_CASE("budget skips drive the exit code") {
  CalculatorOptions o;
  o.limits.max_nodes = 3;
  InvariantCalculator calc(o);
  auto r = verify_s_dN_cell(calc, GroupSpec({2, 8}), 7);
  CHECK(r.status == VerifyStatus::skipped);
  CHECK(r.budget_skip());
  CHECK(exit_code_for({r}) == 3);
  VerifyRecord bad;
  bad.status = VerifyStatus::mismatch;
  CHECK(exit_code_for({r, bad}) == 2);
  VerifyRecord ok;
  ok.status = VerifyStatus::match;
  CHECK(exit_code_for({ok}) == 0);
}

TEST_CASE("serialization") {
  InvariantCalculator calc;
  auto r = verify_s_dN_cell(calc, GroupSpec({2, 4}), 3);
  auto j = to_json(r);
  CHECK(j["kind"] == "s_dN");
  CHECK(j["group"] == "2,4");
  CHECK(j["status"] == "MATCH");
  CHECK(csv_header() == "kind,group,d,lower,brute,upper,predicted,tag,status,reason,nodes,runtime");
  CHECK(to_csv(r).rfind("s_dN,\"2,4\",3,", 0) == 0);
}

TEST_CASE("sweep is identical across worker counts and cache state") {
  VerifyOptions opt;
  opt.max_order = 8;
  opt.d_max = 4;
  auto dir = std::filesystem::temp_directory_path() / "zsum-test-verify-store";
  std::filesystem::remove_all(dir);

  CalculatorOptions co;
  co.store = std::make_shared<ResultsStore>(dir);
  InvariantCalculator cold(co);
  auto first = run_verify(cold, opt);
  CHECK(exit_code_for(first) == 0);

  opt.workers = 3;
  InvariantCalculator fresh;
  auto second = run_verify(fresh, opt);
  CHECK(value_columns(first) == value_columns(second));
  for (std::size_t i = 0; i < first.size() && i < second.size(); ++i) CHECK(first[i].witness == second[i].witness);

  CalculatorOptions wo;
  wo.store = std::make_shared<ResultsStore>(dir);
  CHECK(wo.store->size() > 0);
  InvariantCalculator warm(wo);
  opt.workers = 1;
  auto third = run_verify(warm, opt);
  CHECK(value_columns(first) == value_columns(third));
  std::filesystem::remove_all(dir);
}

TEST_CASE("theorem filter") {
  VerifyOptions opt;
  opt.max_order = 4;
  opt.d_max = 2;
  opt.theorems = {"davenport"};
  InvariantCalculator calc;
  auto rs = run_verify(calc, opt);
  CHECK(rs.size() == 5);
  for (const auto& r : rs) CHECK(r.kind == "D");
  opt.theorems = {"bogus"};
  CHECK_THROWS(run_verify(calc, opt));
}

TEST_CASE("store skips torn lines and later entries win") {
  auto dir = std::filesystem::temp_directory_path() / "zsum-test-store";
  std::filesystem::remove_all(dir);
  {
    ResultsStore st(dir);
    st.put("a", {{"value", 1}});
    st.put("a", {{"value", 2}});
    st.put("b", {{"value", 3}});
  }
  {
    std::ofstream f(ResultsStore(dir).file(), std::ios::app);
    f << "{\"key\":\"c\",\"val";
  }
  ResultsStore st(dir);
  CHECK(st.size() == 2);
  CHECK((*st.lookup("a"))["value"] == 2);
  CHECK_FALSE(st.lookup("c"));
  CHECK(ResultsStore::key_for(GroupSpec({2, 6}), LengthSet::multiples_of(4)) == "G=2,6|L=4N|engine=1");
  std::filesystem::remove_all(dir);
}
