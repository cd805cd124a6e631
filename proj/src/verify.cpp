#include "zsum/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

namespace zsum {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool selected(const VerifyOptions& o, const std::string& theorem) {
  return o.theorems.empty() || std::find(o.theorems.begin(), o.theorems.end(), theorem) != o.theorems.end() ||
         std::find(o.theorems.begin(), o.theorems.end(), "all") != o.theorems.end();
}

void describe_bounds(VerifyRecord& r, const BoundsReport& b) {
  r.lower = b.max_lower();
  r.upper = b.min_upper();
  std::string lo_tag, up_tag;
  for (const auto& x : b.lower)
    if (x.value == r.lower && lo_tag.empty()) lo_tag = x.source;
  for (const auto& x : b.upper)
    if (r.upper && x.value == *r.upper && up_tag.empty()) up_tag = x.source;
  r.bounds = std::to_string(r.lower) + " (" + lo_tag + ") .. " +
             (r.upper ? std::to_string(*r.upper) + " (" + up_tag + ")" : "?");
  if (b.davenport_unknown) r.bounds += "; D unknown, D* used as lower bound only";
}

// Runs a cell body, turning ceiling and budget failures into SKIPPED records.
template <class F>
std::vector<VerifyRecord> guarded(const std::string& kind, const GroupSpec& g, Int d, F&& body) {
  auto t0 = Clock::now();
  try {
    auto out = body();
    return out;
  } catch (const SearchCeilingExceeded& e) {
    VerifyRecord r;
    r.kind = kind;
    r.group = g.to_string();
    r.d = d;
    r.reason = std::string("ceiling: ") + e.what();
    r.runtime = since(t0);
    return {r};
  } catch (const BudgetExceeded& e) {
    VerifyRecord r;
    r.kind = kind;
    r.group = g.to_string();
    r.d = d;
    r.reason = std::string("budget: ") + e.what();
    r.runtime = since(t0);
    return {r};
  }
}

}  // namespace

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::match: return "MATCH";
    case VerifyStatus::bounds_only: return "BOUNDS_ONLY";
    case VerifyStatus::mismatch: return "MISMATCH";
    case VerifyStatus::skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

nlohmann::json to_json(const VerifyRecord& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  j["group"] = r.group;
  j["d"] = r.d;
  j["brute"] = r.brute ? nlohmann::json(*r.brute) : nlohmann::json(nullptr);
  if (r.predicted) j["predicted"] = {{"value", r.predicted->value}, {"tag", r.predicted->tag}};
  else j["predicted"] = nullptr;
  j["lower"] = r.lower;
  j["upper"] = r.upper ? nlohmann::json(*r.upper) : nlohmann::json(nullptr);
  j["bounds"] = r.bounds;
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  j["witness"] = r.witness;
  j["nodes"] = r.nodes;
  j["runtime"] = r.runtime;
  return j;
}

std::string csv_header() { return "kind,group,d,lower,brute,upper,predicted,tag,status,reason,nodes,runtime"; }

std::string to_csv(const VerifyRecord& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream os;
  os << r.kind << ',' << quote(r.group) << ',' << r.d << ',' << r.lower << ','
     << (r.brute ? std::to_string(*r.brute) : "") << ',' << (r.upper ? std::to_string(*r.upper) : "") << ','
     << (r.predicted ? std::to_string(r.predicted->value) : "") << ',' << (r.predicted ? r.predicted->tag : "")
     << ',' << to_string(r.status) << ',' << quote(r.reason) << ',' << r.nodes << ',' << r.runtime;
  return os.str();
}

std::vector<GroupSpec> groups_up_to(Int max_order) {
  std::vector<GroupSpec> out;
  if (max_order < 1) return out;
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
  std::sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
    return std::pair(a.order(), a.factors()) < std::pair(b.order(), b.factors());
  });
  return out;
}

VerifyRecord verify_s_dN_cell(InvariantCalculator& calc, const GroupSpec& g, Int d) {
  return guarded("s_dN", g, d, [&] {
    auto t0 = Clock::now();
    VerifyRecord r;
    r.kind = "s_dN";
    r.group = g.to_string();
    r.d = d;

    DavenportOracle oracle = [&](const GroupSpec& h) -> std::optional<Int> {
      if (h.order() > calc.options().max_order) return std::nullopt;
      auto v = calc.davenport(h);
      if (!v.exact) return std::nullopt;
      return v.value.value();
    };
    auto bounds = bounds_s_dN(g, d, oracle);
    describe_bounds(r, bounds);
    auto predictions = all_s_dN_predictions(g, d);
    if (!predictions.empty()) r.predicted = predictions.front();

    auto brute = calc.s_dN(g, d);
    r.nodes = brute.nodes;
    r.witness = brute.witness.to_string();
    if (!brute.exact) {
      r.reason = "budget: search incomplete, s_dN >= " + brute.value.to_string();
      r.runtime = since(t0);
      return std::vector{r};
    }
    r.brute = brute.value.value();

    for (const auto& p : predictions)
      if (p.value != predictions.front().value) {
        r.status = VerifyStatus::mismatch;
        r.reason = "closed forms disagree: " + predictions.front().tag + " vs " + p.tag;
      }
    if (r.status != VerifyStatus::mismatch) {
      if (*r.brute < r.lower || (r.upper && *r.brute > *r.upper)) {
        r.status = VerifyStatus::mismatch;
        r.reason = "outside bounds";
      } else if (r.predicted) {
        r.status = *r.brute == r.predicted->value ? VerifyStatus::match : VerifyStatus::mismatch;
        if (r.status == VerifyStatus::mismatch) r.reason = "prediction differs";
      } else {
        r.status = VerifyStatus::bounds_only;
      }
    }
    r.runtime = since(t0);
    return std::vector{r};
  }).front();
}

VerifyRecord verify_davenport_cell(InvariantCalculator& calc, const GroupSpec& g) {
  return guarded("D", g, 0, [&] {
    auto t0 = Clock::now();
    VerifyRecord r;
    r.kind = "D";
    r.group = g.to_string();
    r.lower = dstar(g);
    r.bounds = std::to_string(r.lower) + " (D*(G)) .. ?";
    auto eq = davenport_equality(g);
    if (eq != DavenportEquality::unknown) r.predicted = Prediction{dstar(g), "D=D*:" + to_string(eq)};
    auto brute = calc.davenport(g);
    r.nodes = brute.nodes;
    r.witness = brute.witness.to_string();
    if (!brute.exact) {
      r.reason = "budget: search incomplete, D >= " + brute.value.to_string();
    } else {
      r.brute = brute.value.value();
      if (*r.brute < r.lower) r.status = VerifyStatus::mismatch, r.reason = "below D*";
      else if (r.predicted) r.status = *r.brute == r.predicted->value ? VerifyStatus::match : VerifyStatus::mismatch;
      else r.status = VerifyStatus::bounds_only;
    }
    r.runtime = since(t0);
    return std::vector{r};
  }).front();
}

std::vector<VerifyRecord> verify_eta_s_cells(InvariantCalculator& calc, const GroupSpec& g) {
  auto prediction = predict_eta_s(g);
  std::vector<VerifyRecord> out;
  std::optional<Int> davenport, eta_value;

  auto one = [&](const std::string& kind) {
    return guarded(kind, g, 0, [&] {
      auto t0 = Clock::now();
      VerifyRecord r;
      r.kind = kind;
      r.group = g.to_string();
      auto brute = kind == "eta" ? calc.eta(g) : calc.egz(g);
      r.nodes = brute.nodes;
      r.witness = brute.witness.to_string();
      // D <= eta <= s
      r.lower = kind == "eta" ? davenport.value_or(1) : eta_value.value_or(1);
      Int bound = 0;
      if (prediction) {
        bound = kind == "eta" ? prediction->eta : prediction->s;
        if (prediction->exact) r.predicted = Prediction{bound, prediction->tag};
        else r.upper = bound;
      }
      r.bounds = std::to_string(r.lower) + (kind == "eta" ? " (D)" : " (eta)") + " .. " +
                 (r.upper ? std::to_string(*r.upper) + " (" + prediction->tag + ")" : "?");
      if (!brute.exact) {
        r.reason = "budget: search incomplete";
      } else {
        r.brute = brute.value.value();
        if (kind == "eta") eta_value = r.brute;
        if (*r.brute < r.lower || (r.upper && *r.brute > *r.upper)) {
          r.status = VerifyStatus::mismatch;
          r.reason = "outside bounds";
        } else if (r.predicted) {
          r.status = *r.brute == r.predicted->value ? VerifyStatus::match : VerifyStatus::mismatch;
        } else {
          r.status = VerifyStatus::bounds_only;
        }
      }
      r.runtime = since(t0);
      return std::vector{r};
    });
  };

  try {
    auto dv = calc.davenport(g);
    if (dv.exact) davenport = dv.value.value();
  } catch (const SearchCeilingExceeded&) {
  }
  for (const char* kind : {"eta", "s"})
    for (auto& r : one(kind)) out.push_back(std::move(r));
  return out;
}

std::vector<VerifyRecord> verify_witness_cells(InvariantCalculator& calc, const GroupSpec& g, Int d) {
  std::vector<VerifyRecord> out;
  {
    auto t0 = Clock::now();
    VerifyRecord r;
    r.kind = "witness-dstar";
    r.group = g.to_string();
    r.d = d;
    auto w = witness_dstar_extended(g, d);
    r.witness = w.to_string();
    r.brute = w.length() + 1;
    r.predicted = Prediction{dstar_extended(g, d).value, "D*(G+C_d)"};
    r.lower = r.predicted->value;
    bool ok = *r.brute == r.predicted->value && certify_dN_free(w, d);
    r.status = ok ? VerifyStatus::match : VerifyStatus::mismatch;
    if (!ok) r.reason = "certification failed";
    r.runtime = since(t0);
    out.push_back(std::move(r));
  }
  for (auto& r : guarded("witness-padding", g, d, [&] {
         auto t0 = Clock::now();
         VerifyRecord r;
         r.kind = "witness-padding";
         r.group = g.to_string();
         r.d = d;
         auto w = witness_davenport_padding(calc, g, d);
         r.witness = w.to_string();
         r.brute = w.length() + 1;
         r.predicted = Prediction{calc.davenport(g).value.value() + d - 1, "D(G)+d-1"};
         r.lower = r.predicted->value;
         bool ok = *r.brute == r.predicted->value && certify_dN_free(w, d) && certify_only_zero_blocks(w);
         r.status = ok ? VerifyStatus::match : VerifyStatus::mismatch;
         if (!ok) r.reason = "certification failed";
         r.runtime = since(t0);
         return std::vector{r};
       }))
    out.push_back(std::move(r));
  return out;
}

std::vector<VerifyRecord> verify_short_cells(InvariantCalculator& calc, const GroupSpec& g, Int d,
                                             const VerifyOptions& options) {
  return guarded("short", g, d, [&] {
    std::vector<VerifyRecord> out;
    const Int dav = calc.davenport(g).require_exact().value.value();
    if (dav > 2 * d - 1) return out;

    const Int sdn = calc.s_dN(g, d).require_exact().value.value();
    const bool theorem_applies = sdn <= 3 * d - 1;
    if (theorem_applies) {
      auto t0 = Clock::now();
      auto rep = check_short_zero_sum_theorem(calc, g, d, options.enumeration);
      VerifyRecord r;
      r.kind = "short";
      r.group = g.to_string();
      r.d = d;
      r.brute = static_cast<Int>(rep.part1_checked + rep.part2_checked);
      r.status = rep.ok() ? VerifyStatus::match : VerifyStatus::mismatch;
      r.reason = rep.sampled ? "sampled" : "exhaustive";
      if (!rep.ok()) r.reason += "; fails on " + rep.first_failure->to_string();
      r.runtime = since(t0);
      out.push_back(std::move(r));
    }

    if (g.order() > 16) return out;
    auto t0 = Clock::now();
    auto rep = check_lemma_equivalence(calc, g, d);
    VerifyRecord r;
    r.kind = "lemma";
    r.group = g.to_string();
    r.d = d;
    r.brute = rep.c_holds ? 1 : 0;
    bool ok = rep.consistent() && (!theorem_applies || rep.c_holds);
    r.status = ok ? VerifyStatus::match : VerifyStatus::mismatch;
    r.reason = std::string(rep.c_holds ? "statements hold" : "statements fail") +
               (rep.consistent() ? "" : "; statements disagree");
    r.runtime = since(t0);
    out.push_back(std::move(r));
    return out;
  });
}

std::vector<VerifyRecord> run_verify(InvariantCalculator& calc, const VerifyOptions& options,
                                     const std::function<void(const VerifyRecord&)>& sink) {
  static const std::vector<std::string> known = {"sdn", "davenport", "eta-s", "witness", "short", "all"};
  for (const auto& t : options.theorems)
    if (std::find(known.begin(), known.end(), t) == known.end()) throw std::invalid_argument("unknown theorem: " + t);
  std::vector<std::function<std::vector<VerifyRecord>()>> cells;
  for (const auto& g : groups_up_to(options.max_order)) {
    if (selected(options, "davenport")) cells.push_back([&calc, g] { return std::vector{verify_davenport_cell(calc, g)}; });
    if (selected(options, "eta-s")) cells.push_back([&calc, g] { return verify_eta_s_cells(calc, g); });
    for (Int d = options.d_min; d <= options.d_max; ++d) {
      if (selected(options, "sdn")) cells.push_back([&calc, g, d] { return std::vector{verify_s_dN_cell(calc, g, d)}; });
      if (selected(options, "witness")) cells.push_back([&calc, g, d] { return verify_witness_cells(calc, g, d); });
      if (selected(options, "short"))
        cells.push_back([&calc, g, d, &options] { return verify_short_cells(calc, g, d, options); });
    }
  }

  std::vector<std::optional<std::vector<VerifyRecord>>> results(cells.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      auto recs = cells[i]();
      std::lock_guard lock(mu);
      results[i] = std::move(recs);
      ready.notify_all();
    }
  };
  std::vector<std::thread> pool;
  if (options.workers > 1)
    for (unsigned w = 0; w < options.workers; ++w) pool.emplace_back(worker);

  std::vector<VerifyRecord> all;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (options.workers <= 1) {
      results[i] = cells[i]();
    } else {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return results[i].has_value(); });
    }
    for (auto& r : *results[i]) {
      if (sink) sink(r);
      all.push_back(std::move(r));
    }
    results[i].reset();
  }
  for (auto& t : pool) t.join();
  return all;
}

int exit_code_for(const std::vector<VerifyRecord>& records) {
  bool budget = false;
  for (const auto& r : records) {
    if (r.status == VerifyStatus::mismatch) return 2;
    budget = budget || r.budget_skip();
  }
  return budget ? 3 : 0;
}

}  // namespace zsum
