// zsum: zero-sum invariants s_L(G) of finite abelian groups.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>

#include "zsum/finder.hpp"
#include "zsum/formulas.hpp"
#include "zsum/invariants.hpp"
#include "zsum/verify.hpp"
#include "zsum/witnesses.hpp"

using namespace zsum;

namespace {

struct Common {
  std::string group = "1";
  Int max_order = 36;
  unsigned workers = 1;
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;
  std::string cache_dir;
  bool use_caps = false;
  std::string out = "text";
};

void add_common(CLI::App* cmd, Common& c, bool with_group = true) {
  if (with_group) cmd->add_option("--group", c.group, "invariant factors or any cyclic orders, e.g. 2,6")->required();
  cmd->add_option("--max-order", c.max_order, "search ceiling on |G|");
  cmd->add_option("--workers", c.workers, "worker threads");
  cmd->add_option("--max-nodes", c.max_nodes, "node budget per search, 0 = none");
  cmd->add_option("--max-seconds", c.max_seconds, "time budget per search, 0 = none");
  cmd->add_option("--cache-dir", c.cache_dir, "results store directory (default $ZSUM_CACHE_DIR)");
  cmd->add_flag("--use-caps", c.use_caps, "stop s_dN searches at a known D(G+C_d)");
  cmd->add_option("--out", c.out, "text, jsonl or csv");
}

InvariantCalculator make_calculator(const Common& c, bool parallel_cells = false) {
  CalculatorOptions o;
  o.max_order = c.max_order;
  o.limits.max_nodes = c.max_nodes;
  o.limits.max_seconds = c.max_seconds;
  // The verify sweep spends workers on grid cells instead.
  o.limits.workers = parallel_cells ? 1 : std::max(1u, c.workers);
  o.use_known_caps = c.use_caps;
  std::string dir = c.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("ZSUM_CACHE_DIR"); env && *env) dir = env;
  if (!dir.empty()) o.store = std::make_shared<ResultsStore>(dir);
  return InvariantCalculator(o);
}

std::string join(const std::vector<Int>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void print_result(const InvariantResult& r, const std::string& out) {
  if (out == "jsonl") {
    std::cout << to_json(r).dump() << '\n';
    return;
  }
  std::cout << to_string(r.name) << "(" << r.group.to_string() << (r.d ? ", d=" + std::to_string(*r.d) : "")
            << ") L=" << r.lengths.to_string() << " = " << r.value.to_string()
            << (r.exact ? "" : "  (lower bound, budget exhausted)") << '\n';
  if (!r.value.is_infinite())
    std::cout << "witness: " << r.witness.to_string() << "  # length " << r.witness.length() << ", L-free\n"
              << "nodes: " << r.nodes << (r.capped ? " (capped)" : "") << (r.cached ? " (cached)" : "")
              << "  time: " << r.seconds << "s\n";
}

void print_bounds(const BoundsReport& b) {
  std::cout << "lower:";
  for (const auto& x : b.lower) std::cout << ' ' << x.value << " [" << x.source << "]";
  std::cout << "\nupper:";
  for (const auto& x : b.upper) std::cout << ' ' << x.value << " [" << x.source << "]";
  if (b.upper.empty()) std::cout << " none";
  std::cout << '\n';
  if (b.davenport_unknown) std::cout << "note: D(G) unknown, D*(G) used as lower bound only\n";
  if (b.extended_davenport_unknown) std::cout << "note: D(G+C_d) unknown, no upper bound from it\n";
  std::cout << "predicted: " << (b.predicted ? std::to_string(b.predicted->value) + " [" + b.predicted->tag + "]" : "none")
            << (b.pinched() ? "  (pinched)" : "") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-sum invariants of finite abelian groups"};
  app.require_subcommand(1);
  Common c;
  Int d = 1;
  std::string which = "D", lengths_text, kind = "dstar", seq_text, mode = "proof", theorems;
  Int d_min = 1, d_max = 6;
  bool short_search = false;

  auto* inv = app.add_subcommand("invariant", "compute D, s, eta, ZS, s_dN or s_L by exhaustive search");
  add_common(inv, c);
  inv->add_option("--which", which, "D | s | eta | ZS | s_dN | s_L");
  inv->add_option("--d", d, "d for s_dN");
  inv->add_option("--L", lengths_text, "length set for s_L: N, 4N, 3, [1,3], {2,4}");

  auto* formula = app.add_subcommand("formula", "D*(G+C_d), its chain, closed forms and hypothesis flags");
  add_common(formula, c);
  formula->add_option("--d", d, "d");

  auto* bounds = app.add_subcommand("bounds", "bounds on s_dN(G)");
  add_common(bounds, c);
  bounds->add_option("--d", d, "d");

  auto* witness = app.add_subcommand("witness", "constructed extremal sequences with certification");
  add_common(witness, c);
  witness->add_option("--d", d, "d");
  witness->add_option("--kind", kind, "dstar | padding | disjoint");

  auto* find = app.add_subcommand("find", "extract a zero-sum subsequence with length in L");
  add_common(find, c);
  find->add_option("--seq", seq_text, "sequence, e.g. \"1^4 2\"")->required();
  find->add_option("--L", lengths_text, "length set");
  find->add_flag("--short", short_search, "length in [1,d] for a zero-sum A via the padding procedure");
  find->add_option("--d", d, "d for --short");
  find->add_option("--mode", mode, "proof | direct (with --short)");

  auto* atoms = app.add_subcommand("atoms", "list all minimal zero-sum sequences");
  add_common(atoms, c);

  auto* verify = app.add_subcommand("verify", "sweep groups and d, comparing searches with closed forms");
  add_common(verify, c, false);
  verify->add_option("--d-min", d_min, "smallest d");
  verify->add_option("--d-max", d_max, "largest d");
  verify->footer("Each search defaults to a 20 second budget; cells that exhaust it are SKIPPED and the exit code is 3.");
  verify->add_option("--theorem", theorems, "comma list of sdn,davenport,eta-s,witness,short (default all)");
  c.max_order = 36;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*inv) {
      auto calc = make_calculator(c);
      auto g = parse_group(c.group);
      InvariantResult r;
      if (which == "D") r = calc.davenport(g);
      else if (which == "s") r = calc.egz(g);
      else if (which == "eta") r = calc.eta(g);
      else if (which == "ZS") r = calc.zs(g);
      else if (which == "s_dN") r = calc.s_dN(g, d);
      else if (which == "s_L") {
        if (lengths_text.empty()) throw std::invalid_argument("--L is required for s_L");
        r = calc.s_L(g, LengthSet::parse(lengths_text));
      } else throw std::invalid_argument("unknown invariant " + which);
      print_result(r, c.out);
      return r.exact ? 0 : 3;
    }

    if (*formula) {
      auto g = parse_group(c.group);
      auto ext = dstar_extended(g, d);
      std::cout << "G = " << g.to_string() << ", d = " << d << '\n'
                << "D*(G) = " << dstar(g) << '\n'
                << "D*(G+C_d) = " << ext.value << "  m = (" << join(ext.m) << ")\n"
                << "  via gcd(n_{i+1}, lcm(n_i,d)): (" << join(dstar_chain_via_gcd_of_lcm(g, d)) << ")\n"
                << "  via lcm(n_i, gcd(n_{i+1},d)): (" << join(dstar_chain_via_lcm_of_gcd(g, d)) << ")\n"
                << "D(G) = D*(G): " << to_string(davenport_equality(g)) << '\n';
      for (const auto& p : all_s_dN_predictions(g, d)) std::cout << "s_dN = " << p.value << " [" << p.tag << "]\n";
      if (auto e = predict_eta_s(g))
        std::cout << (e->exact ? "eta = " : "eta <= ") << e->eta << ", " << (e->exact ? "s = " : "s <= ") << e->s
                  << " [" << e->tag << (e->q ? ", q=" + std::to_string(*e->q) : "") << "]\n";
      auto f = hypothesis_flags(g, d);
      std::cout << "D(G_p) <= 2exp(G_p)-1 for all p: " << (f.p_components_bounded ? "yes" : "no") << '\n'
                << "exp(G) odd: " << (f.exponent_odd ? "yes" : "no") << '\n'
                << "short zero-sum hypotheses (D<=2d-1, s_dN<=3d-1): "
                << (f.short_zero_sum_applicable ? (*f.short_zero_sum_applicable ? "yes" : "no") : "unknown") << '\n';
      if (!f.corollary_power_indices.empty())
        std::cout << "i with (D*+i)/2 a power of p: " << join(f.corollary_power_indices) << '\n';
      return 0;
    }

    if (*bounds) {
      auto g = parse_group(c.group);
      auto calc = make_calculator(c);
      DavenportOracle oracle = [&](const GroupSpec& h) -> std::optional<Int> {
        if (h.order() > c.max_order) return std::nullopt;
        auto r = calc.davenport(h);
        return r.exact ? std::optional<Int>(r.value.value()) : std::nullopt;
      };
      print_bounds(bounds_s_dN(g, d, oracle));
      return 0;
    }

    if (*witness) {
      auto g = parse_group(c.group);
      if (kind == "dstar") {
        auto w = witness_dstar_extended(g, d);
        bool ok = certify_dN_free(w, d);
        std::cout << w.to_string() << "  # length " << w.length() << ", no zero-sum of length in " << d
                  << "N: " << (ok ? "certified" : "FAILED") << '\n';
        return ok ? 0 : 2;
      }
      if (kind == "padding") {
        auto calc = make_calculator(c);
        auto w = witness_davenport_padding(calc, g, d);
        bool ok = certify_dN_free(w, d) && certify_only_zero_blocks(w);
        std::cout << w.to_string() << "  # length " << w.length() << ", only zero-sum subsequences are 0^k: "
                  << (ok ? "certified" : "FAILED") << '\n';
        return ok ? 0 : 2;
      }
      if (kind == "disjoint") {
        auto w = witness_remark_disjoint(g);
        bool ok = certify_disjoint_atoms(w);
        std::cout << "group " << w.group.to_string() << '\n'
                  << w.u.to_string() << "  # U, minimal zero-sum\n"
                  << w.v.to_string() << "  # V, minimal zero-sum\n"
                  << "zero-sum subsequences of UV: " << count_zero_sum_subsequences(concat(w.u, w.v)) << "  # "
                  << (ok ? "certified" : "FAILED") << '\n';
        return ok ? 0 : 2;
      }
      throw std::invalid_argument("unknown witness kind " + kind);
    }

    if (*find) {
      auto g = parse_group(c.group);
      auto s = Sequence::parse(g, seq_text);
      std::optional<Certificate> cert;
      if (short_search) {
        auto calc = make_calculator(c);
        ShortZeroSumParams p{calc.davenport(g).require_exact().value.value(),
                             calc.s_dN(g, d).require_exact().value.value()};
        cert = find_short_zero_sum(s, d, p, mode == "direct" ? ShortZeroSumMode::direct : ShortZeroSumMode::proof);
      } else {
        cert = find_zero_sum(s, lengths_text.empty() ? LengthSet::all_n() : LengthSet::parse(lengths_text));
      }
      if (!cert) {
        std::cout << "none\n";
        return 0;
      }
      std::cout << cert->subsequence.to_string() << '\n'
                << "verified: divides input, sum " << cert->sum.to_string() << ", length " << cert->length << " in "
                << cert->lengths.to_string() << ": " << (verify_certificate(*cert, s) ? "yes" : "NO") << '\n';
      return 0;
    }

    if (*atoms) {
      auto g = parse_group(c.group);
      auto list = enumerate_atoms(g, std::min<Int>(c.max_order, 36));
      for (const auto& a : list) std::cout << a.to_string() << '\n';
      std::cout << "count: " << list.size() << '\n';
      return 0;
    }

    if (*verify) {
      if (verify->count("--max-seconds") == 0) c.max_seconds = 20;
      auto calc = make_calculator(c, true);
      VerifyOptions o;
      o.max_order = c.max_order;
      o.d_min = d_min;
      o.d_max = d_max;
      o.workers = std::max(1u, c.workers);
      std::stringstream ts(theorems);
      for (std::string t; std::getline(ts, t, ',');)
        if (!t.empty()) o.theorems.push_back(t);
      if (c.out == "csv") std::cout << csv_header() << '\n';
      auto records = run_verify(calc, o, [&](const VerifyRecord& r) {
        if (c.out == "csv") std::cout << to_csv(r) << std::endl;
        else if (c.out == "jsonl") std::cout << to_json(r).dump() << std::endl;
        else
          std::cout << to_string(r.status) << ' ' << r.kind << " G=" << r.group << " d=" << r.d
                    << " brute=" << (r.brute ? std::to_string(*r.brute) : "-")
                    << " predicted=" << (r.predicted ? std::to_string(r.predicted->value) + "[" + r.predicted->tag + "]" : "-")
                    << (r.reason.empty() ? "" : " (" + r.reason + ")") << std::endl;
      });
      std::size_t counts[4] = {};
      for (const auto& r : records) ++counts[static_cast<int>(r.status)];
      std::cerr << "MATCH " << counts[0] << ", BOUNDS_ONLY " << counts[1] << ", MISMATCH " << counts[2]
                << ", SKIPPED " << counts[3] << '\n';
      return exit_code_for(records);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
