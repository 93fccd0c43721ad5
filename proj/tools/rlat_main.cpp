#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlat/enumerate.hpp"
#include "rlat/errors.hpp"
#include "rlat/expr.hpp"
#include "rlat/json_io.hpp"
#include "rlat/laws.hpp"
#include "rlat/rewrite.hpp"

using nlohmann::json;

namespace {

// 0 ok, 1 usage, 2 unreadable input document, 3 law counterexample,
// 4 engine error while evaluating or rewriting
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDocument = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitEngine = 4;

void print_error(const rlat::LatticeError& e) {
  json j{{"error", rlat::errc_name(e.code())}, {"message", e.what()}};
  if (e.loc().valid()) {
    j["line"] = e.loc().line;
    j["column"] = e.loc().column;
  }
  std::cerr << j.dump() << "\n";
}

json relation_json(const rlat::Relation& r) { return json::parse(rlat::relation_to_json(r)); }

json law_json(const rlat::LawReport& rep) {
  json j{{"law", std::string(rlat::law_name(rep.law))},
         {"arity", rlat::law_arity(rep.law)},
         {"guarded", rlat::law_guarded(rep.law)},
         {"verdict", std::string(rlat::verdict_name(rep.verdict))},
         {"checked", rep.checked},
         {"exhaustive", rep.exhaustive}};
  if (!rep.witness.empty()) {
    json w = json::array();
    for (const auto& r : rep.witness) w.push_back(relation_json(r));
    j["witness"] = w;
  }
  if (rep.lhs) j["lhs"] = relation_json(*rep.lhs);
  if (rep.rhs) j["rhs"] = relation_json(*rep.rhs);
  return j;
}

json trace_json(const rlat::TraceStep& s) {
  json j{{"rule", s.rule},
         {"pos", rlat::position_text(s.pos)},
         {"orientation", std::string(rlat::orientation_name(s.orient))},
         {"before", s.before},
         {"after", s.after}};
  if (!s.macro.empty()) j["macro"] = s.macro;
  return j;
}

json sublattice_json(const rlat::SublatticeReport& rep, const rlat::LatticeGraph& g) {
  json members = json::array();
  for (auto i : rep.members) members.push_back(g.labels[i]);
  return json{{"name", rep.name},
              {"size", rep.members.size()},
              {"members", members},
              {"closed_under_join", rep.closed_under_join},
              {"closed_under_union", rep.closed_under_union},
              {"distributive", rep.distributive},
              {"complemented", rep.complemented},
              {"boolean", rep.boolean()},
              {"bottom", g.labels[rep.bottom]},
              {"top", g.labels[rep.top]}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite relational lattice engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rlat 0.1.0");

  std::string universe_path;
  std::string catalog_path;
  std::string expr_text;
  bool table = false;
  std::string strategy_text = "pushdown";
  std::size_t budget = 1000;
  bool trace = false;
  std::vector<std::string> law_names;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  bool unguarded = false;
  std::string dot_path;
  bool check_sublattices = false;
  std::size_t cap = rlat::kDefaultEnumerationCap;

  auto add_universe = [&](CLI::App* cmd) {
    cmd->add_option("-u,--universe", universe_path, "universe JSON file")->required();
  };
  auto add_catalog = [&](CLI::App* cmd) {
    cmd->add_option("-c,--catalog", catalog_path, "catalog JSON file with named relations");
  };
  auto add_expr = [&](CLI::App* cmd) {
    cmd->add_option("-e,--expr", expr_text, "expression text")->required();
  };

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression to a relation");
  add_universe(eval_cmd);
  add_catalog(eval_cmd);
  add_expr(eval_cmd);
  eval_cmd->add_flag("--table", table, "print the relation as text instead of JSON");

  auto* rewrite_cmd = app.add_subcommand("rewrite", "normalize an expression");
  add_universe(rewrite_cmd);
  add_catalog(rewrite_cmd);
  add_expr(rewrite_cmd);
  rewrite_cmd->add_option("--strategy", strategy_text, "pushdown or exhaustive")
      ->capture_default_str();
  rewrite_cmd->add_option("--budget", budget, "rule application budget")->capture_default_str();
  rewrite_cmd->add_flag("--trace", trace, "emit one JSON line per rewrite step");

  auto* laws_cmd = app.add_subcommand("laws", "check the lattice laws over a universe");
  add_universe(laws_cmd);
  laws_cmd->add_option("--law", law_names, "law name, repeatable (default: all)");
  laws_cmd->add_option("--samples", samples, "instantiations when sampling")
      ->capture_default_str();
  laws_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
  laws_cmd->add_flag("--unguarded", unguarded,
                     "evaluate guarded laws everywhere; counterexamples become informational");

  auto* enum_cmd = app.add_subcommand("enum", "enumerate the relation lattice");
  add_universe(enum_cmd);
  enum_cmd->add_option("--dot", dot_path, "write the Hasse diagram to this DOT file");
  enum_cmd->add_flag("--check-sublattices", check_sublattices,
                     "verify the standard Boolean sublattices");
  enum_cmd->add_option("--cap", cap, "largest lattice size to enumerate")
      ->capture_default_str();
  enum_cmd->add_option("--samples", samples, "instantiations for the law sweep when sampling")
      ->capture_default_str();
  enum_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  rlat::UniversePtr u;
  rlat::Catalog cat;
  try {
    u = rlat::universe_from_json(rlat::read_file(universe_path));
    cat.universe = u;
    if (!catalog_path.empty())
      cat.relations = rlat::catalog_from_json(u, rlat::read_file(catalog_path));
  } catch (const rlat::LatticeError& e) {
    print_error(e);
    return kExitDocument;
  }

  if (*eval_cmd || *rewrite_cmd) {
    rlat::ExprPtr e;
    try {
      e = rlat::parse_expr(expr_text);
    } catch (const rlat::LatticeError& err) {
      print_error(err);
      return kExitDocument;
    }
    try {
      if (*eval_cmd) {
        rlat::Relation r = rlat::evaluate(e, cat);
        std::cout << (table ? r.to_text() : rlat::relation_to_json(r)) << "\n";
        return kExitOk;
      }
      auto strategy = rlat::strategy_from_name(strategy_text);
      if (!strategy) {
        std::cerr << json{{"error", "Usage"},
                          {"message", "unknown strategy '" + strategy_text + "'"}}
                         .dump()
                  << "\n";
        return kExitUsage;
      }
      (void)rlat::infer_header(e, cat);
      auto res = rlat::normalize(e, cat, *strategy, budget);
      if (trace)
        for (const auto& s : res.trace) std::cout << trace_json(s).dump() << "\n";
      std::cout << rlat::format_expr(res.expr) << "\n";
      if (res.budget_exhausted)
        std::cerr << json{{"note", "budget exhausted"}, {"applications", res.applications}}.dump()
                  << "\n";
      return kExitOk;
    } catch (const rlat::LatticeError& err) {
      print_error(err);
      return kExitEngine;
    }
  }

  if (*laws_cmd) {
    std::vector<rlat::LawId> ids;
    if (law_names.empty()) {
      ids.assign(rlat::kAllLaws.begin(), rlat::kAllLaws.end());
    } else {
      for (const auto& name : law_names) {
        auto id = rlat::law_from_name(name);
        if (!id) {
          std::cerr << json{{"error", "Usage"}, {"message", "unknown law '" + name + "'"}}.dump()
                    << "\n";
          return kExitUsage;
        }
        ids.push_back(*id);
      }
    }
    rlat::CheckOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.enforce_guard = !unguarded;
    int exit_code = kExitOk;
    try {
      for (rlat::LawId id : ids) {
        auto rep = rlat::quantified_check(id, u, opts);
        std::cout << law_json(rep).dump() << "\n";
        // with the guard off, counterexamples to distribution are expected
        if (rep.verdict == rlat::Verdict::counterexample && !unguarded)
          exit_code = kExitCounterexample;
      }
    } catch (const rlat::LatticeError& err) {
      print_error(err);
      return kExitEngine;
    }
    return exit_code;
  }

  try {
    auto g = rlat::enumerate_lattice(u, cap);
    if (!dot_path.empty()) rlat::write_file(dot_path, rlat::export_dot(g));

    json out{{"elements", g.elements.size()}, {"covers", g.covers.size()}};
    rlat::CheckOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    bool promised_failed = false;
    json laws = json::array();
    for (rlat::LawId id : rlat::kAllLaws) {
      auto rep = rlat::quantified_check(id, u, opts);
      laws.push_back(law_json(rep));
      promised_failed = promised_failed || rep.verdict == rlat::Verdict::counterexample;
    }
    out["laws"] = laws;
    if (auto nd = rlat::find_nondistributive_triple(g)) {
      out["nondistributive"] = json{{"a", g.labels[(*nd)[0]]},
                                    {"b", g.labels[(*nd)[1]]},
                                    {"c", g.labels[(*nd)[2]]}};
    } else {
      out["nondistributive"] = nullptr;
    }
    if (check_sublattices) {
      json subs = json::array();
      for (const auto& rep : rlat::standard_sublattices(g)) subs.push_back(sublattice_json(rep, g));
      out["sublattices"] = subs;
    }
    std::cout << out.dump() << "\n";
    return promised_failed ? kExitCounterexample : kExitOk;
  } catch (const rlat::LatticeError& err) {
    print_error(err);
    return kExitEngine;
  }
}
