// Python bindings for the relational lattice engine.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rlat/core.hpp"
#include "rlat/derived.hpp"
#include "rlat/enumerate.hpp"
#include "rlat/errors.hpp"
#include "rlat/expr.hpp"
#include "rlat/json_io.hpp"
#include "rlat/laws.hpp"
#include "rlat/rewrite.hpp"

namespace py = pybind11;

namespace {

using rlat::Catalog;
using rlat::Relation;
using rlat::Universe;
using rlat::UniversePtr;

rlat::AttrSet names_to_attrs(const Universe& u, const std::vector<std::string>& names) {
  rlat::AttrSet s;
  for (const auto& n : names) s.set(u.require(n));
  return s;
}

Catalog build_catalog(const std::shared_ptr<Universe>& u, const py::dict& relations) {
  Catalog c;
  c.universe = u;
  for (auto item : relations) {
    auto name = item.first.cast<std::string>();
    auto rel = item.second.cast<Relation>();
    c.relations.emplace(std::move(name), std::move(rel));
  }
  return c;
}

std::vector<std::vector<std::string>> relation_tuples(const Relation& r) {
  std::vector<std::size_t> ids;
  for (const auto& n : r.header_names()) ids.push_back(r.universe()->require(n));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(r.size());
  for (const auto& t : r.body()) {
    std::vector<std::string> row;
    row.reserve(ids.size());
    for (auto id : ids) row.push_back(r.value_of(t, id));
    rows.push_back(std::move(row));
  }
  return rows;
}

rlat::Predicate parse_predicate(const Universe& u, const std::string& text) {
  auto e = rlat::parse_expr("[" + text + "]");
  if (e->kind != rlat::ExprKind::pred_literal)
    throw rlat::LatticeError(rlat::Errc::syntax_error, "expected a predicate, got '" + text + "'");
  return rlat::resolve_predicate(e->pred, u);
}

py::dict trace_step_dict(const rlat::TraceStep& s) {
  py::dict d;
  d["rule"] = s.rule;
  if (!s.macro.empty()) d["macro"] = s.macro;
  d["pos"] = rlat::position_text(s.pos);
  d["orientation"] = std::string(rlat::orientation_name(s.orient));
  d["before"] = s.before;
  d["after"] = s.after;
  return d;
}

py::dict law_report_dict(const rlat::LawReport& rep) {
  py::dict d;
  d["law"] = std::string(rlat::law_name(rep.law));
  d["arity"] = rlat::law_arity(rep.law);
  d["guarded"] = rlat::law_guarded(rep.law);
  d["verdict"] = std::string(rlat::verdict_name(rep.verdict));
  d["checked"] = rep.checked;
  d["exhaustive"] = rep.exhaustive;
  if (!rep.witness.empty()) {
    py::list ws;
    for (const auto& w : rep.witness) ws.append(w);
    d["witness"] = ws;
    d["lhs"] = rep.lhs;
    d["rhs"] = rep.rhs;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_rlat, m) {
  m.doc() = "finite relational lattice engine";
  m.attr("__version__") = "0.1.0";

  py::register_exception<rlat::LatticeError>(m, "Error");

  py::class_<Universe, std::shared_ptr<Universe>>(m, "Universe")
      .def(py::init<std::vector<Universe::AttrDecl>>(), py::arg("attributes"))
      .def("size", &Universe::size)
      .def("attribute_names",
           [](const Universe& u) {
             std::vector<std::string> names;
             names.reserve(u.size());
             for (std::size_t i = 0; i < u.size(); ++i) names.push_back(u.name(i));
             return names;
           })
      .def("domain",
           [](const Universe& u, const std::string& name) { return u.domain(u.require(name)); },
           py::arg("name"))
      .def("to_json",
           [](const Universe& u) { return rlat::universe_to_json(u); })
      .def_static("from_json",
                  [](const std::string& text) { return rlat::universe_from_json(text); },
                  py::arg("text"))
      .def("__eq__",
           [](const Universe& a, const Universe& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const Universe& u) {
        std::string s = "Universe(";
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (i) s += " ";
          s += u.name(i);
        }
        return s + ")";
      });

  py::class_<Relation>(m, "Relation")
      .def("header", [](const Relation& r) { return r.header_names(); })
      .def("tuples", &relation_tuples)
      .def("to_json", [](const Relation& r) { return rlat::relation_to_json(r); })
      .def("__len__", &Relation::size)
      .def("__eq__",
           [](const Relation& a, const Relation& b) { return a == b; },
           py::is_operator())
      .def("__ne__",
           [](const Relation& a, const Relation& b) { return a != b; },
           py::is_operator())
      .def("__repr__", [](const Relation& r) { return r.to_text(); });

  m.def("relation",
        [](const std::shared_ptr<Universe>& u, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
          return rlat::make_relation(u, header, rows);
        },
        py::arg("universe"), py::arg("header"), py::arg("rows"),
        "Build a relation from a header and rows of domain values.");
  m.def("special",
        [](const std::shared_ptr<Universe>& u, const std::string& name) {
          auto code = rlat::special_from_name(name);
          if (!code)
            throw rlat::LatticeError(rlat::Errc::syntax_error,
                                     "unknown special element '" + name + "'");
          return rlat::special_element(u, *code);
        },
        py::arg("universe"), py::arg("name"),
        "One of the four distinguished elements: 00, 01, 10, 11.");
  m.def("empty",
        [](const std::shared_ptr<Universe>& u, const std::vector<std::string>& header) {
          return rlat::empty_relation(u, names_to_attrs(*u, header));
        },
        py::arg("universe"), py::arg("header"));
  m.def("full",
        [](const std::shared_ptr<Universe>& u, const std::vector<std::string>& header) {
          return rlat::full_relation(u, names_to_attrs(*u, header));
        },
        py::arg("universe"), py::arg("header"));

  m.def("join", &rlat::natural_join, py::arg("a"), py::arg("b"),
        "Natural join; header is the union of the operand headers.");
  m.def("union", &rlat::inner_union, py::arg("a"), py::arg("b"),
        "Inner union; header is the intersection of the operand headers.");
  m.def("leq", &rlat::leq, py::arg("a"), py::arg("b"),
        "Lattice order: a <= b iff join(a, b) == b.");
  m.def("decompose", &rlat::decompose, py::arg("a"),
        "Split into (header part, content part); join(a, 00) and join(a, 11).");

  m.def("select",
        [](const Relation& a, const std::string& predicate) {
          return rlat::select(a, parse_predicate(*a.universe(), predicate));
        },
        py::arg("a"), py::arg("predicate"));
  m.def("project",
        [](const Relation& a, const std::vector<std::string>& attrs) {
          return rlat::project(a, attrs);
        },
        py::arg("a"), py::arg("attrs"));
  m.def("rename",
        [](const Relation& a, const std::string& from, const std::string& to) {
          return rlat::rename(a, rlat::RenameSpec{from, to});
        },
        py::arg("a"), py::arg("from_attr"), py::arg("to_attr"));
  m.def("difference", &rlat::difference, py::arg("a"), py::arg("b"));
  m.def("divide", &rlat::divide, py::arg("a"), py::arg("b"));

  m.def("evaluate",
        [](const std::string& expr, const std::shared_ptr<Universe>& u,
           const py::dict& relations) {
          auto c = build_catalog(u, relations);
          return rlat::evaluate(rlat::parse_expr(expr), c);
        },
        py::arg("expr"), py::arg("universe"), py::arg("relations"),
        "Evaluate an expression against named relations.");
  m.def("infer_header",
        [](const std::string& expr, const std::shared_ptr<Universe>& u,
           const py::dict& relations) {
          auto c = build_catalog(u, relations);
          auto h = rlat::infer_header(rlat::parse_expr(expr), c);
          std::vector<std::string> names;
          for (auto i : u->name_sorted(h)) names.push_back(u->name(i));
          return names;
        },
        py::arg("expr"), py::arg("universe"), py::arg("relations"),
        "Header of an expression, computed without evaluating it.");
  m.def("desugar",
        [](const std::string& expr, const std::shared_ptr<Universe>& u,
           const py::dict& relations) {
          auto c = build_catalog(u, relations);
          return rlat::format_expr(rlat::desugar(rlat::parse_expr(expr), c));
        },
        py::arg("expr"), py::arg("universe"), py::arg("relations"),
        "Rewrite derived operators into joins and unions.");

  m.def("rewrite",
        [](const std::string& expr, const std::shared_ptr<Universe>& u,
           const py::dict& relations, const std::string& strategy, std::size_t budget) {
          auto st = rlat::strategy_from_name(strategy);
          if (!st)
            throw rlat::LatticeError(rlat::Errc::syntax_error,
                                     "unknown strategy '" + strategy + "'");
          auto c = build_catalog(u, relations);
          auto e = rlat::parse_expr(expr);
          (void)rlat::infer_header(e, c);
          auto res = rlat::normalize(e, c, *st, budget);
          py::dict d;
          d["expr"] = rlat::format_expr(res.expr);
          d["applications"] = res.applications;
          d["budget_exhausted"] = res.budget_exhausted;
          py::list trace;
          for (const auto& s : res.trace) trace.append(trace_step_dict(s));
          d["trace"] = trace;
          return d;
        },
        py::arg("expr"), py::arg("universe"), py::arg("relations"),
        py::arg("strategy") = "pushdown", py::arg("budget") = std::size_t{1000},
        "Normalize an expression; returns the result, a step trace, and budget state.");
  m.def("equivalent",
        [](const std::string& lhs, const std::string& rhs, const std::shared_ptr<Universe>& u,
           const py::dict& relations, std::size_t trials, std::uint64_t seed) {
          auto c = build_catalog(u, relations);
          auto res = rlat::equivalent(rlat::parse_expr(lhs), rlat::parse_expr(rhs), c, trials,
                                      seed);
          py::dict d;
          d["equivalent"] = res.equivalent;
          d["trials"] = res.trials;
          if (!res.equivalent && res.counterexample) {
            py::dict cex;
            for (const auto& [name, rel] : res.counterexample->relations)
              cex[py::str(name)] = rel;
            d["counterexample"] = cex;
            d["lhs"] = res.lhs;
            d["rhs"] = res.rhs;
          }
          return d;
        },
        py::arg("lhs"), py::arg("rhs"), py::arg("universe"), py::arg("relations"),
        py::arg("trials") = std::size_t{100}, py::arg("seed") = std::uint64_t{0},
        "Randomized equivalence check over instances of the given relations.");
  m.def("rule_names", [] {
    std::vector<std::string> names;
    for (const auto& r : rlat::builtin_rules()) names.push_back(r.id());
    return names;
  });

  m.def("check_law",
        [](const std::string& law, const std::shared_ptr<Universe>& u, std::size_t samples,
           std::uint64_t seed, bool unguarded) {
          auto id = rlat::law_from_name(law);
          if (!id)
            throw rlat::LatticeError(rlat::Errc::syntax_error, "unknown law '" + law + "'");
          rlat::CheckOptions opts;
          opts.samples = samples;
          opts.seed = seed;
          opts.enforce_guard = !unguarded;
          return law_report_dict(rlat::quantified_check(*id, u, opts));
        },
        py::arg("law"), py::arg("universe"), py::arg("samples") = std::size_t{1000},
        py::arg("seed") = std::uint64_t{0}, py::arg("unguarded") = false,
        "Check one algebraic law over the universe; exhaustive when small enough.");
  m.def("law_names", [] {
    std::vector<std::string> names;
    for (auto id : rlat::kAllLaws) names.push_back(std::string(rlat::law_name(id)));
    return names;
  });

  m.def("lattice_size",
        [](const std::shared_ptr<Universe>& u, std::size_t cap) {
          return rlat::lattice_size(*u, cap);
        },
        py::arg("universe"), py::arg("cap") = rlat::kDefaultEnumerationCap);
  m.def("enumerate_lattice",
        [](const std::shared_ptr<Universe>& u, std::size_t cap) {
          auto g = rlat::enumerate_lattice(u, cap);
          py::dict d;
          d["labels"] = g.labels;
          py::list covers;
          for (const auto& [lo, hi] : g.covers)
            covers.append(py::make_tuple(g.labels[lo], g.labels[hi]));
          d["covers"] = covers;
          return d;
        },
        py::arg("universe"), py::arg("cap") = rlat::kDefaultEnumerationCap,
        "All relations over the universe with the lattice cover edges.");
  m.def("export_dot",
        [](const std::shared_ptr<Universe>& u, std::size_t cap) {
          return rlat::export_dot(rlat::enumerate_lattice(u, cap));
        },
        py::arg("universe"), py::arg("cap") = rlat::kDefaultEnumerationCap);

  m.def("relation_from_json",
        [](const std::shared_ptr<Universe>& u, const std::string& text) {
          return rlat::relation_from_json(u, text);
        },
        py::arg("universe"), py::arg("text"));
  m.def("catalog_from_json",
        [](const std::shared_ptr<Universe>& u, const std::string& text) {
          py::dict d;
          for (const auto& [name, rel] : rlat::catalog_from_json(u, text))
            d[py::str(name)] = rel;
          return d;
        },
        py::arg("universe"), py::arg("text"));
}
