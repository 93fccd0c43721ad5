#include "rlat/laws.hpp"

#include <algorithm>

#include "rlat/enumerate.hpp"
#include "rlat/random.hpp"

namespace rlat {

std::string_view law_name(LawId id) {
  switch (id) {
    case LawId::join_idempotent: return "JOIN_IDEMPOTENT";
    case LawId::union_idempotent: return "UNION_IDEMPOTENT";
    case LawId::join_commutative: return "JOIN_COMMUTATIVE";
    case LawId::union_commutative: return "UNION_COMMUTATIVE";
    case LawId::join_associative: return "JOIN_ASSOCIATIVE";
    case LawId::union_associative: return "UNION_ASSOCIATIVE";
    case LawId::absorb_join_over_union: return "ABSORB_JOIN_OVER_UNION";
    case LawId::absorb_union_over_join: return "ABSORB_UNION_OVER_JOIN";
    case LawId::decomposition: return "DECOMPOSITION";
    case LawId::distrib_join_over_union: return "DISTRIB_JOIN_OVER_UNION";
    case LawId::distrib_union_over_join: return "DISTRIB_UNION_OVER_JOIN";
  }
  return "";
}

std::optional<LawId> law_from_name(std::string_view name) {
  for (LawId id : kAllLaws) {
    if (law_name(id) == name) return id;
  }
  return std::nullopt;
}

std::size_t law_arity(LawId id) {
  switch (id) {
    case LawId::join_idempotent:
    case LawId::union_idempotent:
    case LawId::decomposition:
      return 1;
    case LawId::join_commutative:
    case LawId::union_commutative:
    case LawId::absorb_join_over_union:
    case LawId::absorb_union_over_join:
      return 2;
    default:
      return 3;
  }
}

bool law_guarded(LawId id) {
  return id == LawId::distrib_join_over_union || id == LawId::distrib_union_over_join;
}

bool join_over_union_applicable(AttrSet ha, AttrSet hb, AttrSet hc) {
  return (ha & hb).subset_of(hc) && (ha & hc).subset_of(hb);
}

bool union_over_join_applicable(AttrSet ha, AttrSet hb, AttrSet hc) {
  return (ha & hb).subset_of(hc) && (ha & hc).subset_of(hb) && (hb & hc).subset_of(ha) &&
         ha.subset_of(hb | hc);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "HOLDS";
    case Verdict::guard_failed: return "GUARD_FAILED";
    case Verdict::counterexample: return "COUNTEREXAMPLE";
  }
  return "";
}

namespace {

struct Sides {
  Relation lhs;
  Relation rhs;
};

Sides evaluate_law(LawId id, const std::vector<Relation>& r) {
  switch (id) {
    case LawId::join_idempotent:
      return {natural_join(r[0], r[0]), r[0]};
    case LawId::union_idempotent:
      return {inner_union(r[0], r[0]), r[0]};
    case LawId::join_commutative:
      return {natural_join(r[0], r[1]), natural_join(r[1], r[0])};
    case LawId::union_commutative:
      return {inner_union(r[0], r[1]), inner_union(r[1], r[0])};
    case LawId::join_associative:
      return {natural_join(r[0], natural_join(r[1], r[2])),
              natural_join(natural_join(r[0], r[1]), r[2])};
    case LawId::union_associative:
      return {inner_union(r[0], inner_union(r[1], r[2])),
              inner_union(inner_union(r[0], r[1]), r[2])};
    case LawId::absorb_join_over_union:
      return {natural_join(r[0], inner_union(r[0], r[1])), r[0]};
    case LawId::absorb_union_over_join:
      return {inner_union(r[0], natural_join(r[0], r[1])), r[0]};
    case LawId::decomposition: {
      auto [header_part, content_part] = decompose(r[0]);
      return {inner_union(header_part, content_part), r[0]};
    }
    case LawId::distrib_join_over_union:
      return {natural_join(r[0], inner_union(r[1], r[2])),
              inner_union(natural_join(r[0], r[1]), natural_join(r[0], r[2]))};
    case LawId::distrib_union_over_join:
      return {inner_union(r[0], natural_join(r[1], r[2])),
              natural_join(inner_union(r[0], r[1]), inner_union(r[0], r[2]))};
  }
  throw LatticeError(Errc::arity_mismatch, "unknown law");
}

bool guard_passes(LawId id, const std::vector<Relation>& r) {
  if (id == LawId::distrib_join_over_union) {
    return join_over_union_applicable(r[0].header(), r[1].header(), r[2].header());
  }
  if (id == LawId::distrib_union_over_join) {
    return union_over_join_applicable(r[0].header(), r[1].header(), r[2].header());
  }
  return true;
}

}  // namespace

LawReport check_law(LawId id, const std::vector<Relation>& args) {
  if (args.size() != law_arity(id)) {
    throw LatticeError(Errc::arity_mismatch,
                       std::string(law_name(id)) + " takes " +
                           std::to_string(law_arity(id)) + " relations, got " +
                           std::to_string(args.size()));
  }
  LawReport rep;
  rep.law = id;
  if (law_guarded(id) && !guard_passes(id, args)) {
    rep.verdict = Verdict::guard_failed;
    rep.witness = args;
    return rep;
  }
  Sides s = evaluate_law(id, args);
  rep.checked = 1;
  if (s.lhs == s.rhs) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::counterexample;
    rep.witness = args;
    rep.lhs = std::move(s.lhs);
    rep.rhs = std::move(s.rhs);
  }
  return rep;
}

LawReport quantified_check(LawId id, const UniversePtr& u, const CheckOptions& opts) {
  std::size_t arity = law_arity(id);
  LawReport rep;
  rep.law = id;
  rep.verdict = Verdict::holds;

  auto consider = [&](const std::vector<Relation>& args) {
    if (law_guarded(id) && opts.enforce_guard && !guard_passes(id, args)) return true;
    Sides s = evaluate_law(id, args);
    ++rep.checked;
    if (s.lhs == s.rhs) return true;
    rep.verdict = Verdict::counterexample;
    rep.witness = args;
    rep.lhs = std::move(s.lhs);
    rep.rhs = std::move(s.rhs);
    return false;
  };

  // Exhaustive sweeps stay feasible only while lattice_size^arity is small;
  // the 26-element two-by-two universe cubes to 17576.
  bool small = true;
  try {
    lattice_size(*u, 64);
  } catch (const LatticeError&) {
    small = false;
  }

  if (small) {
    rep.exhaustive = true;
    std::vector<Relation> elems = all_relations(u, opts.cap);
    std::vector<std::size_t> pick(arity, 0);
    std::vector<Relation> args;
    for (;;) {
      args.clear();
      for (std::size_t i : pick) args.push_back(elems[i]);
      if (!consider(args)) return rep;
      std::size_t d = arity;
      bool done = true;
      while (d > 0) {
        --d;
        if (++pick[d] < elems.size()) {
          done = false;
          break;
        }
        pick[d] = 0;
      }
      if (done) return rep;
    }
  }

  std::mt19937_64 rng(opts.seed);
  for (std::size_t trial = 0; trial < opts.samples; ++trial) {
    std::vector<Relation> args;
    args.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) args.push_back(random_relation(rng, u));
    if (!consider(args)) return rep;
  }
  return rep;
}

std::array<Relation, 3> nondistributive_witness(const UniversePtr& u) {
  return {make_relation(u, {"x", "y"}, {{"1", "a"}}), make_relation(u, {"y"}, {{"b"}}),
          make_relation(u, {"x"}, {{"2"}})};
}

}  // namespace rlat
