#include "rlat/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

#include "rlat/errors.hpp"
#include "rlat/laws.hpp"
#include "rlat/random.hpp"

namespace rlat {
namespace {

bool is_join(const ExprPtr& e) { return e->kind == ExprKind::join; }
bool is_union(const ExprPtr& e) { return e->kind == ExprKind::unite; }

bool is_literal(const ExprPtr& e) {
  return e->kind == ExprKind::special || e->kind == ExprKind::empty_literal ||
         e->kind == ExprKind::pred_literal;
}

// Empty regardless of catalog contents. Predicate literals are excluded even
// when unsatisfiable; CONSTANT_FOLD evaluates those.
bool is_empty_literal(const ExprPtr& e) {
  if (e->kind == ExprKind::empty_literal) return true;
  return e->kind == ExprKind::special &&
         (e->code == SpecialCode::empty_00 || e->code == SpecialCode::top_10);
}

std::optional<AttrSet> try_header(const ExprPtr& e, const Catalog& c) {
  try {
    return infer_header(e, c);
  } catch (const LatticeError&) {
    return std::nullopt;
  }
}

std::optional<AttrSet> pred_attrs(const PredSyntax& p, const Catalog& c) {
  try {
    return resolve_predicate(p, *c.universe).attributes_in(*c.universe);
  } catch (const LatticeError&) {
    return std::nullopt;
  }
}

std::optional<AttrSet> attrs_to_set(const std::vector<std::string>& names, const Universe& u) {
  AttrSet s;
  for (const auto& n : names) {
    auto i = u.find(n);
    if (!i) return std::nullopt;
    s.set(*i);
  }
  return s;
}

std::vector<std::string> attr_names(const Universe& u, AttrSet s) {
  std::vector<std::string> out;
  for (std::size_t i : u.name_order())
    if (s.test(i)) out.push_back(u.name(i));
  return out;
}

using Match = std::optional<ExprPtr>;

Match no_match() { return std::nullopt; }

// A * A -> A
Match join_idem_fwd(const ExprPtr& e, const Catalog&) {
  if (!is_join(e) || !equal_exprs(e->left, e->right)) return no_match();
  return e->left;
}
Match join_idem_bwd(const ExprPtr& e, const Catalog&) { return make_join(e, e); }

Match union_idem_fwd(const ExprPtr& e, const Catalog&) {
  if (!is_union(e) || !equal_exprs(e->left, e->right)) return no_match();
  return e->left;
}
Match union_idem_bwd(const ExprPtr& e, const Catalog&) { return make_union(e, e); }

Match join_comm(const ExprPtr& e, const Catalog&) {
  if (!is_join(e)) return no_match();
  return make_join(e->right, e->left);
}
Match union_comm(const ExprPtr& e, const Catalog&) {
  if (!is_union(e)) return no_match();
  return make_union(e->right, e->left);
}

// A * (B * C) -> (A * B) * C
Match join_assoc_fwd(const ExprPtr& e, const Catalog&) {
  if (!is_join(e) || !is_join(e->right)) return no_match();
  return make_join(make_join(e->left, e->right->left), e->right->right);
}
Match join_assoc_bwd(const ExprPtr& e, const Catalog&) {
  if (!is_join(e) || !is_join(e->left)) return no_match();
  return make_join(e->left->left, make_join(e->left->right, e->right));
}

Match union_assoc_fwd(const ExprPtr& e, const Catalog&) {
  if (!is_union(e) || !is_union(e->right)) return no_match();
  return make_union(make_union(e->left, e->right->left), e->right->right);
}
Match union_assoc_bwd(const ExprPtr& e, const Catalog&) {
  if (!is_union(e) || !is_union(e->left)) return no_match();
  return make_union(e->left->left, make_union(e->left->right, e->right));
}

// A * (A + B) -> A
Match absorb_join(const ExprPtr& e, const Catalog&) {
  if (!is_join(e) || !is_union(e->right) || !equal_exprs(e->left, e->right->left))
    return no_match();
  return e->left;
}
// A + A * B -> A
Match absorb_union(const ExprPtr& e, const Catalog&) {
  if (!is_union(e) || !is_join(e->right) || !equal_exprs(e->left, e->right->left))
    return no_match();
  return e->left;
}

// A * (B + C) -> A * B + A * C, guarded by headers.
Match distrib_join_fwd(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e) || !is_union(e->right)) return no_match();
  auto ha = try_header(e->left, c);
  auto hb = try_header(e->right->left, c);
  auto hc = try_header(e->right->right, c);
  if (!ha || !hb || !hc || !join_over_union_applicable(*ha, *hb, *hc)) return no_match();
  return make_union(make_join(e->left, e->right->left), make_join(e->left, e->right->right));
}
Match distrib_join_bwd(const ExprPtr& e, const Catalog& c) {
  if (!is_union(e) || !is_join(e->left) || !is_join(e->right)) return no_match();
  if (!equal_exprs(e->left->left, e->right->left)) return no_match();
  auto ha = try_header(e->left->left, c);
  auto hb = try_header(e->left->right, c);
  auto hc = try_header(e->right->right, c);
  if (!ha || !hb || !hc || !join_over_union_applicable(*ha, *hb, *hc)) return no_match();
  return make_join(e->left->left, make_union(e->left->right, e->right->right));
}

// A + B * C -> (A + B) * (A + C), guarded by headers.
Match distrib_union_fwd(const ExprPtr& e, const Catalog& c) {
  if (!is_union(e) || !is_join(e->right)) return no_match();
  auto ha = try_header(e->left, c);
  auto hb = try_header(e->right->left, c);
  auto hc = try_header(e->right->right, c);
  if (!ha || !hb || !hc || !union_over_join_applicable(*ha, *hb, *hc)) return no_match();
  return make_join(make_union(e->left, e->right->left), make_union(e->left, e->right->right));
}
Match distrib_union_bwd(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e) || !is_union(e->left) || !is_union(e->right)) return no_match();
  if (!equal_exprs(e->left->left, e->right->left)) return no_match();
  auto ha = try_header(e->left->left, c);
  auto hb = try_header(e->left->right, c);
  auto hc = try_header(e->right->right, c);
  if (!ha || !hb || !hc || !union_over_join_applicable(*ha, *hb, *hc)) return no_match();
  return make_union(e->left->left, make_join(e->left->right, e->right->right));
}

// Evaluates a join/union of two literals and keeps the result only when it
// has a literal spelling again: an empty relation, 01, 11, or one of the
// operands.
Match constant_fold(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e) && !is_union(e)) return no_match();
  if (!is_literal(e->left) || !is_literal(e->right)) return no_match();
  try {
    Relation r = evaluate(e, c);
    if (r.size() == 0) return make_empty_literal(attr_names(*c.universe, r.header()));
    if (r.header().empty()) return make_special(SpecialCode::unit_01);
    if (c.universe->size() > 0 && r.header() == c.universe->all()) {
      try {
        if (r.size() == c.universe->product_size(r.header(), r.size()))
          return make_special(SpecialCode::universal_11);
      } catch (const LatticeError&) {
      }
    }
    if (r == evaluate(e->left, c)) return e->left;
    if (r == evaluate(e->right, c)) return e->right;
  } catch (const LatticeError&) {
  }
  return no_match();
}

// A join with a syntactically empty operand is empty over the joint header.
Match empty_annihilate(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e)) return no_match();
  if (!is_empty_literal(e->left) && !is_empty_literal(e->right)) return no_match();
  auto h = try_header(e, c);
  if (!h) return no_match();
  return make_empty_literal(attr_names(*c.universe, *h));
}

// select(A, p) * B -> select(A * B, p); backward pushes the selection onto
// the left operand, so it requires the predicate to live inside H(A).
Match push_cross_select_fwd(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e) || e->left->kind != ExprKind::select) return no_match();
  auto ha = try_header(e->left->left, c);
  auto pa = pred_attrs(e->left->pred, c);
  if (!ha || !pa || !pa->subset_of(*ha)) return no_match();
  return make_select(make_join(e->left->left, e->right), e->left->pred);
}
Match push_cross_select_bwd(const ExprPtr& e, const Catalog& c) {
  if (e->kind != ExprKind::select || !is_join(e->left)) return no_match();
  auto ha = try_header(e->left->left, c);
  auto pa = pred_attrs(e->pred, c);
  if (!ha || !pa || !pa->subset_of(*ha)) return no_match();
  return make_join(make_select(e->left->left, e->pred), e->left->right);
}

// select(project(A, ys), p) -> project(select(A, p), ys) when p only
// mentions kept attributes.
Match push_select_project(const ExprPtr& e, const Catalog& c) {
  if (e->kind != ExprKind::select || e->left->kind != ExprKind::project) return no_match();
  auto pa = pred_attrs(e->pred, c);
  auto ys = attrs_to_set(e->left->attrs, *c.universe);
  auto ha = try_header(e->left->left, c);
  if (!pa || !ys || !ha) return no_match();
  if (!pa->subset_of(*ys) || !ys->subset_of(*ha)) return no_match();
  return make_project(make_select(e->left->left, e->pred), e->left->attrs);
}

// project(A, xs) * B -> project(A * B, xs + H(B)) when every attribute A
// shares with B survives the projection (the distributivity guard).
Match push_cross_project(const ExprPtr& e, const Catalog& c) {
  if (!is_join(e) || e->left->kind != ExprKind::project) return no_match();
  auto ha = try_header(e->left->left, c);
  auto hb = try_header(e->right, c);
  auto xs = attrs_to_set(e->left->attrs, *c.universe);
  if (!ha || !hb || !xs) return no_match();
  if (!xs->subset_of(*ha)) return no_match();
  if (!join_over_union_applicable(*hb, *ha, *xs)) return no_match();
  return make_project(make_join(e->left->left, e->right), attr_names(*c.universe, *xs | *hb));
}

std::vector<RewriteRule> make_builtin_rules() {
  std::vector<RewriteRule> rules;
  auto add = [&](const char* id, RuleDirection dir, const char* pat, const char* rep,
                 RewriteRule::Apply fwd, RewriteRule::Apply bwd = nullptr, bool macro = false) {
    rules.emplace_back(id, dir, pat, rep, std::move(fwd), std::move(bwd), macro);
  };
  add("JOIN_IDEMPOTENT", RuleDirection::both, "A * A", "A", join_idem_fwd, join_idem_bwd);
  add("UNION_IDEMPOTENT", RuleDirection::both, "A + A", "A", union_idem_fwd, union_idem_bwd);
  // commutativity is its own inverse, so one orientation covers both
  add("JOIN_COMMUTATIVE", RuleDirection::ltr, "A * B", "B * A", join_comm);
  add("UNION_COMMUTATIVE", RuleDirection::ltr, "A + B", "B + A", union_comm);
  add("JOIN_ASSOCIATIVE", RuleDirection::both, "A * (B * C)", "(A * B) * C", join_assoc_fwd,
      join_assoc_bwd);
  add("UNION_ASSOCIATIVE", RuleDirection::both, "A + (B + C)", "(A + B) + C", union_assoc_fwd,
      union_assoc_bwd);
  // the reverse directions would have to invent B, so these stay one-way
  add("ABSORB_JOIN_OVER_UNION", RuleDirection::ltr, "A * (A + B)", "A", absorb_join);
  add("ABSORB_UNION_OVER_JOIN", RuleDirection::ltr, "A + A * B", "A", absorb_union);
  add("DISTRIB_JOIN_OVER_UNION", RuleDirection::both, "A * (B + C)", "A * B + A * C",
      distrib_join_fwd, distrib_join_bwd);
  add("DISTRIB_UNION_OVER_JOIN", RuleDirection::both, "A + B * C", "(A + B) * (A + C)",
      distrib_union_fwd, distrib_union_bwd);
  add("CONSTANT_FOLD", RuleDirection::ltr, "lit * lit | lit + lit", "lit", constant_fold);
  add("EMPTY_ANNIHILATE", RuleDirection::ltr, "A * [xs]", "[H(A) + xs]", empty_annihilate);
  add("PUSH_CROSS_THROUGH_SELECT", RuleDirection::both, "select(A, p) * B", "select(A * B, p)",
      push_cross_select_fwd, push_cross_select_bwd, true);
  add("PUSH_SELECT_THROUGH_PROJECT", RuleDirection::ltr, "select(project(A, ys), p)",
      "project(select(A, p), ys)", push_select_project, nullptr, true);
  add("PUSH_CROSS_THROUGH_PROJECT", RuleDirection::ltr, "project(A, xs) * B",
      "project(A * B, xs + H(B))", push_cross_project, nullptr, true);
  return rules;
}

std::size_t child_count(const Expr& e) {
  switch (e.kind) {
    case ExprKind::join:
    case ExprKind::unite:
    case ExprKind::divide_op:
    case ExprKind::minus_op:
      return 2;
    case ExprKind::select:
    case ExprKind::project:
    case ExprKind::rename_op:
      return 1;
    default:
      return 0;
  }
}

const ExprPtr& child_of(const Expr& e, std::size_t i) { return i == 0 ? e.left : e.right; }

ExprPtr with_child(const ExprPtr& e, std::size_t i, ExprPtr sub) {
  switch (e->kind) {
    case ExprKind::join:
      return make_join(i == 0 ? sub : e->left, i == 1 ? sub : e->right, e->loc);
    case ExprKind::unite:
      return make_union(i == 0 ? sub : e->left, i == 1 ? sub : e->right, e->loc);
    case ExprKind::divide_op:
      return make_divide(i == 0 ? sub : e->left, i == 1 ? sub : e->right, e->loc);
    case ExprKind::minus_op:
      return make_minus(i == 0 ? sub : e->left, i == 1 ? sub : e->right, e->loc);
    case ExprKind::select:
      return make_select(std::move(sub), e->pred, e->loc);
    case ExprKind::project:
      return make_project(std::move(sub), e->attrs, e->loc);
    case ExprKind::rename_op:
      return make_rename(std::move(sub), e->from, e->to, e->loc);
    default:
      throw LatticeError(Errc::rule_not_applicable, "node has no children");
  }
}

[[noreturn]] void bad_position(const Position& pos) {
  throw LatticeError(Errc::rule_not_applicable, "no subtree at position " + position_text(pos));
}

ExprPtr replace_rec(const ExprPtr& node, const Position& pos, std::size_t depth,
                    const ExprPtr& repl) {
  if (depth == pos.size()) return repl;
  std::size_t i = pos[depth];
  if (i >= child_count(*node)) bad_position(pos);
  return with_child(node, i, replace_rec(child_of(*node, i), pos, depth + 1, repl));
}

}  // namespace

std::string_view orientation_name(Orientation o) {
  return o == Orientation::forward ? "forward" : "backward";
}

std::optional<ExprPtr> RewriteRule::try_apply(const ExprPtr& node, const Catalog& c,
                                              Orientation o) const {
  if (o == Orientation::backward) {
    if (direction_ != RuleDirection::both || !backward_) return std::nullopt;
    return backward_(node, c);
  }
  return forward_(node, c);
}

const std::vector<RewriteRule>& builtin_rules() {
  static const std::vector<RewriteRule> rules = make_builtin_rules();
  return rules;
}

const RewriteRule* find_rule(std::string_view id) {
  for (const auto& r : builtin_rules())
    if (r.id() == id) return &r;
  return nullptr;
}

std::string position_text(const Position& pos) {
  if (pos.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(pos[i]);
  }
  return out;
}

ExprPtr subtree_at(const ExprPtr& root, const Position& pos) {
  ExprPtr cur = root;
  for (std::uint32_t i : pos) {
    if (i >= child_count(*cur)) bad_position(pos);
    cur = child_of(*cur, i);
  }
  return cur;
}

ExprPtr replace_at(const ExprPtr& root, const Position& pos, const ExprPtr& replacement) {
  return replace_rec(root, pos, 0, replacement);
}

std::vector<RuleApplication> applicable_rules(const ExprPtr& root, const Catalog& c) {
  std::vector<RuleApplication> out;
  Position pos;
  auto walk = [&](auto&& self, const ExprPtr& e) -> void {
    for (const auto& r : builtin_rules()) {
      if (r.try_apply(e, c, Orientation::forward)) out.push_back({&r, pos, Orientation::forward});
      if (r.direction() == RuleDirection::both && r.try_apply(e, c, Orientation::backward))
        out.push_back({&r, pos, Orientation::backward});
    }
    for (std::size_t i = 0; i < child_count(*e); ++i) {
      pos.push_back(static_cast<std::uint32_t>(i));
      self(self, child_of(*e, i));
      pos.pop_back();
    }
  };
  walk(walk, root);
  return out;
}

ExprPtr apply_rule(const ExprPtr& root, const RewriteRule& rule, const Position& pos,
                   Orientation orient, const Catalog& c) {
  ExprPtr node = subtree_at(root, pos);
  auto result = rule.try_apply(node, c, orient);
  if (!result)
    throw LatticeError(Errc::rule_not_applicable,
                       "rule " + rule.id() + " (" + std::string(orientation_name(orient)) +
                           ") does not apply at " + position_text(pos));
  return replace_at(root, pos, *result);
}

RewriteTrace expand_macro(const RewriteRule& rule, Orientation orient, const ExprPtr& root,
                          const Position& pos, const Catalog& c) {
  if (!rule.is_macro())
    throw LatticeError(Errc::rule_not_applicable, rule.id() + " is not a macro rule");
  ExprPtr node = subtree_at(root, pos);
  if (!rule.try_apply(node, c, orient))
    throw LatticeError(Errc::rule_not_applicable,
                       "rule " + rule.id() + " (" + std::string(orientation_name(orient)) +
                           ") does not apply at " + position_text(pos));

  ExprPtr current = root;
  RewriteTrace out;
  auto step = [&](std::string id, Position p, Orientation o, ExprPtr sub) {
    std::string before = format_expr(current);
    current = replace_at(current, p, std::move(sub));
    out.push_back({std::move(id), rule.id(), std::move(p), o, std::move(before),
                   format_expr(current)});
  };
  auto at = [&](std::initializer_list<std::uint32_t> tail) {
    Position p = pos;
    p.insert(p.end(), tail);
    return p;
  };
  auto sub = [&](const Position& p) { return subtree_at(current, p); };
  auto prim = [&](const char* id, Position p, Orientation o) {
    const RewriteRule* r = find_rule(id);
    auto res = r->try_apply(subtree_at(current, p), c, o);
    if (!res)
      throw LatticeError(Errc::rule_not_applicable,
                         "expansion step " + std::string(id) + " failed at " + position_text(p));
    step(id, std::move(p), o, std::move(*res));
  };
  const auto fwd = Orientation::forward;
  const auto bwd = Orientation::backward;

  if (rule.id() == "PUSH_CROSS_THROUGH_SELECT" && orient == fwd) {
    // select(a, p) * b  ==>  select(a * b, p)
    ExprPtr a = node->left->left;
    PredSyntax p = node->left->pred;
    step("DESUGAR_SELECT", at({0}), fwd, make_join(a, make_pred_literal(p)));
    prim("JOIN_ASSOCIATIVE", pos, bwd);
    prim("JOIN_COMMUTATIVE", at({1}), fwd);
    prim("JOIN_ASSOCIATIVE", pos, fwd);
    step("RESUGAR_SELECT", pos, fwd, make_select(sub(at({0})), p));
  } else if (rule.id() == "PUSH_CROSS_THROUGH_SELECT") {
    // select(a * b, p)  ==>  select(a, p) * b
    ExprPtr a = node->left->left;
    PredSyntax p = node->pred;
    step("DESUGAR_SELECT", pos, fwd, make_join(node->left, make_pred_literal(p)));
    prim("JOIN_ASSOCIATIVE", pos, bwd);
    prim("JOIN_COMMUTATIVE", at({1}), fwd);
    prim("JOIN_ASSOCIATIVE", pos, fwd);
    step("RESUGAR_SELECT", at({0}), fwd, make_select(a, p));
  } else if (rule.id() == "PUSH_SELECT_THROUGH_PROJECT") {
    // select(project(a, ys), p)  ==>  project(select(a, p), ys)
    ExprPtr proj = node->left;
    ExprPtr a = proj->left;
    std::vector<std::string> ys = proj->attrs;
    PredSyntax p = node->pred;
    step("DESUGAR_SELECT", pos, fwd, make_join(proj, make_pred_literal(p)));
    step("DESUGAR_PROJECT", at({0}), fwd, make_union(a, make_empty_literal(ys)));
    prim("JOIN_COMMUTATIVE", pos, fwd);
    prim("DISTRIB_JOIN_OVER_UNION", pos, fwd);
    prim("CONSTANT_FOLD", at({1}), fwd);
    prim("JOIN_COMMUTATIVE", at({0}), fwd);
    step("RESUGAR_SELECT", at({0}), fwd, make_select(a, p));
    step("RESUGAR_PROJECT", pos, fwd, make_project(sub(at({0})), ys));
  } else {
    // project(a, xs) * b  ==>  project(a * b, xs + H(b))
    ExprPtr proj = node->left;
    ExprPtr a = proj->left;
    std::vector<std::string> xs = proj->attrs;
    step("DESUGAR_PROJECT", at({0}), fwd, make_union(a, make_empty_literal(xs)));
    prim("JOIN_COMMUTATIVE", pos, fwd);
    prim("DISTRIB_JOIN_OVER_UNION", pos, fwd);
    prim("EMPTY_ANNIHILATE", at({1}), fwd);
    prim("JOIN_COMMUTATIVE", at({0}), fwd);
    ExprPtr lit = sub(at({1}));
    step("RESUGAR_PROJECT", pos, fwd, make_project(sub(at({0})), lit->attrs));
  }
  return out;
}

std::string_view strategy_name(Strategy s) {
  return s == Strategy::pushdown ? "pushdown" : "exhaustive";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "pushdown") return Strategy::pushdown;
  if (name == "exhaustive") return Strategy::exhaustive;
  return std::nullopt;
}

namespace {

struct Action {
  const RewriteRule* rule;
  Position pos;
  Orientation orient;
};

// The pushdown step at one node, in priority order: fold empties and
// literals, move selections below projections and join operands (commuting
// the join first when the predicate lives in the right operand), then float
// projections above joins.
std::optional<Action> pushdown_action_at(const ExprPtr& e, const Position& pos,
                                         const Catalog& c) {
  auto try_one = [&](const char* id, Orientation o) -> std::optional<Action> {
    const RewriteRule* r = find_rule(id);
    if (r->try_apply(e, c, o)) return Action{r, pos, o};
    return std::nullopt;
  };
  if (auto a = try_one("EMPTY_ANNIHILATE", Orientation::forward)) return a;
  if (auto a = try_one("CONSTANT_FOLD", Orientation::forward)) return a;
  if (auto a = try_one("PUSH_SELECT_THROUGH_PROJECT", Orientation::forward)) return a;
  if (auto a = try_one("PUSH_CROSS_THROUGH_SELECT", Orientation::backward)) return a;
  if (e->kind == ExprKind::select && is_join(e->left)) {
    auto pa = pred_attrs(e->pred, c);
    auto ha = try_header(e->left->left, c);
    auto hb = try_header(e->left->right, c);
    if (pa && ha && hb && !pa->subset_of(*ha) && pa->subset_of(*hb)) {
      Position p = pos;
      p.push_back(0);
      return Action{find_rule("JOIN_COMMUTATIVE"), std::move(p), Orientation::forward};
    }
  }
  if (auto a = try_one("PUSH_CROSS_THROUGH_PROJECT", Orientation::forward)) return a;
  return std::nullopt;
}

std::optional<Action> next_pushdown_action(const ExprPtr& root, const Catalog& c) {
  std::optional<Action> found;
  Position pos;
  auto walk = [&](auto&& self, const ExprPtr& e) -> bool {
    if ((found = pushdown_action_at(e, pos, c))) return true;
    for (std::size_t i = 0; i < child_count(*e); ++i) {
      pos.push_back(static_cast<std::uint32_t>(i));
      bool hit = self(self, child_of(*e, i));
      pos.pop_back();
      if (hit) return true;
    }
    return false;
  };
  walk(walk, root);
  return found;
}

NormalizeResult normalize_pushdown(const ExprPtr& e, const Catalog& c, std::size_t budget) {
  NormalizeResult res;
  res.expr = e;
  for (;;) {
    auto act = next_pushdown_action(res.expr, c);
    if (!act) break;
    if (res.applications >= budget) {
      res.budget_exhausted = true;
      break;
    }
    if (act->rule->is_macro()) {
      auto steps = expand_macro(*act->rule, act->orient, res.expr, act->pos, c);
      res.expr = apply_rule(res.expr, *act->rule, act->pos, act->orient, c);
      res.trace.insert(res.trace.end(), steps.begin(), steps.end());
    } else {
      std::string before = format_expr(res.expr);
      res.expr = apply_rule(res.expr, *act->rule, act->pos, act->orient, c);
      res.trace.push_back({act->rule->id(), "", act->pos, act->orient, std::move(before),
                           format_expr(res.expr)});
    }
    ++res.applications;
  }
  return res;
}

NormalizeResult normalize_exhaustive(const ExprPtr& e, const Catalog& c, std::size_t budget) {
  struct SearchNode {
    ExprPtr expr;
    std::string text;
    std::size_t nodes;
    int parent = -1;
    const RewriteRule* rule = nullptr;
    Position pos;
    Orientation orient = Orientation::forward;
  };
  std::vector<SearchNode> nodes;
  SearchNode start;
  start.expr = e;
  start.text = format_expr(e);
  start.nodes = node_count(e);
  nodes.push_back(std::move(start));
  std::map<std::string, std::size_t> seen{{nodes[0].text, 0}};
  std::deque<std::size_t> queue{0};

  NormalizeResult res;
  while (!queue.empty() && !res.budget_exhausted) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (const auto& app : applicable_rules(nodes[idx].expr, c)) {
      if (res.applications >= budget) {
        res.budget_exhausted = true;
        break;
      }
      ++res.applications;
      ExprPtr next = apply_rule(nodes[idx].expr, *app.rule, app.pos, app.orient, c);
      std::string text = format_expr(next);
      if (seen.count(text)) continue;
      SearchNode added;
      added.expr = std::move(next);
      added.text = std::move(text);
      added.nodes = node_count(added.expr);
      added.parent = static_cast<int>(idx);
      added.rule = app.rule;
      added.pos = app.pos;
      added.orient = app.orient;
      seen.emplace(added.text, nodes.size());
      nodes.push_back(std::move(added));
      queue.push_back(nodes.size() - 1);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].nodes < nodes[best].nodes ||
        (nodes[i].nodes == nodes[best].nodes && nodes[i].text < nodes[best].text))
      best = i;
  }

  std::vector<std::size_t> path;
  for (std::size_t j = best; j != 0; j = static_cast<std::size_t>(nodes[j].parent))
    path.push_back(j);
  std::reverse(path.begin(), path.end());
  for (std::size_t j : path) {
    const auto& n = nodes[j];
    const ExprPtr& from = nodes[static_cast<std::size_t>(n.parent)].expr;
    if (n.rule->is_macro()) {
      auto steps = expand_macro(*n.rule, n.orient, from, n.pos, c);
      res.trace.insert(res.trace.end(), steps.begin(), steps.end());
    } else {
      res.trace.push_back({n.rule->id(), "", n.pos, n.orient,
                           nodes[static_cast<std::size_t>(n.parent)].text, n.text});
    }
  }
  res.expr = nodes[best].expr;
  return res;
}

void collect_names(const ExprPtr& e, std::map<std::string, SourceLoc>& out) {
  if (e->kind == ExprKind::name) out.emplace(e->id, e->loc);
  for (std::size_t i = 0; i < child_count(*e); ++i) collect_names(child_of(*e, i), out);
}

}  // namespace

NormalizeResult normalize(const ExprPtr& e, const Catalog& c, Strategy strategy,
                          std::size_t budget) {
  return strategy == Strategy::pushdown ? normalize_pushdown(e, c, budget)
                                        : normalize_exhaustive(e, c, budget);
}

EquivalenceResult equivalent(const ExprPtr& e1, const ExprPtr& e2, const Catalog& base,
                             std::size_t trials, std::uint64_t seed) {
  std::map<std::string, SourceLoc> names;
  collect_names(e1, names);
  collect_names(e2, names);
  for (const auto& [name, loc] : names) base.require(name, loc);

  EquivalenceResult res;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Catalog c;
    if (t == 0) {
      c = base;
    } else {
      c.universe = base.universe;
      for (const auto& [name, rel] : base.relations)
        c.relations.emplace(name, random_relation(rng, base.universe, rel.header()));
    }
    Relation l = evaluate(e1, c);
    Relation r = evaluate(e2, c);
    res.trials = t + 1;
    if (!(l == r)) {
      res.equivalent = false;
      res.counterexample = std::move(c);
      res.lhs = std::move(l);
      res.rhs = std::move(r);
      return res;
    }
  }
  return res;
}

}  // namespace rlat
