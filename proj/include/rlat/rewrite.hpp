#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlat/expr.hpp"

namespace rlat {

enum class RuleDirection { ltr, both };
enum class Orientation { forward, backward };

std::string_view orientation_name(Orientation o);

/// One rewrite rule. Matching is structural on the expression tree; guarded
/// rules consult inferred headers (through the catalog) before agreeing to
/// fire. Macro rules rewrite in one step but can be replayed as a sequence
/// of primitive steps with expand_macro.
class RewriteRule {
 public:
  using Apply = std::function<std::optional<ExprPtr>(const ExprPtr&, const Catalog&)>;

  RewriteRule(std::string id, RuleDirection direction, std::string pattern,
              std::string replacement, Apply forward, Apply backward, bool macro = false)
      : id_(std::move(id)),
        direction_(direction),
        pattern_(std::move(pattern)),
        replacement_(std::move(replacement)),
        forward_(std::move(forward)),
        backward_(std::move(backward)),
        macro_(macro) {}

  const std::string& id() const { return id_; }
  RuleDirection direction() const { return direction_; }
  bool is_macro() const { return macro_; }
  /// Display text only, e.g. "A * (B + C)" -> "A * B + A * C".
  const std::string& pattern() const { return pattern_; }
  const std::string& replacement() const { return replacement_; }

  /// The rewritten subtree, or nullopt if the node does not match (or a
  /// guard refuses). Backward orientation reverses pattern and replacement
  /// and is only available for direction both.
  std::optional<ExprPtr> try_apply(const ExprPtr& node, const Catalog& c,
                                   Orientation o = Orientation::forward) const;

 private:
  std::string id_;
  RuleDirection direction_;
  std::string pattern_;
  std::string replacement_;
  Apply forward_;
  Apply backward_;
  bool macro_;
};

/// The stock registry: the eight lattice axioms (idempotence, commutativity,
/// associativity both ways; absorptions left-to-right), the two guarded
/// distributivity rules, literal folding (CONSTANT_FOLD, EMPTY_ANNIHILATE),
/// and three guarded macro rules that move selections and projections
/// through joins (PUSH_CROSS_THROUGH_SELECT, PUSH_SELECT_THROUGH_PROJECT,
/// PUSH_CROSS_THROUGH_PROJECT).
const std::vector<RewriteRule>& builtin_rules();
const RewriteRule* find_rule(std::string_view id);

/// Path from the root: empty for the root itself, otherwise child indices
/// (0 = left/only child, 1 = right).
using Position = std::vector<std::uint32_t>;

std::string position_text(const Position& pos);
ExprPtr subtree_at(const ExprPtr& root, const Position& pos);
ExprPtr replace_at(const ExprPtr& root, const Position& pos, const ExprPtr& replacement);

struct RuleApplication {
  const RewriteRule* rule;
  Position pos;
  Orientation orient;
};

/// Every (rule, position, orientation) triple that currently matches, in
/// pre-order position order, registry order within a position, forward
/// before backward.
std::vector<RuleApplication> applicable_rules(const ExprPtr& root, const Catalog& c);

/// Applies one rule at one position; throws Errc::rule_not_applicable if it
/// does not match there.
ExprPtr apply_rule(const ExprPtr& root, const RewriteRule& rule, const Position& pos,
                   Orientation orient, const Catalog& c);

/// One primitive step of a rewrite history. `rule` is a registry id or one
/// of the sugar shuttles DESUGAR_SELECT / RESUGAR_SELECT / DESUGAR_PROJECT /
/// RESUGAR_PROJECT that macro expansions use; `macro` names the enclosing
/// macro application, empty for standalone steps. before/after are whole-
/// expression canonical texts.
struct TraceStep {
  std::string rule;
  std::string macro;
  Position pos;
  Orientation orient = Orientation::forward;
  std::string before;
  std::string after;
};

using RewriteTrace = std::vector<TraceStep>;

/// Replays one macro application as its primitive step sequence. The final
/// step lands on exactly the tree apply_rule would return.
RewriteTrace expand_macro(const RewriteRule& rule, Orientation orient, const ExprPtr& root,
                          const Position& pos, const Catalog& c);

enum class Strategy { pushdown, exhaustive };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct NormalizeResult {
  ExprPtr expr;
  RewriteTrace trace;
  /// Rule applications performed (a macro counts once; its trace steps are
  /// the expansion).
  std::size_t applications = 0;
  bool budget_exhausted = false;
};

/// pushdown: to a fixed point, drive selections toward the leaves, fold
/// literal subtrees, and float projections toward the root. exhaustive:
/// breadth-first search of the rewrite space under the application budget,
/// returning the smallest expression found (node count, then text).
NormalizeResult normalize(const ExprPtr& e, const Catalog& c, Strategy strategy,
                          std::size_t budget = 1000);

struct EquivalenceResult {
  bool equivalent = true;
  std::size_t trials = 0;
  /// Filled in when a trial separates the expressions.
  std::optional<Catalog> counterexample;
  std::optional<Relation> lhs;
  std::optional<Relation> rhs;
};

/// Evaluates both expressions over `base` and then over seeded random
/// catalogs with the same universe and headers. Sampling can only refute;
/// agreement on all trials is evidence, not proof.
EquivalenceResult equivalent(const ExprPtr& e1, const ExprPtr& e2, const Catalog& base,
                             std::size_t trials = 100, std::uint64_t seed = 0);

}  // namespace rlat
