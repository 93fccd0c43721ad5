#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rlat/core.hpp"
#include "rlat/derived.hpp"

namespace rlat {

// Expression language over the two primitives:
//   union := join ('+' join)*
//   join  := atom ('*' atom)*
//   atom  := NAME | '00' | '01' | '10' | '11'
//          | '[' name+ ']' | '[' predicate ']'
//          | select '(' union ',' predicate ')'
//          | project '(' union ',' name+ ')'
//          | rename '(' union ',' name '->' name ')'
//          | divide '(' union ',' union ')' | minus '(' union ',' union ')'
//          | '(' union ')'
// select/project/rename/divide/minus are reserved words. Constants in
// predicates may be quoted with single quotes (backslash escapes); an
// unquoted right-hand side that names a universe attribute compares
// attribute to attribute, anything else compares against the constant.

enum class ExprKind {
  name,
  special,
  empty_literal,
  pred_literal,
  join,
  unite,
  select,
  project,
  rename_op,
  divide_op,
  minus_op,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One comparison as written. The right side stays a raw token until
/// evaluation resolves it against a universe.
struct PredAtom {
  std::string left;
  Cmp op = Cmp::eq;
  std::string right;
  bool right_quoted = false;
  SourceLoc loc;
};

struct PredSyntax {
  std::vector<PredAtom> atoms;
};

struct Expr {
  ExprKind kind = ExprKind::name;
  SourceLoc loc;

  std::string id;                  // name
  SpecialCode code{};              // special
  std::vector<std::string> attrs;  // empty_literal, project (name-sorted, unique)
  PredSyntax pred;                 // pred_literal, select
  std::string from, to;            // rename_op
  ExprPtr left, right;             // right only for binary kinds
};

ExprPtr make_name(std::string id, SourceLoc loc = {});
ExprPtr make_special(SpecialCode code, SourceLoc loc = {});
/// An empty attribute list denotes the empty-header empty relation, which
/// already has a spelling: the node collapses to special 00.
ExprPtr make_empty_literal(std::vector<std::string> attrs, SourceLoc loc = {});
ExprPtr make_pred_literal(PredSyntax pred, SourceLoc loc = {});
ExprPtr make_join(ExprPtr l, ExprPtr r, SourceLoc loc = {});
ExprPtr make_union(ExprPtr l, ExprPtr r, SourceLoc loc = {});
ExprPtr make_select(ExprPtr child, PredSyntax pred, SourceLoc loc = {});
/// Projection to no attributes reads "keep nothing", which the sugar-free
/// algebra spells child + 00; the factory builds that form directly since
/// the call syntax cannot express an empty list.
ExprPtr make_project(ExprPtr child, std::vector<std::string> attrs, SourceLoc loc = {});
ExprPtr make_rename(ExprPtr child, std::string from, std::string to, SourceLoc loc = {});
ExprPtr make_divide(ExprPtr l, ExprPtr r, SourceLoc loc = {});
ExprPtr make_minus(ExprPtr l, ExprPtr r, SourceLoc loc = {});

struct Catalog {
  UniversePtr universe;
  std::map<std::string, Relation> relations;

  const Relation& require(const std::string& name, SourceLoc loc = {}) const;
};

/// Structural equality; source locations are ignored.
bool equal_exprs(const ExprPtr& a, const ExprPtr& b);

std::size_t node_count(const ExprPtr& e);

/// Canonical text: minimal parentheses, '*' binding tighter than '+', both
/// left-associative; headers name-sorted and space-separated; predicates
/// "&"-joined with quoting preserved.
std::string format_expr(const ExprPtr& e);
std::string format_pred(const PredSyntax& p);

ExprPtr parse_expr(const std::string& text);

/// Binds atom right-hand sides: unquoted tokens naming a universe attribute
/// become attribute comparisons, everything else a constant.
Predicate resolve_predicate(const PredSyntax& p, const Universe& u);

/// Header of the evaluation result, from headers alone. Performs the same
/// static checks evaluation would (unknown names/attributes, projection and
/// rename and divide header preconditions), with source positions.
AttrSet infer_header(const ExprPtr& e, const Catalog& c);

Relation evaluate(const ExprPtr& e, const Catalog& c);

/// Rewrites sugar into the two primitives:
///   select(E, p)      -> E * [p]
///   project(E, xs)    -> E + [xs]
///   rename(E, y->z)   -> (E * [y=z]) + [target]
/// divide/minus have no primitive spelling and stay as calls (their
/// children still desugar).
ExprPtr desugar(const ExprPtr& e, const Catalog& c);

}  // namespace rlat
