#include "rlat/expr.hpp"

#include <algorithm>
#include <sstream>

namespace rlat {

namespace {

std::shared_ptr<Expr> blank(ExprKind kind, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = loc;
  return e;
}

std::vector<std::string> normalize_attrs(std::vector<std::string> attrs) {
  std::sort(attrs.begin(), attrs.end());
  attrs.erase(std::unique(attrs.begin(), attrs.end()), attrs.end());
  return attrs;
}

}  // namespace

ExprPtr make_name(std::string id, SourceLoc loc) {
  auto e = blank(ExprKind::name, loc);
  e->id = std::move(id);
  return e;
}

ExprPtr make_special(SpecialCode code, SourceLoc loc) {
  auto e = blank(ExprKind::special, loc);
  e->code = code;
  return e;
}

ExprPtr make_empty_literal(std::vector<std::string> attrs, SourceLoc loc) {
  attrs = normalize_attrs(std::move(attrs));
  if (attrs.empty()) return make_special(SpecialCode::empty_00, loc);
  auto e = blank(ExprKind::empty_literal, loc);
  e->attrs = std::move(attrs);
  return e;
}

ExprPtr make_pred_literal(PredSyntax pred, SourceLoc loc) {
  auto e = blank(ExprKind::pred_literal, loc);
  e->pred = std::move(pred);
  return e;
}

ExprPtr make_join(ExprPtr l, ExprPtr r, SourceLoc loc) {
  auto e = blank(ExprKind::join, loc);
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr make_union(ExprPtr l, ExprPtr r, SourceLoc loc) {
  auto e = blank(ExprKind::unite, loc);
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr make_select(ExprPtr child, PredSyntax pred, SourceLoc loc) {
  auto e = blank(ExprKind::select, loc);
  e->left = std::move(child);
  e->pred = std::move(pred);
  return e;
}

ExprPtr make_project(ExprPtr child, std::vector<std::string> attrs, SourceLoc loc) {
  attrs = normalize_attrs(std::move(attrs));
  if (attrs.empty()) {
    return make_union(std::move(child), make_special(SpecialCode::empty_00, loc), loc);
  }
  auto e = blank(ExprKind::project, loc);
  e->left = std::move(child);
  e->attrs = std::move(attrs);
  return e;
}

ExprPtr make_rename(ExprPtr child, std::string from, std::string to, SourceLoc loc) {
  auto e = blank(ExprKind::rename_op, loc);
  e->left = std::move(child);
  e->from = std::move(from);
  e->to = std::move(to);
  return e;
}

ExprPtr make_divide(ExprPtr l, ExprPtr r, SourceLoc loc) {
  auto e = blank(ExprKind::divide_op, loc);
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr make_minus(ExprPtr l, ExprPtr r, SourceLoc loc) {
  auto e = blank(ExprKind::minus_op, loc);
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

const Relation& Catalog::require(const std::string& name, SourceLoc loc) const {
  auto it = relations.find(name);
  if (it == relations.end()) {
    throw LatticeError(Errc::unresolved_name, "no relation named '" + name + "'", loc);
  }
  return it->second;
}

namespace {

bool equal_preds(const PredSyntax& a, const PredSyntax& b) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    const PredAtom& x = a.atoms[i];
    const PredAtom& y = b.atoms[i];
    if (x.left != y.left || x.op != y.op || x.right != y.right ||
        x.right_quoted != y.right_quoted) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool equal_exprs(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::name:
      return a->id == b->id;
    case ExprKind::special:
      return a->code == b->code;
    case ExprKind::empty_literal:
      return a->attrs == b->attrs;
    case ExprKind::pred_literal:
      return equal_preds(a->pred, b->pred);
    case ExprKind::join:
    case ExprKind::unite:
    case ExprKind::divide_op:
    case ExprKind::minus_op:
      return equal_exprs(a->left, b->left) && equal_exprs(a->right, b->right);
    case ExprKind::select:
      return equal_preds(a->pred, b->pred) && equal_exprs(a->left, b->left);
    case ExprKind::project:
      return a->attrs == b->attrs && equal_exprs(a->left, b->left);
    case ExprKind::rename_op:
      return a->from == b->from && a->to == b->to && equal_exprs(a->left, b->left);
  }
  return false;
}

std::size_t node_count(const ExprPtr& e) {
  if (!e) return 0;
  return 1 + node_count(e->left) + node_count(e->right);
}

std::string format_pred(const PredSyntax& p) {
  std::string out;
  for (std::size_t i = 0; i < p.atoms.size(); ++i) {
    const PredAtom& a = p.atoms[i];
    if (i) out += " & ";
    out += a.left;
    out += cmp_text(a.op);
    if (a.right_quoted) {
      out += '\'';
      for (char c : a.right) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
      }
      out += '\'';
    } else {
      out += a.right;
    }
  }
  return out;
}

namespace {

void format_into(const ExprPtr& e, int parent_prec, std::string& out) {
  auto binary = [&](const char* op, int prec) {
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    format_into(e->left, prec, out);
    out += op;
    format_into(e->right, prec + 1, out);
    if (parens) out += ')';
  };
  switch (e->kind) {
    case ExprKind::name:
      out += e->id;
      return;
    case ExprKind::special:
      out += special_name(e->code);
      return;
    case ExprKind::empty_literal: {
      out += '[';
      for (std::size_t i = 0; i < e->attrs.size(); ++i) {
        if (i) out += ' ';
        out += e->attrs[i];
      }
      out += ']';
      return;
    }
    case ExprKind::pred_literal:
      out += '[';
      out += format_pred(e->pred);
      out += ']';
      return;
    case ExprKind::unite:
      binary(" + ", 1);
      return;
    case ExprKind::join:
      binary(" * ", 2);
      return;
    case ExprKind::select:
      out += "select(";
      format_into(e->left, 0, out);
      out += ", ";
      out += format_pred(e->pred);
      out += ')';
      return;
    case ExprKind::project: {
      out += "project(";
      format_into(e->left, 0, out);
      out += ", ";
      for (std::size_t i = 0; i < e->attrs.size(); ++i) {
        if (i) out += ' ';
        out += e->attrs[i];
      }
      out += ')';
      return;
    }
    case ExprKind::rename_op:
      out += "rename(";
      format_into(e->left, 0, out);
      out += ", ";
      out += e->from;
      out += "->";
      out += e->to;
      out += ')';
      return;
    case ExprKind::divide_op:
    case ExprKind::minus_op:
      out += e->kind == ExprKind::divide_op ? "divide(" : "minus(";
      format_into(e->left, 0, out);
      out += ", ";
      format_into(e->right, 0, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string format_expr(const ExprPtr& e) {
  std::string out;
  format_into(e, 0, out);
  return out;
}

Predicate resolve_predicate(const PredSyntax& p, const Universe& u) {
  std::vector<Predicate> parts;
  parts.reserve(p.atoms.size());
  for (const PredAtom& a : p.atoms) {
    if (!a.right_quoted && u.find(a.right)) {
      parts.push_back(Predicate::attr_attr(a.left, a.op, a.right));
    } else {
      parts.push_back(Predicate::attr_const(a.left, a.op, a.right));
    }
  }
  return Predicate::conjunction(std::move(parts));
}

namespace {

AttrSet resolve_attrs(const std::vector<std::string>& names, const Universe& u, SourceLoc loc) {
  AttrSet out;
  for (const auto& name : names) {
    auto i = u.find(name);
    if (!i) {
      throw LatticeError(Errc::unknown_attribute, "unknown attribute '" + name + "'", loc);
    }
    out.set(*i);
  }
  return out;
}

[[noreturn]] void rethrow_at(LatticeError& err, SourceLoc loc) {
  if (!err.loc().valid()) err.set_loc(loc);
  throw;
}

}  // namespace

AttrSet infer_header(const ExprPtr& e, const Catalog& c) {
  const Universe& u = *c.universe;
  try {
    switch (e->kind) {
      case ExprKind::name:
        return c.require(e->id, e->loc).header();
      case ExprKind::special:
        return (e->code == SpecialCode::empty_00 || e->code == SpecialCode::unit_01)
                   ? AttrSet{}
                   : u.all();
      case ExprKind::empty_literal:
        return resolve_attrs(e->attrs, u, e->loc);
      case ExprKind::pred_literal:
        return resolve_predicate(e->pred, u).attributes_in(u);
      case ExprKind::join:
        return infer_header(e->left, c) | infer_header(e->right, c);
      case ExprKind::unite:
        return infer_header(e->left, c) & infer_header(e->right, c);
      case ExprKind::select: {
        AttrSet h = infer_header(e->left, c);
        AttrSet used = resolve_predicate(e->pred, u).attributes_in(u);
        if (!used.subset_of(h)) {
          throw LatticeError(Errc::attribute_not_in_header,
                             "selection predicate mentions attributes outside the header",
                             e->loc);
        }
        return h;
      }
      case ExprKind::project: {
        AttrSet h = infer_header(e->left, c);
        AttrSet keep = resolve_attrs(e->attrs, u, e->loc);
        if (!keep.subset_of(h)) {
          throw LatticeError(Errc::attribute_not_in_header,
                             "projection attributes are not all in the header", e->loc);
        }
        return keep;
      }
      case ExprKind::rename_op: {
        AttrSet h = infer_header(e->left, c);
        std::size_t from = u.require(e->from);
        std::size_t to = u.require(e->to);
        if (!h.test(from)) {
          throw LatticeError(Errc::attribute_not_in_header,
                             "attribute '" + e->from + "' is not in the header", e->loc);
        }
        if (h.test(to)) {
          throw LatticeError(Errc::target_attribute_collision,
                             "attribute '" + e->to + "' is already in the header", e->loc);
        }
        return (h - AttrSet::single(from)) | AttrSet::single(to);
      }
      case ExprKind::divide_op: {
        AttrSet hl = infer_header(e->left, c);
        AttrSet hr = infer_header(e->right, c);
        if (hr.empty()) {
          throw LatticeError(Errc::empty_divisor_header, "divisor header is empty", e->loc);
        }
        if (!hr.proper_subset_of(hl)) {
          throw LatticeError(Errc::header_not_proper_subset,
                             "divisor header must be a proper subset of the dividend header",
                             e->loc);
        }
        return hl - hr;
      }
      case ExprKind::minus_op: {
        AttrSet hl = infer_header(e->left, c);
        if (hl != infer_header(e->right, c)) {
          throw LatticeError(Errc::header_mismatch, "relations have different headers", e->loc);
        }
        return hl;
      }
    }
  } catch (LatticeError& err) {
    rethrow_at(err, e->loc);
  }
  throw LatticeError(Errc::bad_document, "malformed expression node", e->loc);
}

Relation evaluate(const ExprPtr& e, const Catalog& c) {
  const UniversePtr& u = c.universe;
  try {
    switch (e->kind) {
      case ExprKind::name:
        return c.require(e->id, e->loc);
      case ExprKind::special:
        return special_element(u, e->code);
      case ExprKind::empty_literal:
        return empty_relation(u, resolve_attrs(e->attrs, *u, e->loc));
      case ExprKind::pred_literal: {
        Predicate p = resolve_predicate(e->pred, *u);
        return predicate_relation(u, p.attributes_in(*u), p);
      }
      case ExprKind::join:
        return natural_join(evaluate(e->left, c), evaluate(e->right, c));
      case ExprKind::unite:
        return inner_union(evaluate(e->left, c), evaluate(e->right, c));
      case ExprKind::select:
        return select(evaluate(e->left, c), resolve_predicate(e->pred, *u));
      case ExprKind::project:
        return project(evaluate(e->left, c), resolve_attrs(e->attrs, *u, e->loc));
      case ExprKind::rename_op:
        return rename(evaluate(e->left, c), {e->from, e->to});
      case ExprKind::divide_op:
        return divide(evaluate(e->left, c), evaluate(e->right, c));
      case ExprKind::minus_op:
        return difference(evaluate(e->left, c), evaluate(e->right, c));
    }
  } catch (LatticeError& err) {
    rethrow_at(err, e->loc);
  }
  throw LatticeError(Errc::bad_document, "malformed expression node", e->loc);
}

ExprPtr desugar(const ExprPtr& e, const Catalog& c) {
  switch (e->kind) {
    case ExprKind::name:
    case ExprKind::special:
    case ExprKind::empty_literal:
    case ExprKind::pred_literal:
      return e;
    case ExprKind::join:
      return make_join(desugar(e->left, c), desugar(e->right, c), e->loc);
    case ExprKind::unite:
      return make_union(desugar(e->left, c), desugar(e->right, c), e->loc);
    case ExprKind::select:
      return make_join(desugar(e->left, c), make_pred_literal(e->pred, e->loc), e->loc);
    case ExprKind::project:
      return make_union(desugar(e->left, c), make_empty_literal(e->attrs, e->loc), e->loc);
    case ExprKind::rename_op: {
      ExprPtr child = desugar(e->left, c);
      AttrSet h = infer_header(child, c);
      const Universe& u = *c.universe;
      AttrSet target = (h - AttrSet::single(u.require(e->from))) |
                       AttrSet::single(u.require(e->to));
      std::vector<std::string> names;
      target.for_each([&](std::size_t i) { names.push_back(u.name(i)); });
      PredSyntax eq{{PredAtom{e->from, Cmp::eq, e->to, false, e->loc}}};
      return make_union(make_join(child, make_pred_literal(std::move(eq), e->loc), e->loc),
                        make_empty_literal(std::move(names), e->loc), e->loc);
    }
    case ExprKind::divide_op:
      return make_divide(desugar(e->left, c), desugar(e->right, c), e->loc);
    case ExprKind::minus_op:
      return make_minus(desugar(e->left, c), desugar(e->right, c), e->loc);
  }
  return e;
}

}  // namespace rlat
