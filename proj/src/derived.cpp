#include "rlat/derived.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace rlat {

std::string_view cmp_text(Cmp op) {
  switch (op) {
    case Cmp::eq: return "=";
    case Cmp::ne: return "!=";
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::gt: return ">";
    case Cmp::ge: return ">=";
  }
  return "";
}

std::optional<Cmp> cmp_from_text(std::string_view text) {
  if (text == "=") return Cmp::eq;
  if (text == "!=") return Cmp::ne;
  if (text == "<") return Cmp::lt;
  if (text == "<=") return Cmp::le;
  if (text == ">") return Cmp::gt;
  if (text == ">=") return Cmp::ge;
  return std::nullopt;
}

namespace {

bool cmp_holds(Cmp op, int c) {
  switch (op) {
    case Cmp::eq: return c == 0;
    case Cmp::ne: return c != 0;
    case Cmp::lt: return c < 0;
    case Cmp::le: return c <= 0;
    case Cmp::gt: return c > 0;
    case Cmp::ge: return c >= 0;
  }
  return false;
}

bool is_bare_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

Predicate Predicate::attr_const(std::string attr, Cmp op, Value constant) {
  Predicate p;
  p.kind_ = Kind::attr_const;
  p.left_ = std::move(attr);
  p.op_ = op;
  p.constant_ = std::move(constant);
  return p;
}

Predicate Predicate::attr_attr(std::string left, Cmp op, std::string right) {
  Predicate p;
  p.kind_ = Kind::attr_attr;
  p.left_ = std::move(left);
  p.op_ = op;
  p.right_ = std::move(right);
  return p;
}

Predicate Predicate::conjunction(std::vector<Predicate> conjuncts) {
  assert(!conjuncts.empty());
  if (conjuncts.size() == 1) return std::move(conjuncts.front());
  Predicate p;
  p.kind_ = Kind::conjunction;
  p.conjuncts_ = std::move(conjuncts);
  return p;
}

std::vector<std::string> Predicate::attributes() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  if (kind_ == Kind::conjunction) {
    for (const Predicate& c : conjuncts_) {
      for (const auto& name : c.attributes()) add(name);
    }
  } else {
    add(left_);
    if (kind_ == Kind::attr_attr) add(right_);
  }
  return out;
}

AttrSet Predicate::attributes_in(const Universe& u) const {
  AttrSet s;
  for (const auto& name : attributes()) s.set(u.require(name));
  return s;
}

std::string Predicate::to_text(const Universe& u) const {
  if (kind_ == Kind::conjunction) {
    std::string out;
    for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
      if (i) out += " & ";
      out += conjuncts_[i].to_text(u);
    }
    return out;
  }
  std::string out = left_;
  out += cmp_text(op_);
  if (kind_ == Kind::attr_attr) {
    out += right_;
  } else if (is_bare_token(constant_) && !u.find(constant_)) {
    out += constant_;
  } else {
    // Quote constants that would lex oddly or read back as attributes.
    out += '\'';
    for (char c : constant_) {
      if (c == '\'' || c == '\\') out += '\\';
      out += c;
    }
    out += '\'';
  }
  return out;
}

bool Predicate::matches(const Universe& u, const std::vector<std::size_t>& attr_ids,
                        const Tuple& t) const {
  if (kind_ == Kind::conjunction) {
    return std::all_of(conjuncts_.begin(), conjuncts_.end(),
                       [&](const Predicate& c) { return c.matches(u, attr_ids, t); });
  }
  auto value_at = [&](const std::string& name) -> const Value& {
    std::size_t ai = u.require(name);
    auto it = std::lower_bound(attr_ids.begin(), attr_ids.end(), ai);
    if (it == attr_ids.end() || *it != ai) {
      throw LatticeError(Errc::attribute_not_in_header,
                         "attribute '" + name + "' is not in the header");
    }
    return u.domain(ai)[t[static_cast<std::size_t>(it - attr_ids.begin())]];
  };
  const Value& lhs = value_at(left_);
  const Value& rhs = kind_ == Kind::attr_attr ? value_at(right_) : constant_;
  return cmp_holds(op_, compare_values(lhs, rhs));
}

Relation predicate_relation(const UniversePtr& u, AttrSet over, const Predicate& p) {
  AttrSet needed = p.attributes_in(*u);
  if (!needed.subset_of(over)) {
    throw LatticeError(Errc::attribute_not_in_header,
                       "predicate mentions attributes outside its relation's header");
  }
  std::vector<std::size_t> ids = over.indices();
  std::vector<Tuple> body;
  for_each_product_tuple(*u, over, [&](const Tuple& t) {
    if (p.matches(*u, ids, t)) body.push_back(t);
  });
  return Relation(u, over, std::move(body));
}

Relation select(const Relation& a, const Predicate& p) {
  AttrSet needed = p.attributes_in(*a.universe());
  if (!needed.subset_of(a.header())) {
    throw LatticeError(Errc::attribute_not_in_header,
                       "selection predicate mentions attributes outside the header");
  }
  return natural_join(a, predicate_relation(a.universe(), needed, p));
}

Relation project(const Relation& a, AttrSet attrs) {
  if (!attrs.subset_of(a.header())) {
    throw LatticeError(Errc::attribute_not_in_header,
                       "projection attributes are not all in the header");
  }
  return inner_union(a, empty_relation(a.universe(), attrs));
}

Relation project(const Relation& a, const std::vector<std::string>& attrs) {
  AttrSet s;
  for (const auto& name : attrs) s.set(a.universe()->require(name));
  return project(a, s);
}

Relation rename(const Relation& a, const RenameSpec& spec) {
  const UniversePtr& u = a.universe();
  std::size_t from = u->require(spec.from);
  std::size_t to = u->require(spec.to);
  if (!a.header().test(from)) {
    throw LatticeError(Errc::attribute_not_in_header,
                       "attribute '" + spec.from + "' is not in the header");
  }
  if (a.header().test(to)) {
    throw LatticeError(Errc::target_attribute_collision,
                       "attribute '" + spec.to + "' is already in the header");
  }
  for (const Value& v : u->domain(from)) {
    if (!u->find_value(to, v)) {
      throw LatticeError(Errc::domain_mismatch, "domain of '" + spec.to +
                                                    "' is missing value '" + v +
                                                    "' of '" + spec.from + "'");
    }
  }
  AttrSet pair = AttrSet::single(from).set(to);
  Relation eq = predicate_relation(u, pair, Predicate::attr_attr(spec.from, Cmp::eq, spec.to));
  AttrSet target = (a.header() - AttrSet::single(from)) | AttrSet::single(to);
  return inner_union(natural_join(a, eq), empty_relation(u, target));
}

namespace {

void check_same_header(const Relation& a, const Relation& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw LatticeError(Errc::universe_mismatch, "relations belong to different universes");
  }
  if (a.header() != b.header()) {
    throw LatticeError(Errc::header_mismatch, "relations have different headers");
  }
}

}  // namespace

Relation difference(const Relation& a, const Relation& b) {
  check_same_header(a, b);
  const Universe& u = *a.universe();
  AttrSet h = a.header();
  std::vector<Tuple> body;
  std::set_difference(a.body().begin(), a.body().end(), b.body().begin(), b.body().end(),
                      std::back_inserter(body), [&](const Tuple& x, const Tuple& y) {
                        return compare_tuples(u, h, x, y) < 0;
                      });
  return Relation(a.universe(), h, std::move(body));
}

std::optional<Relation> difference_by_equations(const Relation& a, const Relation& b) {
  check_same_header(a, b);
  // If X * B = [H] and X + B = A have a solution it can only be A minus B:
  // the first equation forces X and B disjoint, the second X = A \ B.
  Relation x = difference(a, b);
  if (natural_join(x, b) != empty_relation(a.universe(), a.header())) return std::nullopt;
  if (inner_union(x, b) != a) return std::nullopt;
  return x;
}

Relation divide(const Relation& a, const Relation& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw LatticeError(Errc::universe_mismatch, "relations belong to different universes");
  }
  if (b.header().empty()) {
    throw LatticeError(Errc::empty_divisor_header, "divisor header is empty");
  }
  if (!b.header().proper_subset_of(a.header())) {
    throw LatticeError(Errc::header_not_proper_subset,
                       "divisor header must be a proper subset of the dividend header");
  }
  const UniversePtr& u = a.universe();
  AttrSet rest = a.header() - b.header();
  // Intersect the per-divisor-tuple sections; with no divisor tuples this is
  // the empty intersection, i.e. the full product.
  Relation result = full_relation(u, rest);
  for (const Tuple& tb : b.body()) {
    Relation single(u, b.header(), {tb});
    Relation section = inner_union(natural_join(a, single), empty_relation(u, rest));
    result = natural_join(result, section);
  }
  return result;
}

Relation finite_infimum(const Relation& a, const Relation& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw LatticeError(Errc::universe_mismatch, "relations belong to different universes");
  }
  if (b.header().empty()) {
    throw LatticeError(Errc::empty_divisor_header, "divisor header is empty");
  }
  if (!b.header().proper_subset_of(a.header())) {
    throw LatticeError(Errc::header_not_proper_subset,
                       "divisor header must be a proper subset of the dividend header");
  }
  return project(natural_join(a, b), a.header() - b.header());
}

Relation difference_by_division(const Relation& a, const Relation& b,
                                const std::string& shadow) {
  check_same_header(a, b);
  if (a.arity() != 1) {
    throw LatticeError(Errc::unary_relation_required,
                       "division-based difference needs unary relations");
  }
  const UniversePtr& u = a.universe();
  std::size_t attr = a.header().indices().front();
  Relation c = rename(b, {u->name(attr), shadow});
  Relation pairs = natural_join(a, c);
  Relation kept = select(pairs, Predicate::attr_attr(u->name(attr), Cmp::ne, shadow));
  return divide(kept, c);
}

Relation cross(const Relation& a, const Relation& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw LatticeError(Errc::universe_mismatch, "relations belong to different universes");
  }
  if (a.header().intersects(b.header())) {
    throw LatticeError(Errc::overlapping_headers, "cross factors share attributes");
  }
  return natural_join(a, b);
}

}  // namespace rlat
