#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlat/core.hpp"

namespace rlat {

enum class Cmp { eq, ne, lt, le, gt, ge };

std::string_view cmp_text(Cmp op);
std::optional<Cmp> cmp_from_text(std::string_view text);

/// A conjunction of comparisons, each between an attribute and either a
/// constant or another attribute. Attribute/attribute comparisons other
/// than (in)equality use the value order of compare_values.
class Predicate {
 public:
  enum class Kind { attr_const, attr_attr, conjunction };

  static Predicate attr_const(std::string attr, Cmp op, Value constant);
  static Predicate attr_attr(std::string left, Cmp op, std::string right);
  static Predicate conjunction(std::vector<Predicate> conjuncts);

  Kind kind() const { return kind_; }
  const std::string& left() const { return left_; }
  Cmp op() const { return op_; }
  const Value& constant() const { return constant_; }
  const std::string& right_attr() const { return right_; }
  const std::vector<Predicate>& conjuncts() const { return conjuncts_; }

  /// Attribute names mentioned anywhere in the predicate, deduplicated,
  /// in first-mention order.
  std::vector<std::string> attributes() const;
  AttrSet attributes_in(const Universe& u) const;

  /// Display form, e.g. "x=1 & y<z". Constants that could be read as
  /// attribute names or don't lex as bare tokens are quoted.
  std::string to_text(const Universe& u) const;

  bool matches(const Universe& u, const std::vector<std::size_t>& attr_ids,
               const Tuple& t) const;

 private:
  Predicate() = default;

  Kind kind_ = Kind::attr_const;
  std::string left_;
  Cmp op_ = Cmp::eq;
  Value constant_;
  std::string right_;
  std::vector<Predicate> conjuncts_;
};

struct RenameSpec {
  std::string from;
  std::string to;
};

/// The relation a bracketed predicate denotes: all tuples of the full
/// product over `over` that satisfy `p`. `over` must cover the predicate's
/// attributes.
Relation predicate_relation(const UniversePtr& u, AttrSet over, const Predicate& p);

/// select(A, p) = A * [p]. Predicate attributes must lie in A's header.
Relation select(const Relation& a, const Predicate& p);

/// project(A, attrs) = A + [attrs] (inner union with the empty relation on
/// `attrs`); attrs must be a subset of A's header.
Relation project(const Relation& a, AttrSet attrs);
Relation project(const Relation& a, const std::vector<std::string>& attrs);

/// rename(A, from->to) = (A * [from=to]) + [target] where target replaces
/// `from` by `to` in the header. `to`'s domain must contain every value of
/// `from`'s domain.
Relation rename(const Relation& a, const RenameSpec& spec);

/// Plain set difference of same-header relations.
Relation difference(const Relation& a, const Relation& b);

/// Solves X * B = [H] and X + B = A for X. A solution exists iff B is a
/// subset of A, and is then unique; nullopt means no solution.
std::optional<Relation> difference_by_equations(const Relation& a, const Relation& b);

/// Difference of unary same-header relations computed through divide: pair
/// every A value with every renamed B value, keep the unequal pairs, and
/// divide back out. `shadow` names a helper attribute (distinct from the
/// relations' own, with a compatible domain) used for the renamed copy.
/// Matches difference() whenever B is nonempty; an empty B divides into the
/// full domain instead.
Relation difference_by_division(const Relation& a, const Relation& b, const std::string& shadow);

/// divide(A, B): tuples t over H(A)\H(B) such that for every tuple s of B,
/// t joined with s appears in A. H(B) must be a nonempty proper subset of
/// H(A). When B is empty every t qualifies vacuously, so the result is the
/// full product over the remaining attributes.
Relation divide(const Relation& a, const Relation& b);

/// Tuples t over H(A)\H(B) such that t joined with SOME tuple of B appears
/// in A; the projection counterpart of divide. Same header preconditions.
Relation finite_infimum(const Relation& a, const Relation& b);

/// Natural join restricted to disjoint headers.
Relation cross(const Relation& a, const Relation& b);

}  // namespace rlat
