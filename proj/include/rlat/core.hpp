#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlat/errors.hpp"

namespace rlat {

/// A domain element. Tokens compare numerically when both sides parse as
/// base-10 64-bit integers; everything else (and numeric ties, so that
/// "012" and "12" stay distinct) falls back to byte order. The result is a
/// total order where compare_values(a, b) == 0 iff a == b.
using Value = std::string;

int compare_values(const Value& a, const Value& b);

inline bool value_less(const Value& a, const Value& b) {
  return compare_values(a, b) < 0;
}

/// Subset of a universe's attributes, stored as a bitmask over attribute
/// indices. Universes are capped at 64 attributes.
class AttrSet {
 public:
  static constexpr std::size_t kMaxAttrs = 64;

  AttrSet() = default;

  static AttrSet single(std::size_t i) { return AttrSet().set(i); }
  static AttrSet first_n(std::size_t n) {
    AttrSet s;
    s.bits_ = n >= kMaxAttrs ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return s;
  }

  bool test(std::size_t i) const { return (bits_ >> i) & 1; }
  AttrSet& set(std::size_t i) {
    bits_ |= std::uint64_t{1} << i;
    return *this;
  }
  AttrSet& reset(std::size_t i) {
    bits_ &= ~(std::uint64_t{1} << i);
    return *this;
  }

  std::size_t count() const { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
  bool empty() const { return bits_ == 0; }

  AttrSet operator|(AttrSet o) const { return from_bits(bits_ | o.bits_); }
  AttrSet operator&(AttrSet o) const { return from_bits(bits_ & o.bits_); }
  AttrSet operator-(AttrSet o) const { return from_bits(bits_ & ~o.bits_); }

  bool subset_of(AttrSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool proper_subset_of(AttrSet o) const { return subset_of(o) && bits_ != o.bits_; }
  bool intersects(AttrSet o) const { return (bits_ & o.bits_) != 0; }

  bool operator==(const AttrSet&) const = default;

  /// Calls f with each member index in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    std::uint64_t b = bits_;
    while (b) {
      std::size_t i = static_cast<std::size_t>(__builtin_ctzll(b));
      f(i);
      b &= b - 1;
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::uint64_t bits() const { return bits_; }
  static AttrSet from_bits(std::uint64_t bits) {
    AttrSet s;
    s.bits_ = bits;
    return s;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// The fixed, finite attribute space every relation lives in. Attributes keep
/// their declaration order (it is significant for serialization); each
/// attribute has a finite, duplicate-free domain of values.
class Universe {
 public:
  using AttrDecl = std::pair<std::string, std::vector<Value>>;

  explicit Universe(std::vector<AttrDecl> attributes);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<Value>& domain(std::size_t i) const { return domains_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Like find() but throws Errc::unknown_attribute.
  std::size_t require(std::string_view name) const;

  AttrSet all() const { return AttrSet::first_n(size()); }

  /// Attribute indices ordered by attribute name.
  const std::vector<std::size_t>& name_order() const { return name_order_; }

  /// Positions of `attrs` iterated in name order; used for canonical tuple
  /// comparison and display.
  std::vector<std::size_t> name_sorted(AttrSet attrs) const;

  /// Rank of domain value `vi` of attribute `ai` under the value order.
  std::size_t rank(std::size_t ai, std::uint32_t vi) const { return ranks_[ai][vi]; }

  std::optional<std::uint32_t> find_value(std::size_t ai, const Value& v) const;
  /// Like find_value() but throws Errc::value_outside_domain.
  std::uint32_t value_index(std::size_t ai, const Value& v) const;

  /// Number of tuples in the full product over `attrs`; throws
  /// Errc::universe_too_large if it exceeds `cap`.
  std::size_t product_size(AttrSet attrs, std::size_t cap) const;

  bool operator==(const Universe& o) const {
    return names_ == o.names_ && domains_ == o.domains_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Value>> domains_;
  std::vector<std::vector<std::size_t>> ranks_;
  std::vector<std::size_t> name_order_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// One tuple, as domain-value indices aligned with the owning relation's
/// header in ascending attribute-index order.
using Tuple = std::vector<std::uint32_t>;

/// Compares tuples over `header` componentwise, visiting attributes in name
/// order and values by their domain rank.
int compare_tuples(const Universe& u, AttrSet header, const Tuple& a, const Tuple& b);

/// An immutable finite relation: a header (attribute subset) plus a set of
/// tuples over exactly those attributes. The body is kept sorted in canonical
/// order and duplicate-free, so structural equality is plain comparison.
class Relation {
 public:
  Relation(UniversePtr u, AttrSet header, std::vector<Tuple> body);

  const UniversePtr& universe() const { return universe_; }
  AttrSet header() const { return header_; }
  const std::vector<Tuple>& body() const { return body_; }

  std::size_t arity() const { return header_.count(); }
  std::size_t size() const { return body_.size(); }
  bool empty() const { return body_.empty(); }
  bool contains(const Tuple& t) const;

  /// Header attribute names, sorted by name.
  std::vector<std::string> header_names() const;

  /// Positions within a tuple visited in attribute-name order.
  const std::vector<std::size_t>& name_positions() const { return name_positions_; }

  /// Value token of tuple `t` for attribute index `attr` (must be in the
  /// header).
  const Value& value_of(const Tuple& t, std::size_t attr) const;

  bool operator==(const Relation& o) const;
  bool operator!=(const Relation& o) const { return !(*this == o); }

  /// Display form: "00"/"01" for the empty header, "[x y]" for an empty
  /// body, "{x:1 y:a, x:2 y:b}" otherwise.
  std::string to_text() const;

 private:
  UniversePtr universe_;
  AttrSet header_;
  std::vector<Tuple> body_;
  std::vector<std::size_t> attr_ids_;        // header indices, ascending
  std::vector<std::size_t> name_positions_;  // tuple positions in name order
};

/// Builds a relation from attribute names and value tokens. `header` gives
/// the column order of `rows`; it need not be sorted. Rejects unknown or
/// duplicate attributes, rows of the wrong width, and values outside the
/// attribute's domain. Duplicate rows collapse.
Relation make_relation(const UniversePtr& u, const std::vector<std::string>& header,
                       const std::vector<std::vector<Value>>& rows);

Relation empty_relation(const UniversePtr& u, AttrSet header);

/// Full domain product over `attrs`.
Relation full_relation(const UniversePtr& u, AttrSet attrs);

/// The four distinguished elements: 00 = (empty header, empty body),
/// 01 = (empty header, the empty tuple), 10 = (all attributes, empty body),
/// 11 = (all attributes, full product).
enum class SpecialCode { empty_00, unit_01, top_10, universal_11 };

std::string_view special_name(SpecialCode code);
std::optional<SpecialCode> special_from_name(std::string_view name);
Relation special_element(const UniversePtr& u, SpecialCode code);

/// Natural join: header is the union, body keeps tuples whose restrictions
/// to both inputs appear there.
Relation natural_join(const Relation& a, const Relation& b);

/// Inner union: header is the intersection, body is the union of both
/// bodies restricted to it.
Relation inner_union(const Relation& a, const Relation& b);

/// Column restriction of `a` onto `attrs` (must be a subset of the header).
/// This is the raw projection both inner_union and the derived project
/// reduce to.
Relation restrict_to(const Relation& a, AttrSet attrs);

/// Lattice order: a <= b iff b == natural_join(a, b). Note the bottom is
/// 01 and relations with more tuples sit lower, not higher.
bool leq(const Relation& a, const Relation& b);

/// Splits `a` into (a * 00, a * 11): an empty relation carrying the header
/// and a header-free carrier of the content. Inner-unioning the two parts
/// gives back `a`.
std::pair<Relation, Relation> decompose(const Relation& a);

/// Calls f(tuple) for every tuple of the full product over `attrs`, in
/// canonical order.
void for_each_product_tuple(const Universe& u, AttrSet attrs,
                            const std::function<void(const Tuple&)>& f);

}  // namespace rlat
