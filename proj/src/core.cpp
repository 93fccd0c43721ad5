#include "rlat/core.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace rlat {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::unknown_attribute: return "UnknownAttribute";
    case Errc::duplicate_attribute: return "DuplicateAttribute";
    case Errc::tuple_header_mismatch: return "TupleHeaderMismatch";
    case Errc::value_outside_domain: return "ValueOutsideDomain";
    case Errc::universe_mismatch: return "UniverseMismatch";
    case Errc::header_mismatch: return "HeaderMismatch";
    case Errc::attribute_not_in_header: return "AttributeNotInHeader";
    case Errc::target_attribute_collision: return "TargetAttributeCollision";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::header_not_proper_subset: return "HeaderNotProperSubset";
    case Errc::empty_divisor_header: return "EmptyDivisorHeader";
    case Errc::unary_relation_required: return "UnaryRelationRequired";
    case Errc::overlapping_headers: return "OverlappingHeaders";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::unresolved_name: return "UnresolvedName";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::rule_not_applicable: return "RuleNotApplicable";
    case Errc::universe_too_large: return "UniverseTooLarge";
    case Errc::bad_document: return "BadDocument";
  }
  return "UnknownError";
}

namespace {

std::optional<long long> parse_int(const Value& s) {
  if (s.empty()) return std::nullopt;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;  // from_chars accepts '-' but not '+'
  long long v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v, 10);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

}  // namespace

int compare_values(const Value& a, const Value& b) {
  auto na = parse_int(a);
  auto nb = parse_int(b);
  if (na && nb && *na != *nb) return *na < *nb ? -1 : 1;
  int c = a.compare(b);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

Universe::Universe(std::vector<AttrDecl> attributes) {
  if (attributes.size() > AttrSet::kMaxAttrs) {
    throw LatticeError(Errc::universe_too_large,
                       "universe has " + std::to_string(attributes.size()) +
                           " attributes, limit is " + std::to_string(AttrSet::kMaxAttrs));
  }
  names_.reserve(attributes.size());
  domains_.reserve(attributes.size());
  for (auto& [name, domain] : attributes) {
    if (name.empty()) {
      throw LatticeError(Errc::bad_document, "empty attribute name");
    }
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
      throw LatticeError(Errc::duplicate_attribute, "duplicate attribute '" + name + "'");
    }
    if (domain.empty()) {
      throw LatticeError(Errc::bad_document, "attribute '" + name + "' has an empty domain");
    }
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i].empty()) {
        throw LatticeError(Errc::bad_document,
                           "attribute '" + name + "' has an empty value token");
      }
      for (std::size_t j = i + 1; j < domain.size(); ++j) {
        if (domain[i] == domain[j]) {
          throw LatticeError(Errc::bad_document, "attribute '" + name +
                                                     "' lists value '" + domain[i] +
                                                     "' twice");
        }
      }
    }
    names_.push_back(std::move(name));
    domains_.push_back(std::move(domain));
  }

  ranks_.resize(domains_.size());
  for (std::size_t ai = 0; ai < domains_.size(); ++ai) {
    const auto& dom = domains_[ai];
    std::vector<std::uint32_t> order(dom.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      return value_less(dom[x], dom[y]);
    });
    ranks_[ai].resize(dom.size());
    for (std::size_t r = 0; r < order.size(); ++r) ranks_[ai][order[r]] = r;
  }

  name_order_.resize(names_.size());
  std::iota(name_order_.begin(), name_order_.end(), std::size_t{0});
  std::sort(name_order_.begin(), name_order_.end(),
            [&](std::size_t x, std::size_t y) { return names_[x] < names_[y]; });
}

std::optional<std::size_t> Universe::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Universe::require(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw LatticeError(Errc::unknown_attribute,
                     "unknown attribute '" + std::string(name) + "'");
}

std::vector<std::size_t> Universe::name_sorted(AttrSet attrs) const {
  // Positions are relative to a tuple laid out in ascending attribute index.
  std::vector<std::size_t> ids = attrs.indices();
  std::vector<std::size_t> pos(ids.size());
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::sort(pos.begin(), pos.end(),
            [&](std::size_t x, std::size_t y) { return names_[ids[x]] < names_[ids[y]]; });
  return pos;
}

std::optional<std::uint32_t> Universe::find_value(std::size_t ai, const Value& v) const {
  const auto& dom = domains_[ai];
  for (std::uint32_t i = 0; i < dom.size(); ++i) {
    if (dom[i] == v) return i;
  }
  return std::nullopt;
}

std::uint32_t Universe::value_index(std::size_t ai, const Value& v) const {
  if (auto i = find_value(ai, v)) return *i;
  throw LatticeError(Errc::value_outside_domain, "value '" + v + "' is not in the domain of '" +
                                                     names_[ai] + "'");
}

std::size_t Universe::product_size(AttrSet attrs, std::size_t cap) const {
  std::size_t n = 1;
  bool over = false;
  attrs.for_each([&](std::size_t i) {
    std::size_t d = domains_[i].size();
    if (n > cap / d) over = true;
    n *= d;
  });
  if (over || n > cap) {
    throw LatticeError(Errc::universe_too_large,
                       "domain product exceeds cap of " + std::to_string(cap));
  }
  return n;
}

int compare_tuples(const Universe& u, AttrSet header, const Tuple& a, const Tuple& b) {
  std::vector<std::size_t> ids = header.indices();
  for (std::size_t p : u.name_sorted(header)) {
    std::size_t ai = ids[p];
    std::size_t ra = u.rank(ai, a[p]);
    std::size_t rb = u.rank(ai, b[p]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  return 0;
}

Relation::Relation(UniversePtr u, AttrSet header, std::vector<Tuple> body)
    : universe_(std::move(u)), header_(header), body_(std::move(body)) {
  assert(universe_);
  attr_ids_ = header_.indices();
  name_positions_ = universe_->name_sorted(header_);

  const Universe& uni = *universe_;
  auto less = [&](const Tuple& a, const Tuple& b) {
    for (std::size_t p : name_positions_) {
      std::size_t ai = attr_ids_[p];
      std::size_t ra = uni.rank(ai, a[p]);
      std::size_t rb = uni.rank(ai, b[p]);
      if (ra != rb) return ra < rb;
    }
    return false;
  };
  std::sort(body_.begin(), body_.end(), less);
  body_.erase(std::unique(body_.begin(), body_.end()), body_.end());
}

bool Relation::contains(const Tuple& t) const {
  const Universe& uni = *universe_;
  auto less = [&](const Tuple& a, const Tuple& b) {
    for (std::size_t p : name_positions_) {
      std::size_t ai = attr_ids_[p];
      std::size_t ra = uni.rank(ai, a[p]);
      std::size_t rb = uni.rank(ai, b[p]);
      if (ra != rb) return ra < rb;
    }
    return false;
  };
  return std::binary_search(body_.begin(), body_.end(), t, less);
}

std::vector<std::string> Relation::header_names() const {
  std::vector<std::string> out;
  out.reserve(attr_ids_.size());
  for (std::size_t p : name_positions_) out.push_back(universe_->name(attr_ids_[p]));
  return out;
}

const Value& Relation::value_of(const Tuple& t, std::size_t attr) const {
  auto it = std::lower_bound(attr_ids_.begin(), attr_ids_.end(), attr);
  assert(it != attr_ids_.end() && *it == attr);
  return universe_->domain(attr)[t[static_cast<std::size_t>(it - attr_ids_.begin())]];
}

bool Relation::operator==(const Relation& o) const {
  return header_ == o.header_ && body_ == o.body_ && same_universe(universe_, o.universe_);
}

std::string Relation::to_text() const {
  std::ostringstream out;
  if (header_.empty()) {
    return body_.empty() ? "00" : "01";
  }
  if (body_.empty()) {
    out << '[';
    bool first = true;
    for (std::size_t p : name_positions_) {
      if (!first) out << ' ';
      first = false;
      out << universe_->name(attr_ids_[p]);
    }
    out << ']';
    return out.str();
  }
  out << '{';
  bool first_tuple = true;
  for (const Tuple& t : body_) {
    if (!first_tuple) out << ", ";
    first_tuple = false;
    bool first = true;
    for (std::size_t p : name_positions_) {
      if (!first) out << ' ';
      first = false;
      std::size_t ai = attr_ids_[p];
      out << universe_->name(ai) << ':' << universe_->domain(ai)[t[p]];
    }
  }
  out << '}';
  return out.str();
}

Relation make_relation(const UniversePtr& u, const std::vector<std::string>& header,
                       const std::vector<std::vector<Value>>& rows) {
  AttrSet attrs;
  std::vector<std::size_t> ids;
  ids.reserve(header.size());
  for (const auto& name : header) {
    std::size_t i = u->require(name);
    if (attrs.test(i)) {
      throw LatticeError(Errc::duplicate_attribute,
                         "attribute '" + name + "' appears twice in the header");
    }
    attrs.set(i);
    ids.push_back(i);
  }

  // Column positions in the canonical (ascending index) layout.
  std::vector<std::size_t> slot(ids.size());
  {
    std::vector<std::size_t> sorted = attrs.indices();
    for (std::size_t c = 0; c < ids.size(); ++c) {
      slot[c] = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), ids[c]) - sorted.begin());
    }
  }

  std::vector<Tuple> body;
  body.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw LatticeError(Errc::tuple_header_mismatch,
                         "tuple has " + std::to_string(row.size()) + " values, header has " +
                             std::to_string(header.size()));
    }
    Tuple t(header.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      t[slot[c]] = u->value_index(ids[c], row[c]);
    }
    body.push_back(std::move(t));
  }
  return Relation(u, attrs, std::move(body));
}

Relation empty_relation(const UniversePtr& u, AttrSet header) {
  return Relation(u, header, {});
}

void for_each_product_tuple(const Universe& u, AttrSet attrs,
                            const std::function<void(const Tuple&)>& f) {
  std::vector<std::size_t> ids = attrs.indices();
  if (ids.empty()) {
    f(Tuple{});
    return;
  }
  // Iterate name-ordered attributes with value ranks as odometer digits, the
  // last (name-wise) attribute fastest, so tuples come out in canonical
  // order.
  std::vector<std::size_t> order = u.name_sorted(attrs);
  std::vector<std::vector<std::uint32_t>> by_rank(ids.size());
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const auto& dom = u.domain(ids[p]);
    by_rank[p].resize(dom.size());
    for (std::uint32_t vi = 0; vi < dom.size(); ++vi) {
      by_rank[p][u.rank(ids[p], vi)] = vi;
    }
  }
  std::vector<std::size_t> digit(ids.size(), 0);
  Tuple t(ids.size());
  for (;;) {
    for (std::size_t d = 0; d < order.size(); ++d) {
      std::size_t p = order[d];
      t[p] = by_rank[p][digit[d]];
    }
    f(t);
    std::size_t d = order.size();
    while (d > 0) {
      --d;
      std::size_t p = order[d];
      if (++digit[d] < by_rank[p].size()) break;
      digit[d] = 0;
      if (d == 0) return;
    }
  }
}

Relation full_relation(const UniversePtr& u, AttrSet attrs) {
  std::vector<Tuple> body;
  body.reserve(u->product_size(attrs, std::size_t{1} << 30));
  for_each_product_tuple(*u, attrs, [&](const Tuple& t) { body.push_back(t); });
  return Relation(u, attrs, std::move(body));
}

std::string_view special_name(SpecialCode code) {
  switch (code) {
    case SpecialCode::empty_00: return "00";
    case SpecialCode::unit_01: return "01";
    case SpecialCode::top_10: return "10";
    case SpecialCode::universal_11: return "11";
  }
  return "";
}

std::optional<SpecialCode> special_from_name(std::string_view name) {
  if (name == "00") return SpecialCode::empty_00;
  if (name == "01") return SpecialCode::unit_01;
  if (name == "10") return SpecialCode::top_10;
  if (name == "11") return SpecialCode::universal_11;
  return std::nullopt;
}

Relation special_element(const UniversePtr& u, SpecialCode code) {
  switch (code) {
    case SpecialCode::empty_00: return Relation(u, AttrSet{}, {});
    case SpecialCode::unit_01: return Relation(u, AttrSet{}, {Tuple{}});
    case SpecialCode::top_10: return Relation(u, u->all(), {});
    case SpecialCode::universal_11: return full_relation(u, u->all());
  }
  throw LatticeError(Errc::bad_document, "bad special element");
}

namespace {

void check_universes(const Relation& a, const Relation& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw LatticeError(Errc::universe_mismatch, "relations belong to different universes");
  }
}

Tuple extract(const Tuple& t, const std::vector<std::size_t>& positions) {
  Tuple out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = t[positions[i]];
  return out;
}

// Positions of `wanted` within a tuple over `header` (ascending layout).
std::vector<std::size_t> positions_of(AttrSet header, AttrSet wanted) {
  std::vector<std::size_t> out;
  out.reserve(wanted.count());
  std::size_t pos = 0;
  header.for_each([&](std::size_t i) {
    if (wanted.test(i)) out.push_back(pos);
    ++pos;
  });
  return out;
}

}  // namespace

Relation natural_join(const Relation& a, const Relation& b) {
  check_universes(a, b);
  const UniversePtr& u = a.universe();
  AttrSet ha = a.header();
  AttrSet hb = b.header();
  AttrSet shared = ha & hb;
  AttrSet out_attrs = ha | hb;

  std::vector<std::size_t> key_a = positions_of(ha, shared);
  std::vector<std::size_t> key_b = positions_of(hb, shared);

  // Group b's tuples by shared-attribute key. std::map keeps this
  // deterministic; bodies here are small.
  std::map<Tuple, std::vector<const Tuple*>> groups;
  for (const Tuple& t : b.body()) {
    groups[extract(t, key_b)].push_back(&t);
  }

  // Where each output slot comes from: a-position, or b-position offset.
  std::vector<std::size_t> ids_a = ha.indices();
  std::vector<std::size_t> ids_b = hb.indices();
  struct Source {
    bool from_a;
    std::size_t pos;
  };
  std::vector<Source> sources;
  sources.reserve(out_attrs.count());
  out_attrs.for_each([&](std::size_t i) {
    if (ha.test(i)) {
      auto it = std::lower_bound(ids_a.begin(), ids_a.end(), i);
      sources.push_back({true, static_cast<std::size_t>(it - ids_a.begin())});
    } else {
      auto it = std::lower_bound(ids_b.begin(), ids_b.end(), i);
      sources.push_back({false, static_cast<std::size_t>(it - ids_b.begin())});
    }
  });

  std::vector<Tuple> body;
  for (const Tuple& ta : a.body()) {
    auto it = groups.find(extract(ta, key_a));
    if (it == groups.end()) continue;
    for (const Tuple* tb : it->second) {
      Tuple t(sources.size());
      for (std::size_t i = 0; i < sources.size(); ++i) {
        t[i] = sources[i].from_a ? ta[sources[i].pos] : (*tb)[sources[i].pos];
      }
      body.push_back(std::move(t));
    }
  }
  return Relation(u, out_attrs, std::move(body));
}

Relation restrict_to(const Relation& a, AttrSet attrs) {
  if (!attrs.subset_of(a.header())) {
    throw LatticeError(Errc::attribute_not_in_header,
                       "restriction attributes are not all in the header");
  }
  std::vector<std::size_t> keep = positions_of(a.header(), attrs);
  std::vector<Tuple> body;
  body.reserve(a.size());
  for (const Tuple& t : a.body()) body.push_back(extract(t, keep));
  return Relation(a.universe(), attrs, std::move(body));
}

Relation inner_union(const Relation& a, const Relation& b) {
  check_universes(a, b);
  AttrSet common = a.header() & b.header();
  Relation pa = restrict_to(a, common);
  Relation pb = restrict_to(b, common);
  std::vector<Tuple> body = pa.body();
  body.insert(body.end(), pb.body().begin(), pb.body().end());
  return Relation(a.universe(), common, std::move(body));
}

bool leq(const Relation& a, const Relation& b) {
  check_universes(a, b);
  return natural_join(a, b) == b;
}

std::pair<Relation, Relation> decompose(const Relation& a) {
  const UniversePtr& u = a.universe();
  return {natural_join(a, special_element(u, SpecialCode::empty_00)),
          natural_join(a, special_element(u, SpecialCode::universal_11))};
}

}  // namespace rlat
