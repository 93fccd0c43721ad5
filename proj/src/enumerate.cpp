#include "rlat/enumerate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rlat {

namespace {

std::vector<std::string> sorted_names(const Universe& u, AttrSet attrs) {
  std::vector<std::string> out;
  out.reserve(attrs.count());
  attrs.for_each([&](std::size_t i) { out.push_back(u.name(i)); });
  std::sort(out.begin(), out.end());
  return out;
}

// b == a * b, specialized to avoid materializing the join: requires the
// header to grow and every b tuple to restrict into a.
bool leq_fast(const Relation& a, const Relation& b) {
  if (!a.header().subset_of(b.header())) return false;
  Relation dropped = restrict_to(b, a.header());
  const Universe& u = *a.universe();
  AttrSet h = a.header();
  return std::includes(a.body().begin(), a.body().end(), dropped.body().begin(),
                       dropped.body().end(), [&](const Tuple& x, const Tuple& y) {
                         return compare_tuples(u, h, x, y) < 0;
                       });
}

}  // namespace

std::size_t lattice_size(const Universe& u, std::size_t cap) {
  std::size_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u.size()); ++mask) {
    AttrSet attrs = AttrSet::from_bits(mask);
    std::size_t product = u.product_size(attrs, 63);
    std::size_t count = std::size_t{1} << product;
    if (count > cap - total) {
      throw LatticeError(Errc::universe_too_large,
                         "lattice exceeds enumeration cap of " + std::to_string(cap));
    }
    total += count;
  }
  return total;
}

std::vector<Relation> all_relations(const UniversePtr& u, std::size_t cap) {
  lattice_size(*u, cap);

  std::vector<AttrSet> headers;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u->size()); ++mask) {
    headers.push_back(AttrSet::from_bits(mask));
  }
  std::sort(headers.begin(), headers.end(), [&](AttrSet a, AttrSet b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return sorted_names(*u, a) < sorted_names(*u, b);
  });

  std::vector<Relation> out;
  for (AttrSet h : headers) {
    std::vector<Tuple> tuples;
    for_each_product_tuple(*u, h, [&](const Tuple& t) { tuples.push_back(t); });
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tuples.size()); ++mask) {
      std::vector<Tuple> body;
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        if ((mask >> i) & 1) body.push_back(tuples[i]);
      }
      out.emplace_back(u, h, std::move(body));
    }
  }
  return out;
}

std::optional<std::uint32_t> LatticeGraph::index_of(const Relation& r) const {
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == r) return i;
  }
  return std::nullopt;
}

LatticeGraph enumerate_lattice(const UniversePtr& u, std::size_t cap) {
  LatticeGraph g;
  g.universe = u;
  g.elements = all_relations(u, cap);

  Relation specials[4] = {
      special_element(u, SpecialCode::empty_00), special_element(u, SpecialCode::unit_01),
      special_element(u, SpecialCode::top_10), special_element(u, SpecialCode::universal_11)};
  for (const Relation& r : g.elements) {
    std::string label = r.to_text();
    for (int s = 0; s < 4; ++s) {
      if (r == specials[s]) label = special_name(static_cast<SpecialCode>(s));
    }
    g.labels.push_back(std::move(label));
  }

  std::size_t n = g.elements.size();
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      less[i][j] = i != j && leq_fast(g.elements[i], g.elements[j]);
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!less[i][j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) {
        if (less[i][k] && less[k][j]) direct = false;
      }
      if (direct) g.covers.emplace_back(i, j);
    }
  }
  std::sort(g.covers.begin(), g.covers.end());
  return g;
}

std::string export_dot(const LatticeGraph& g) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
    return out;
  };
  std::ostringstream dot;
  dot << "digraph lattice {\n";
  dot << "  rankdir=BT;\n";
  dot << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    dot << "  n" << i << " [label=" << quote(g.labels[i]) << "];\n";
  }
  for (const auto& [lo, hi] : g.covers) {
    dot << "  n" << lo << " -> n" << hi << ";\n";
  }
  dot << "}\n";
  return dot.str();
}

SublatticeReport verify_boolean_sublattice(const LatticeGraph& g, std::string name,
                                           std::vector<std::uint32_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < g.elements.size(); ++i) {
    index[g.elements[i].to_text()] = i;
  }
  auto find = [&](const Relation& r) { return index.at(r.to_text()); };
  auto member = [&](std::uint32_t i) {
    return std::binary_search(members.begin(), members.end(), i);
  };

  SublatticeReport rep;
  rep.name = std::move(name);
  rep.members = members;
  rep.closed_under_join = true;
  rep.closed_under_union = true;

  // The bounds of the sublattice: fold of all members under each operation.
  Relation bottom = g.elements[members.front()];
  Relation top = bottom;
  for (std::size_t i = 1; i < members.size(); ++i) {
    bottom = inner_union(bottom, g.elements[members[i]]);
    top = natural_join(top, g.elements[members[i]]);
  }
  rep.bottom = find(bottom);
  rep.top = find(top);

  for (std::uint32_t i : members) {
    for (std::uint32_t j : members) {
      if (!member(find(natural_join(g.elements[i], g.elements[j])))) {
        rep.closed_under_join = false;
      }
      if (!member(find(inner_union(g.elements[i], g.elements[j])))) {
        rep.closed_under_union = false;
      }
    }
  }

  rep.distributive = true;
  for (std::uint32_t i : members) {
    for (std::uint32_t j : members) {
      for (std::uint32_t k : members) {
        const Relation& a = g.elements[i];
        const Relation& b = g.elements[j];
        const Relation& c = g.elements[k];
        if (natural_join(a, inner_union(b, c)) !=
            inner_union(natural_join(a, b), natural_join(a, c))) {
          rep.distributive = false;
        }
        if (inner_union(a, natural_join(b, c)) !=
            natural_join(inner_union(a, b), inner_union(a, c))) {
          rep.distributive = false;
        }
      }
    }
  }

  rep.complemented = true;
  for (std::uint32_t i : members) {
    bool found = false;
    for (std::uint32_t j : members) {
      if (natural_join(g.elements[i], g.elements[j]) == top &&
          inner_union(g.elements[i], g.elements[j]) == bottom) {
        found = true;
        break;
      }
    }
    if (!found) rep.complemented = false;
  }
  return rep;
}

std::vector<SublatticeReport> standard_sublattices(const LatticeGraph& g) {
  const UniversePtr& u = g.universe;
  std::vector<SublatticeReport> out;

  auto collect = [&](const std::string& name, auto&& pred) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < g.elements.size(); ++i) {
      if (pred(g.elements[i])) members.push_back(i);
    }
    out.push_back(verify_boolean_sublattice(g, name, std::move(members)));
  };

  collect("powerset-full-header", [&](const Relation& r) { return r.header() == u->all(); });
  for (std::size_t a = 0; a < u->size(); ++a) {
    collect("powerset-" + u->name(a),
            [&](const Relation& r) { return r.header() == AttrSet::single(a); });
  }
  collect("empty-relations", [&](const Relation& r) { return r.empty(); });

  {
    std::vector<std::uint32_t> members;
    members.push_back(*g.index_of(special_element(u, SpecialCode::unit_01)));
    for (std::size_t a = 0; a < u->size(); ++a) {
      members.push_back(*g.index_of(full_relation(u, AttrSet::single(a))));
    }
    members.push_back(*g.index_of(special_element(u, SpecialCode::universal_11)));
    out.push_back(verify_boolean_sublattice(g, "unit-domains", std::move(members)));
  }

  {
    std::vector<std::uint32_t> members;
    for (int s = 0; s < 4; ++s) {
      members.push_back(*g.index_of(special_element(u, static_cast<SpecialCode>(s))));
    }
    out.push_back(verify_boolean_sublattice(g, "special-diamond", std::move(members)));
  }
  return out;
}

std::optional<std::array<std::uint32_t, 3>> find_nondistributive_triple(const LatticeGraph& g) {
  for (std::uint32_t i = 0; i < g.elements.size(); ++i) {
    for (std::uint32_t j = 0; j < g.elements.size(); ++j) {
      for (std::uint32_t k = 0; k < g.elements.size(); ++k) {
        const Relation& a = g.elements[i];
        Relation lhs = natural_join(a, inner_union(g.elements[j], g.elements[k]));
        Relation rhs =
            inner_union(natural_join(a, g.elements[j]), natural_join(a, g.elements[k]));
        if (lhs != rhs) return std::array<std::uint32_t, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace rlat
