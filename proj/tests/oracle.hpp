#pragma once

// Brute-force reference implementations the tests check the engine against.
// Everything works on plain string maps and sets, enumerates candidate rows
// from the domains directly, and stays away from the library's algorithms;
// only data accessors are used to convert a Relation for comparison.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rlat/core.hpp"

namespace oracle {

using Row = std::map<std::string, std::string>;
using Domains = std::map<std::string, std::vector<std::string>>;

struct ORel {
  std::set<std::string> header;
  std::set<Row> rows;

  bool operator==(const ORel&) const = default;
};

inline ORel from_relation(const rlat::Relation& r) {
  ORel out;
  const auto ids = r.header().indices();
  for (std::size_t i : ids) out.header.insert(r.universe()->name(i));
  for (const rlat::Tuple& t : r.body()) {
    Row row;
    for (std::size_t p = 0; p < ids.size(); ++p) {
      row[r.universe()->name(ids[p])] = r.universe()->domain(ids[p])[t[p]];
    }
    out.rows.insert(std::move(row));
  }
  return out;
}

inline Domains domains_of(const rlat::Universe& u) {
  Domains out;
  for (std::size_t i = 0; i < u.size(); ++i) out[u.name(i)] = u.domain(i);
  return out;
}

inline Row restrict_row(const Row& r, const std::set<std::string>& header) {
  Row out;
  for (const auto& name : header) out[name] = r.at(name);
  return out;
}

inline bool rows_agree(const Row& a, const Row& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && it->second != v) return false;
  }
  return true;
}

inline ORel o_join(const ORel& a, const ORel& b) {
  ORel out;
  out.header = a.header;
  out.header.insert(b.header.begin(), b.header.end());
  for (const Row& ra : a.rows) {
    for (const Row& rb : b.rows) {
      if (!rows_agree(ra, rb)) continue;
      Row merged = ra;
      merged.insert(rb.begin(), rb.end());
      out.rows.insert(std::move(merged));
    }
  }
  return out;
}

inline ORel o_union(const ORel& a, const ORel& b) {
  ORel out;
  for (const auto& name : a.header) {
    if (b.header.count(name)) out.header.insert(name);
  }
  for (const Row& r : a.rows) out.rows.insert(restrict_row(r, out.header));
  for (const Row& r : b.rows) out.rows.insert(restrict_row(r, out.header));
  return out;
}

inline ORel o_project(const ORel& a, const std::set<std::string>& attrs) {
  ORel out;
  out.header = attrs;
  for (const Row& r : a.rows) out.rows.insert(restrict_row(r, attrs));
  return out;
}

inline ORel o_select(const ORel& a, const std::function<bool(const Row&)>& pred) {
  ORel out;
  out.header = a.header;
  for (const Row& r : a.rows) {
    if (pred(r)) out.rows.insert(r);
  }
  return out;
}

inline ORel o_rename(const ORel& a, const std::string& from, const std::string& to) {
  ORel out;
  out.header = a.header;
  out.header.erase(from);
  out.header.insert(to);
  for (Row r : a.rows) {
    auto node = r.extract(from);
    r[to] = std::move(node.mapped());
    out.rows.insert(std::move(r));
  }
  return out;
}

inline ORel o_difference(const ORel& a, const ORel& b) {
  ORel out;
  out.header = a.header;
  for (const Row& r : a.rows) {
    if (!b.rows.count(r)) out.rows.insert(r);
  }
  return out;
}

// Enumerates every row over `header` from the domains.
inline std::vector<Row> all_rows(const Domains& domains, const std::set<std::string>& header) {
  std::vector<Row> out{Row{}};
  for (const auto& name : header) {
    std::vector<Row> next;
    for (const Row& base : out) {
      for (const auto& v : domains.at(name)) {
        Row r = base;
        r[name] = v;
        next.push_back(std::move(r));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Universal quantification: rows t over H(a)\H(b) with t+s in a for every s
// in b.
inline ORel o_divide(const ORel& a, const ORel& b, const Domains& domains) {
  ORel out;
  for (const auto& name : a.header) {
    if (!b.header.count(name)) out.header.insert(name);
  }
  for (const Row& t : all_rows(domains, out.header)) {
    bool all = true;
    for (const Row& s : b.rows) {
      Row merged = t;
      merged.insert(s.begin(), s.end());
      if (!a.rows.count(merged)) {
        all = false;
        break;
      }
    }
    if (all) out.rows.insert(t);
  }
  return out;
}

// Existential counterpart of o_divide.
inline ORel o_exists(const ORel& a, const ORel& b, const Domains& domains) {
  ORel out;
  for (const auto& name : a.header) {
    if (!b.header.count(name)) out.header.insert(name);
  }
  for (const Row& t : all_rows(domains, out.header)) {
    for (const Row& s : b.rows) {
      Row merged = t;
      merged.insert(s.begin(), s.end());
      if (a.rows.count(merged)) {
        out.rows.insert(t);
        break;
      }
    }
  }
  return out;
}

}  // namespace oracle
