#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlat/core.hpp"

namespace rlat {

constexpr std::size_t kDefaultEnumerationCap = 1000000;

/// Number of relations over `u`: sum over header subsets of 2^(product of
/// the member domains). Throws Errc::universe_too_large beyond `cap`.
std::size_t lattice_size(const Universe& u, std::size_t cap = kDefaultEnumerationCap);

/// Every relation over `u`, in canonical order: headers by (arity, then the
/// name-sorted attribute sequence), bodies by their tuple bitmask over the
/// canonical tuple order of the header.
std::vector<Relation> all_relations(const UniversePtr& u,
                                    std::size_t cap = kDefaultEnumerationCap);

struct LatticeGraph {
  UniversePtr universe;
  std::vector<Relation> elements;  // canonical order
  std::vector<std::string> labels;
  /// Hasse cover pairs (lower index, upper index), lexicographically sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;

  std::optional<std::uint32_t> index_of(const Relation& r) const;
};

LatticeGraph enumerate_lattice(const UniversePtr& u,
                               std::size_t cap = kDefaultEnumerationCap);

/// Graphviz rendering of the Hasse diagram, edges pointing upward.
std::string export_dot(const LatticeGraph& g);

struct SublatticeReport {
  std::string name;
  std::vector<std::uint32_t> members;
  bool closed_under_join = false;
  bool closed_under_union = false;
  bool distributive = false;
  bool complemented = false;
  std::uint32_t bottom = 0;
  std::uint32_t top = 0;

  bool boolean() const {
    return closed_under_join && closed_under_union && distributive && complemented;
  }
};

/// Checks that `members` (indices into g.elements) form a sublattice that is
/// distributive and complemented relative to its own bounds.
SublatticeReport verify_boolean_sublattice(const LatticeGraph& g, std::string name,
                                           std::vector<std::uint32_t> members);

/// The families that sit inside every relation lattice: the powerset of each
/// single-attribute domain, the powerset over the full header, the diamond
/// of special elements, the empty relations, and {01, single-attribute full
/// domains..., 11}.
std::vector<SublatticeReport> standard_sublattices(const LatticeGraph& g);

/// First triple (i, j, k) in canonical order with
/// i * (j + k) != (i * j) + (i * k), if any.
std::optional<std::array<std::uint32_t, 3>> find_nondistributive_triple(const LatticeGraph& g);

}  // namespace rlat
