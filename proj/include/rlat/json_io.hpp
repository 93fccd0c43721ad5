#pragma once

#include <map>
#include <string>

#include "rlat/core.hpp"

namespace rlat {

/// Document shape: {"attributes": [{"name": ..., "domain": [...]}, ...]}.
/// Attribute and domain order are significant and survive a round trip.
UniversePtr universe_from_json(const std::string& text);
std::string universe_to_json(const Universe& u);

/// Document shape: {"header": ["x", "y"], "tuples": [["1", "a"], ...]}.
/// Values are matched to header entries by position. Emission is canonical:
/// header sorted by name, tuples in canonical order, so parse/serialize
/// round-trips are byte-exact on canonical input.
Relation relation_from_json(const UniversePtr& u, const std::string& text);
std::string relation_to_json(const Relation& r);

/// Document shape: {"R": {"header": ..., "tuples": ...}, ...}.
std::map<std::string, Relation> catalog_from_json(const UniversePtr& u, const std::string& text);
std::string catalog_to_json(const std::map<std::string, Relation>& relations);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace rlat
