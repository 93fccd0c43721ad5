#pragma once

#include <random>

#include "rlat/core.hpp"

namespace rlat {

// Sampling sticks to rng() arithmetic instead of <random> distributions so
// seeded runs reproduce across standard libraries.

inline AttrSet random_header(std::mt19937_64& rng, const Universe& u) {
  if (u.size() == 0) return AttrSet{};
  return AttrSet::from_bits(rng() & ((std::uint64_t{1} << u.size()) - 1));
}

inline Relation random_relation(std::mt19937_64& rng, const UniversePtr& u, AttrSet header) {
  std::vector<Tuple> body;
  for_each_product_tuple(*u, header, [&](const Tuple& t) {
    if (rng() & 1) body.push_back(t);
  });
  return Relation(u, header, std::move(body));
}

inline Relation random_relation(std::mt19937_64& rng, const UniversePtr& u) {
  return random_relation(rng, u, random_header(rng, *u));
}

}  // namespace rlat
