#pragma once

#include <memory>
#include <vector>

#include "rlat/core.hpp"

inline rlat::UniversePtr u2() {
  return std::make_shared<const rlat::Universe>(std::vector<rlat::Universe::AttrDecl>{
      {"x", {"1", "2"}}, {"y", {"a", "b"}}});
}

inline rlat::UniversePtr u3() {
  return std::make_shared<const rlat::Universe>(std::vector<rlat::Universe::AttrDecl>{
      {"x", {"1", "2"}}, {"y", {"a", "b"}}, {"z", {"p", "q", "r"}}});
}

inline rlat::Relation rel(const rlat::UniversePtr& u, const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
  return rlat::make_relation(u, header, rows);
}
