#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rlat/core.hpp"

namespace rlat {

enum class LawId {
  join_idempotent,
  union_idempotent,
  join_commutative,
  union_commutative,
  join_associative,
  union_associative,
  absorb_join_over_union,
  absorb_union_over_join,
  decomposition,
  distrib_join_over_union,
  distrib_union_over_join,
};

constexpr std::array<LawId, 11> kAllLaws = {
    LawId::join_idempotent,        LawId::union_idempotent,
    LawId::join_commutative,       LawId::union_commutative,
    LawId::join_associative,       LawId::union_associative,
    LawId::absorb_join_over_union, LawId::absorb_union_over_join,
    LawId::decomposition,          LawId::distrib_join_over_union,
    LawId::distrib_union_over_join,
};

std::string_view law_name(LawId id);
std::optional<LawId> law_from_name(std::string_view name);
std::size_t law_arity(LawId id);

/// Distributivity only holds under a header condition; the other laws are
/// unconditional.
bool law_guarded(LawId id);

/// A * (B + C) == (A * B) + (A * C) is promised whenever the headers
/// satisfy: H(A)&H(B) inside H(C), and H(A)&H(C) inside H(B).
bool join_over_union_applicable(AttrSet ha, AttrSet hb, AttrSet hc);

/// A + (B * C) == (A + B) * (A + C) additionally needs H(B)&H(C) inside
/// H(A) and H(A) inside H(B)|H(C); together the four conditions pin
/// H(A) == H(B)&H(C).
bool union_over_join_applicable(AttrSet ha, AttrSet hb, AttrSet hc);

enum class Verdict { holds, guard_failed, counterexample };
std::string_view verdict_name(Verdict v);

struct LawReport {
  LawId law;
  Verdict verdict = Verdict::holds;
  /// Instantiation showing the failure (or the guard miss); empty when the
  /// law holds.
  std::vector<Relation> witness;
  std::optional<Relation> lhs;
  std::optional<Relation> rhs;
  /// Number of instantiations whose equality was actually evaluated.
  std::size_t checked = 0;
  bool exhaustive = false;
};

/// Evaluates one law at one instantiation. Guarded laws report guard_failed
/// (without evaluating) when the header condition misses.
LawReport check_law(LawId id, const std::vector<Relation>& args);

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// When false, guarded laws are evaluated even where the guard misses, so
  /// genuine counterexamples to unguarded distribution can surface.
  bool enforce_guard = true;
  std::size_t cap = 1000000;
};

/// Quantifies a law over a universe: exhaustively when every argument slot
/// can range over the whole (small) lattice, by seeded sampling otherwise.
LawReport quantified_check(LawId id, const UniversePtr& u, const CheckOptions& opts = {});

/// The stock instantiation showing that join does not distribute over inner
/// union without the header condition. Requires attributes "x" and "y" with
/// values "1", "2" and "a", "b" in their domains.
std::array<Relation, 3> nondistributive_witness(const UniversePtr& u);

}  // namespace rlat
