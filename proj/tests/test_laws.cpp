#include <doctest.h>

#include "rlat/laws.hpp"
#include "rlat/enumerate.hpp"
#include "rlat/random.hpp"

#include "helpers.hpp"

using namespace rlat;

TEST_SUITE_BEGIN("laws");

TEST_CASE("law identifiers") {
  for (LawId id : kAllLaws) {
    auto round = law_from_name(law_name(id));
    REQUIRE(round.has_value());
    CHECK(*round == id);
  }
  CHECK(!law_from_name("NOT_A_LAW").has_value());
  CHECK(law_arity(LawId::join_idempotent) == 1);
  CHECK(law_arity(LawId::absorb_union_over_join) == 2);
  CHECK(law_arity(LawId::distrib_union_over_join) == 3);
  CHECK(law_guarded(LawId::distrib_join_over_union));
  CHECK(law_guarded(LawId::distrib_union_over_join));
  CHECK(!law_guarded(LawId::join_associative));
}

TEST_CASE("check_law on single instantiations") {
  auto u = u2();
  Relation a = rel(u, {"x"}, {{"1"}});
  Relation b = rel(u, {"x", "y"}, {{"1", "a"}, {"2", "b"}});

  CHECK(check_law(LawId::join_idempotent, {a}).verdict == Verdict::holds);
  CHECK(check_law(LawId::union_commutative, {a, b}).verdict == Verdict::holds);
  CHECK(check_law(LawId::absorb_join_over_union, {a, b}).verdict == Verdict::holds);
  CHECK(check_law(LawId::decomposition, {b}).verdict == Verdict::holds);

  CHECK_THROWS_AS(check_law(LawId::join_commutative, {a}), LatticeError);
}

TEST_CASE("distributivity guards") {
  auto u = u3();
  AttrSet x = AttrSet::single(0);
  AttrSet y = AttrSet::single(1);
  AttrSet xy = x | y;
  AttrSet xz = x | AttrSet::single(2);

  CHECK(join_over_union_applicable(x, xy, xz));
  CHECK(!join_over_union_applicable(xy, y, x));  // the stock witness shape
  CHECK(join_over_union_applicable(AttrSet{}, xy, xz));

  // The four union-over-join conditions pin H(A) to H(B) & H(C) exactly.
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      for (std::uint64_t c = 0; c < 8; ++c) {
        AttrSet ha = AttrSet::from_bits(a);
        AttrSet hb = AttrSet::from_bits(b);
        AttrSet hc = AttrSet::from_bits(c);
        CHECK(union_over_join_applicable(ha, hb, hc) == (ha == (hb & hc)));
      }
    }
  }
}

TEST_CASE("guarded checks report guard misses without evaluating") {
  auto u = u2();
  auto w = nondistributive_witness(u);
  LawReport rep = check_law(LawId::distrib_join_over_union, {w[0], w[1], w[2]});
  CHECK(rep.verdict == Verdict::guard_failed);
  CHECK(rep.checked == 0);
  CHECK(!rep.lhs.has_value());

  // with agreeable headers the guarded law evaluates and holds
  Relation p = rel(u, {"x"}, {{"1"}});
  Relation q = rel(u, {"x", "y"}, {{"1", "a"}});
  Relation r = rel(u, {"x", "y"}, {{"2", "b"}});
  LawReport ok = check_law(LawId::distrib_join_over_union, {p, q, r});
  CHECK(ok.verdict == Verdict::holds);
  CHECK(ok.checked == 1);
}

TEST_CASE("the stock witness defeats unguarded join-over-union") {
  auto u = u2();
  auto [a, b, c] = nondistributive_witness(u);

  Relation lhs = natural_join(a, inner_union(b, c));
  Relation rhs = inner_union(natural_join(a, b), natural_join(a, c));

  // b and c share no attributes, so b + c collapses to 01 and the left side
  // is a itself; both joins on the right are empty.
  CHECK(inner_union(b, c) == special_element(u, SpecialCode::unit_01));
  CHECK(lhs == a);
  CHECK(rhs == empty_relation(u, a.header()));
  CHECK(lhs != rhs);
}

TEST_CASE("exhaustive sweeps over the two-by-two universe") {
  auto u = u2();
  CheckOptions opts;
  for (LawId id : kAllLaws) {
    if (law_guarded(id)) continue;
    LawReport rep = quantified_check(id, u, opts);
    CAPTURE(law_name(id));
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.exhaustive);
    std::size_t n = 26;
    std::size_t want = law_arity(id) == 1 ? n : law_arity(id) == 2 ? n * n : n * n * n;
    CHECK(rep.checked == want);
  }
}

TEST_CASE("guarded distributivity holds exhaustively where the guard passes") {
  auto u = u2();
  for (LawId id : {LawId::distrib_join_over_union, LawId::distrib_union_over_join}) {
    LawReport rep = quantified_check(id, u, {});
    CAPTURE(law_name(id));
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.exhaustive);
    CHECK(rep.checked > 0);
    CHECK(rep.checked < 26 * 26 * 26);
  }
}

TEST_CASE("without the guard a counterexample turns up") {
  auto u = u2();
  CheckOptions opts;
  opts.enforce_guard = false;
  LawReport rep = quantified_check(LawId::distrib_join_over_union, u, opts);
  REQUIRE(rep.verdict == Verdict::counterexample);
  REQUIRE(rep.witness.size() == 3);
  REQUIRE(rep.lhs.has_value());
  CHECK(*rep.lhs != *rep.rhs);

  // the reported instantiation really does break the equation
  Relation lhs = natural_join(rep.witness[0], inner_union(rep.witness[1], rep.witness[2]));
  Relation rhs = inner_union(natural_join(rep.witness[0], rep.witness[1]),
                             natural_join(rep.witness[0], rep.witness[2]));
  CHECK(lhs != rhs);
  CHECK(lhs == *rep.lhs);
  CHECK(rhs == *rep.rhs);
}

TEST_CASE("sampled sweeps on a three-attribute universe") {
  auto u = u3();
  CheckOptions opts;
  opts.samples = 200;
  opts.seed = 7;
  for (LawId id : kAllLaws) {
    LawReport rep = quantified_check(id, u, opts);
    CAPTURE(law_name(id));
    CHECK(rep.verdict == Verdict::holds);
    CHECK(!rep.exhaustive);
  }
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  auto u = u3();
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 50; ++i) {
    CHECK(random_relation(r1, u) == random_relation(r2, u));
  }
  std::mt19937_64 r3(43);
  bool all_same = true;
  std::mt19937_64 r4(42);
  for (int i = 0; i < 50; ++i) {
    if (random_relation(r3, u) != random_relation(r4, u)) all_same = false;
  }
  CHECK(!all_same);
}

TEST_CASE("order properties on sampled relations") {
  auto u = u2();
  std::mt19937_64 rng(11);
  std::vector<Relation> rs;
  for (int i = 0; i < 12; ++i) rs.push_back(random_relation(rng, u));
  for (const Relation& a : rs) {
    CHECK(leq(a, a));
    for (const Relation& b : rs) {
      if (leq(a, b) && leq(b, a)) CHECK(a == b);
      // meet and join really are bounds
      CHECK(leq(a, natural_join(a, b)));
      CHECK(leq(inner_union(a, b), a));
      for (const Relation& c : rs) {
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
      }
    }
  }
}

TEST_SUITE_END();
