#include <doctest.h>

#include "rlat/derived.hpp"

#include "helpers.hpp"
#include "oracle.hpp"

using namespace rlat;

namespace {

// Two attributes sharing one domain, for attribute/attribute predicates and
// renames.
UniversePtr u44() {
  return std::make_shared<const Universe>(std::vector<Universe::AttrDecl>{
      {"v", {"1", "2", "3", "4"}}, {"w", {"1", "2", "3", "4"}}});
}

}  // namespace

TEST_SUITE_BEGIN("derived");

TEST_CASE("predicate relations") {
  auto u = u2();
  AttrSet xy = u->all();
  CHECK(predicate_relation(u, AttrSet::single(0), Predicate::attr_const("x", Cmp::eq, "1")) ==
        rel(u, {"x"}, {{"1"}}));
  CHECK(predicate_relation(
            u, xy,
            Predicate::conjunction({Predicate::attr_const("x", Cmp::eq, "1"),
                                    Predicate::attr_const("y", Cmp::ne, "a")})) ==
        rel(u, {"x", "y"}, {{"1", "b"}}));

  auto v = u44();
  CHECK(predicate_relation(v, v->all(), Predicate::attr_attr("v", Cmp::eq, "w")) ==
        rel(v, {"v", "w"}, {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}}));
  CHECK(predicate_relation(v, v->all(), Predicate::attr_attr("v", Cmp::lt, "w")).size() == 6);

  CHECK_THROWS_AS(
      predicate_relation(u, AttrSet::single(0), Predicate::attr_const("y", Cmp::eq, "a")),
      LatticeError);
}

TEST_CASE("select") {
  auto u = u2();
  Relation all = special_element(u, SpecialCode::universal_11);
  CHECK(select(all, Predicate::attr_const("x", Cmp::eq, "1")) ==
        rel(u, {"x", "y"}, {{"1", "a"}, {"1", "b"}}));
  CHECK(select(all, Predicate::attr_const("x", Cmp::ne, "1")) ==
        rel(u, {"x", "y"}, {{"2", "a"}, {"2", "b"}}));

  auto v = u44();
  Relation nums = rel(v, {"v"}, {{"1"}, {"2"}, {"3"}, {"4"}});
  CHECK(select(nums, Predicate::attr_const("v", Cmp::gt, "2")) ==
        rel(v, {"v"}, {{"3"}, {"4"}}));
  CHECK(select(nums, Predicate::attr_const("v", Cmp::le, "2")) ==
        rel(v, {"v"}, {{"1"}, {"2"}}));

  // predicates are checked against the header, not just the universe
  Relation xs = rel(u, {"x"}, {{"1"}});
  CHECK_THROWS_AS(select(xs, Predicate::attr_const("y", Cmp::eq, "a")), LatticeError);
  CHECK_THROWS_AS(select(xs, Predicate::attr_const("q", Cmp::eq, "a")), LatticeError);

  // selection never grows the header or the body
  Relation picked = select(all, Predicate::attr_attr("x", Cmp::lt, "y"));
  CHECK(picked.header() == all.header());
  CHECK(picked.size() == 4);  // digits order before letters
}

TEST_CASE("project") {
  auto u = u2();
  Relation all = special_element(u, SpecialCode::universal_11);
  CHECK(project(all, std::vector<std::string>{"x"}) == rel(u, {"x"}, {{"1"}, {"2"}}));
  CHECK(project(rel(u, {"x", "y"}, {{"1", "a"}, {"1", "b"}}), std::vector<std::string>{"x"}) ==
        rel(u, {"x"}, {{"1"}}));

  // projecting everything away leaves 01 (or 00 when the body is empty)
  CHECK(project(all, AttrSet{}) == special_element(u, SpecialCode::unit_01));
  CHECK(project(empty_relation(u, u->all()), AttrSet{}) ==
        special_element(u, SpecialCode::empty_00));

  CHECK_THROWS_AS(project(rel(u, {"x"}, {}), std::vector<std::string>{"y"}), LatticeError);
}

TEST_CASE("rename") {
  auto v = u44();
  Relation a = rel(v, {"v"}, {{"1"}, {"3"}});
  CHECK(rename(a, {"v", "w"}) == rel(v, {"w"}, {{"1"}, {"3"}}));
  CHECK(oracle::from_relation(rename(a, {"v", "w"})) ==
        oracle::o_rename(oracle::from_relation(a), "v", "w"));

  Relation both = rel(v, {"v", "w"}, {{"1", "2"}});
  CHECK_THROWS_AS(rename(both, {"v", "w"}), LatticeError);   // target present
  CHECK_THROWS_AS(rename(a, {"w", "v"}), LatticeError);      // source absent
  CHECK_THROWS_AS(rename(a, {"v", "nope"}), LatticeError);   // unknown target

  auto u = u2();
  CHECK_THROWS_AS(rename(rel(u, {"x"}, {{"1"}}), {"x", "y"}), LatticeError);  // domains differ
}

TEST_CASE("difference") {
  auto v = u44();
  Relation a = rel(v, {"v"}, {{"1"}, {"2"}, {"3"}});
  Relation b = rel(v, {"v"}, {{"2"}});
  CHECK(difference(a, b) == rel(v, {"v"}, {{"1"}, {"3"}}));
  CHECK(difference(b, a) == empty_relation(v, b.header()));
  CHECK_THROWS_AS(difference(a, rel(v, {"w"}, {})), LatticeError);
}

TEST_CASE("difference as an equation system") {
  auto v = u44();
  Relation a = rel(v, {"v"}, {{"1"}, {"2"}, {"3"}});
  Relation b = rel(v, {"v"}, {{"2"}});

  auto x = difference_by_equations(a, b);
  REQUIRE(x.has_value());
  CHECK(*x == rel(v, {"v"}, {{"1"}, {"3"}}));
  CHECK(*x == difference(a, b));

  // no solution unless b is contained in a
  CHECK(!difference_by_equations(rel(v, {"v"}, {{"1"}}), rel(v, {"v"}, {{"2"}})).has_value());
  CHECK(difference_by_equations(b, b).has_value());  // a == b solves to empty
  CHECK(*difference_by_equations(b, b) == empty_relation(v, b.header()));
}

TEST_CASE("difference through division") {
  auto v = u44();
  Relation a = rel(v, {"v"}, {{"1"}, {"2"}, {"3"}});
  Relation b = rel(v, {"v"}, {{"2"}});
  CHECK(difference_by_division(a, b, "w") == difference(a, b));
  CHECK(difference_by_division(a, a, "w") == empty_relation(v, a.header()));
  CHECK(difference_by_division(b, a, "w") == empty_relation(v, b.header()));

  // an empty subtrahend has no pairs to divide out, so the vacuous division
  // returns the whole domain rather than a
  Relation none = empty_relation(v, a.header());
  CHECK(difference_by_division(a, none, "w") == rel(v, {"v"}, {{"1"}, {"2"}, {"3"}, {"4"}}));

  CHECK_THROWS_AS(difference_by_division(rel(v, {"v", "w"}, {}), rel(v, {"v", "w"}, {}), "w"),
                  LatticeError);
  CHECK_THROWS_AS(difference_by_division(a, b, "v"), LatticeError);
}

TEST_CASE("divide") {
  auto u = u2();
  Relation a = rel(u, {"x", "y"}, {{"1", "a"}, {"1", "b"}, {"2", "a"}});
  CHECK(divide(a, rel(u, {"y"}, {{"a"}, {"b"}})) == rel(u, {"x"}, {{"1"}}));
  CHECK(divide(a, rel(u, {"y"}, {{"a"}})) == rel(u, {"x"}, {{"1"}, {"2"}}));
  CHECK(divide(a, empty_relation(u, AttrSet::single(1))) == rel(u, {"x"}, {{"1"}, {"2"}}));

  CHECK_THROWS_AS(divide(a, a), LatticeError);
  CHECK_THROWS_AS(divide(a, special_element(u, SpecialCode::empty_00)), LatticeError);
  CHECK_THROWS_AS(divide(rel(u, {"x"}, {}), rel(u, {"y"}, {})), LatticeError);
}

TEST_CASE("finite infimum") {
  auto u = u2();
  Relation a = rel(u, {"x", "y"}, {{"1", "a"}, {"1", "b"}, {"2", "a"}});
  CHECK(finite_infimum(a, rel(u, {"y"}, {{"b"}})) == rel(u, {"x"}, {{"1"}}));
  CHECK(finite_infimum(a, rel(u, {"y"}, {{"a"}, {"b"}})) == rel(u, {"x"}, {{"1"}, {"2"}}));
  CHECK(finite_infimum(a, empty_relation(u, AttrSet::single(1))) ==
        empty_relation(u, AttrSet::single(0)));
}

TEST_CASE("divide and infimum against the quantifier oracles") {
  auto u = u3();
  auto doms = oracle::domains_of(*u);
  std::vector<Relation> dividends = {
      rel(u, {"x", "z"}, {{"1", "p"}, {"1", "q"}, {"2", "r"}}),
      rel(u, {"x", "y", "z"},
          {{"1", "a", "p"}, {"1", "a", "q"}, {"1", "b", "p"}, {"2", "a", "r"}}),
      special_element(u, SpecialCode::universal_11),
      empty_relation(u, u->all()),
  };
  std::vector<Relation> divisors = {
      rel(u, {"z"}, {{"p"}}),
      rel(u, {"z"}, {{"p"}, {"q"}}),
      empty_relation(u, AttrSet::single(2)),
      rel(u, {"y", "z"}, {{"a", "p"}}),
  };
  for (const Relation& a : dividends) {
    for (const Relation& b : divisors) {
      if (!b.header().proper_subset_of(a.header())) continue;
      auto oa = oracle::from_relation(a);
      auto ob = oracle::from_relation(b);
      Relation q = divide(a, b);
      Relation e = finite_infimum(a, b);
      CHECK(oracle::from_relation(q) == oracle::o_divide(oa, ob, doms));
      CHECK(oracle::from_relation(e) == oracle::o_exists(oa, ob, doms));
      // forall implies exists (vacuously false for an empty divisor, where
      // the division is the full product); fewer tuples sit higher
      if (!b.empty()) CHECK(leq(e, q));
    }
  }
}

TEST_CASE("cross") {
  auto u = u2();
  Relation a = rel(u, {"x"}, {{"1"}, {"2"}});
  Relation b = rel(u, {"y"}, {{"a"}});
  CHECK(cross(a, b) == rel(u, {"x", "y"}, {{"1", "a"}, {"2", "a"}}));
  CHECK(cross(a, b).size() == a.size() * b.size());
  CHECK_THROWS_AS(cross(a, a), LatticeError);
}

TEST_CASE("derived operators against the oracle") {
  auto u = u3();
  std::vector<Relation> samples = {
      rel(u, {"x", "y"}, {{"1", "a"}, {"2", "b"}, {"2", "a"}}),
      rel(u, {"x", "y", "z"}, {{"1", "a", "p"}, {"1", "b", "q"}}),
      rel(u, {"y"}, {{"a"}}),
  };
  for (const Relation& r : samples) {
    auto o = oracle::from_relation(r);
    CHECK(oracle::from_relation(select(r, Predicate::attr_const("y", Cmp::eq, "a"))) ==
          oracle::o_select(o, [](const oracle::Row& row) { return row.at("y") == "a"; }));
    CHECK(oracle::from_relation(project(r, std::vector<std::string>{"y"})) ==
          oracle::o_project(o, {"y"}));
  }
}

TEST_SUITE_END();
