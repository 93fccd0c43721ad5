#include <doctest.h>

#include <set>

#include "rlat/enumerate.hpp"

#include "helpers.hpp"

using namespace rlat;

TEST_SUITE_BEGIN("enumerate");

TEST_CASE("lattice size") {
  CHECK(lattice_size(*u2()) == 26);  // 2 + 4 + 4 + 16
  CHECK(lattice_size(*u3()) == 4258);
  CHECK_THROWS_AS(lattice_size(*u3(), 100), LatticeError);
}

TEST_CASE("all relations come out in canonical order") {
  auto u = u2();
  std::vector<Relation> all = all_relations(u);
  REQUIRE(all.size() == 26);

  // distinct, and the first block walks the empty header then {x} then {y}
  std::set<std::string> texts;
  for (const Relation& r : all) texts.insert(r.to_text());
  CHECK(texts.size() == 26);

  CHECK(all[0] == special_element(u, SpecialCode::empty_00));
  CHECK(all[1] == special_element(u, SpecialCode::unit_01));
  CHECK(all[2].to_text() == "[x]");
  CHECK(all[3].to_text() == "{x:1}");
  CHECK(all[4].to_text() == "{x:2}");
  CHECK(all[5].to_text() == "{x:1, x:2}");
  CHECK(all[6].to_text() == "[y]");
  CHECK(all[10] == special_element(u, SpecialCode::top_10));
  CHECK(all[25] == special_element(u, SpecialCode::universal_11));
}

TEST_CASE("hasse diagram of the two-by-two lattice") {
  auto u = u2();
  LatticeGraph g = enumerate_lattice(u);
  REQUIRE(g.elements.size() == 26);
  CHECK(g.labels[0] == "00");
  CHECK(g.labels[1] == "01");
  CHECK(g.labels[10] == "10");
  CHECK(g.labels[25] == "11");

  // covers are sound: strictly ordered with nothing in between
  for (const auto& [lo, hi] : g.covers) {
    CHECK(leq(g.elements[lo], g.elements[hi]));
    CHECK(lo != hi);
    for (std::uint32_t k = 0; k < g.elements.size(); ++k) {
      if (k == lo || k == hi) continue;
      bool between =
          leq(g.elements[lo], g.elements[k]) && leq(g.elements[k], g.elements[hi]);
      CHECK(!between);
    }
  }

  CHECK(g.covers.size() == 53);

  // the bottom 01 is covered by 00 and the two full single-attribute
  // domains
  std::set<std::string> above_bottom;
  std::uint32_t bottom = *g.index_of(special_element(u, SpecialCode::unit_01));
  for (const auto& [lo, hi] : g.covers) {
    if (lo == bottom) above_bottom.insert(g.labels[hi]);
  }
  CHECK(above_bottom == std::set<std::string>{"00", "{x:1, x:2}", "{y:a, y:b}"});

  // the empty single-attribute relations sit directly under the top
  std::uint32_t top = *g.index_of(special_element(u, SpecialCode::top_10));
  std::set<std::string> below_top;
  for (const auto& [lo, hi] : g.covers) {
    if (hi == top) below_top.insert(g.labels[lo]);
  }
  CHECK(below_top.count("[x]") == 1);
  CHECK(below_top.count("[y]") == 1);
  CHECK(below_top.count("{x:1 y:a}") == 1);
  CHECK(below_top.size() == 6);
}

TEST_CASE("dot export") {
  auto u = u2();
  LatticeGraph g = enumerate_lattice(u);
  std::string dot = export_dot(g);
  CHECK(dot.rfind("digraph lattice {", 0) == 0);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("n0 [label=\"00\"];") != std::string::npos);
  CHECK(dot.find("n25 [label=\"11\"];") != std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1)) {
    ++arrows;
  }
  CHECK(arrows == g.covers.size());
  CHECK(export_dot(g) == dot);
}

TEST_CASE("standard sublattices of the two-by-two lattice are boolean") {
  auto u = u2();
  LatticeGraph g = enumerate_lattice(u);
  std::vector<SublatticeReport> reports = standard_sublattices(g);
  REQUIRE(reports.size() == 6);

  std::vector<std::size_t> sizes;
  for (const auto& rep : reports) {
    CAPTURE(rep.name);
    sizes.push_back(rep.members.size());
    CHECK(rep.closed_under_join);
    CHECK(rep.closed_under_union);
    CHECK(rep.distributive);
    CHECK(rep.complemented);
    CHECK(rep.boolean());
  }
  CHECK(sizes == std::vector<std::size_t>{16, 4, 4, 4, 4, 4});

  // bounds: the powerset over the full header runs from 11 up to 10, the
  // special diamond from 01 up to 10, the unit-domain square from 01 to 11
  CHECK(reports[0].name == "powerset-full-header");
  CHECK(g.labels[reports[0].bottom] == "11");
  CHECK(g.labels[reports[0].top] == "10");
  CHECK(reports[4].name == "unit-domains");
  CHECK(g.labels[reports[4].bottom] == "01");
  CHECK(g.labels[reports[4].top] == "11");
  CHECK(reports[5].name == "special-diamond");
  CHECK(g.labels[reports[5].bottom] == "01");
  CHECK(g.labels[reports[5].top] == "10");
}

TEST_CASE("a non-closed member set is reported as such") {
  auto u = u2();
  LatticeGraph g = enumerate_lattice(u);
  std::vector<std::uint32_t> members = {
      *g.index_of(special_element(u, SpecialCode::empty_00)),
      *g.index_of(special_element(u, SpecialCode::unit_01)),
      *g.index_of(rel(u, {"x"}, {{"1"}, {"2"}})),
  };
  SublatticeReport rep = verify_boolean_sublattice(g, "probe", members);
  CHECK(!rep.closed_under_join);  // 00 * {x...} = [x] is missing
  CHECK(!rep.boolean());
}

TEST_CASE("the full lattice is not distributive") {
  auto u = u2();
  LatticeGraph g = enumerate_lattice(u);
  auto triple = find_nondistributive_triple(g);
  REQUIRE(triple.has_value());
  const Relation& a = g.elements[(*triple)[0]];
  const Relation& b = g.elements[(*triple)[1]];
  const Relation& c = g.elements[(*triple)[2]];
  CHECK(natural_join(a, inner_union(b, c)) !=
        inner_union(natural_join(a, b), natural_join(a, c)));
}

TEST_SUITE_END();
