import pytest

import rlat


@pytest.fixture
def u():
    return rlat.Universe([("x", ["1", "2"]), ("y", ["a", "b"])])


@pytest.fixture
def cat(u):
    return {
        "A": rlat.relation(u, ["x", "y"], [["1", "a"], ["2", "b"]]),
        "B": rlat.relation(u, ["y"], [["a"]]),
        "C": rlat.relation(u, ["x"], [["2"]]),
    }


def test_universe(u):
    assert u.size() == 2
    assert u.attribute_names() == ["x", "y"]
    assert u.domain("y") == ["a", "b"]
    assert rlat.Universe.from_json(u.to_json()) == u
    with pytest.raises(rlat.Error):
        u.domain("z")


def test_relation_basics(u, cat):
    a = cat["A"]
    assert a.header() == ["x", "y"]
    assert a.tuples() == [["1", "a"], ["2", "b"]]
    assert len(a) == 2
    assert a == rlat.relation(u, ["y", "x"], [["b", "2"], ["a", "1"]])
    assert a != cat["B"]
    assert rlat.relation_from_json(u, a.to_json()) == a
    with pytest.raises(rlat.Error):
        rlat.relation(u, ["x"], [["3"]])


def test_join_and_union(u, cat):
    j = rlat.join(cat["A"], cat["B"])
    assert j.header() == ["x", "y"]
    assert j.tuples() == [["1", "a"]]
    un = rlat.union(cat["A"], cat["C"])
    assert un.header() == ["x"]
    assert un.tuples() == [["1"], ["2"]]


def test_specials_and_order(u, cat):
    bottom = rlat.special(u, "01")
    top = rlat.special(u, "10")
    assert len(bottom) == 1
    assert rlat.special(u, "00") == rlat.empty(u, [])
    assert rlat.special(u, "11").header() == ["x", "y"]
    assert rlat.leq(bottom, cat["A"])
    assert rlat.leq(cat["A"], top)
    assert not rlat.leq(top, bottom)
    head, content = rlat.decompose(cat["A"])
    assert head == rlat.empty(u, ["x", "y"])
    assert rlat.union(head, content) == cat["A"]


def test_derived_operators(u, cat):
    a = cat["A"]
    assert rlat.select(a, "x=2").tuples() == [["2", "b"]]
    assert rlat.project(a, ["y"]).tuples() == [["a"], ["b"]]
    assert rlat.difference(a, a) == rlat.empty(u, ["x", "y"])
    assert rlat.divide(a, cat["B"]).tuples() == [["1"]]
    u3 = rlat.Universe([("x", ["1", "2"]), ("x2", ["1", "2"])])
    r = rlat.relation(u3, ["x"], [["1"]])
    assert rlat.rename(r, "x", "x2").header() == ["x2"]
    assert rlat.full(u, ["x"]).tuples() == [["1"], ["2"]]


def test_evaluate(u, cat):
    r = rlat.evaluate("select(A, x=2) * C", u, cat)
    assert r.tuples() == [["2", "b"]]
    assert rlat.infer_header("A + C", u, cat) == ["x"]
    assert rlat.evaluate("(A + B) * C", u, cat).tuples() == [["2", "a"], ["2", "b"]]
    assert rlat.desugar("project(A, x)", u, cat) == "A + [x]"
    with pytest.raises(rlat.Error):
        rlat.evaluate("A + ", u, cat)
    with pytest.raises(rlat.Error):
        rlat.evaluate("missing * A", u, cat)


def test_rewrite(u, cat):
    res = rlat.rewrite("select(A * C, x=1)", u, cat)
    assert res["expr"] == "select(A, x=1) * C"
    assert res["applications"] == 1
    assert not res["budget_exhausted"]
    assert res["trace"][0]["rule"] == "DESUGAR_SELECT"
    assert all(s["macro"] == "PUSH_CROSS_THROUGH_SELECT" for s in res["trace"])
    before = rlat.evaluate("select(A * C, x=1)", u, cat)
    assert rlat.evaluate(res["expr"], u, cat) == before

    exhaustive = rlat.rewrite("A * (A + B)", u, cat, strategy="exhaustive", budget=200)
    assert exhaustive["expr"] == "A"
    assert "PUSH_CROSS_THROUGH_SELECT" in rlat.rule_names()
    with pytest.raises(rlat.Error):
        rlat.rewrite("A", u, cat, strategy="sideways")


def test_equivalent(u, cat):
    ok = rlat.equivalent("A * B", "B * A", u, cat, trials=50)
    assert ok["equivalent"] and ok["trials"] == 50
    bad = rlat.equivalent("A * B", "A + B", u, cat)
    assert not bad["equivalent"]
    assert set(bad["counterexample"]) == {"A", "B", "C"}
    assert bad["lhs"] != bad["rhs"]


def test_check_law(u):
    rep = rlat.check_law("JOIN_IDEMPOTENT", u)
    assert rep["verdict"] == "HOLDS" and rep["exhaustive"]
    unguarded = rlat.check_law("DISTRIB_JOIN_OVER_UNION", u, unguarded=True)
    assert unguarded["verdict"] == "COUNTEREXAMPLE"
    assert len(unguarded["witness"]) == 3
    assert "DECOMPOSITION" in rlat.law_names()


def test_enumerate(u):
    assert rlat.lattice_size(u) == 26
    g = rlat.enumerate_lattice(u)
    assert len(g["labels"]) == 26
    assert ("01", "00") in g["covers"]
    assert rlat.export_dot(u).startswith("digraph lattice {")
