import pytest

from doctrines.doctrine import (
    Doctrine,
    OneArrow,
    ProductData,
    TwoArrow,
    check_doctrine,
    check_one_arrow,
    check_two_arrow,
    compose_one_arrows,
    constant_doctrine,
    identity_one_arrow,
    identity_two_arrow,
    pair_label,
    power_doctrine,
    square_doctrine,
    vertical_compose_two_arrows,
    whisker_arrow_two,
    whisker_two_arrow,
)
from doctrines.fincat import (
    fin_nat,
    full_function_category,
    function_arrow_name,
    identity_functor,
    poset_category,
)
from doctrines.order import MonotoneMap, chain_poset, compose_maps, identity_map

from util import powerset_doctrine_over


SETS3 = {"A": ["a1"], "B": ["b1", "b2"], "C": ["c1", "c2"]}


def test_constant_doctrine_passes():
    base = poset_category(chain_poset(["x", "y"]))
    d = constant_doctrine(base, chain_poset(["0", "1"]))
    assert check_doctrine(d) == []


def test_powerset_doctrine_passes_law_scan():
    d = powerset_doctrine_over(SETS3)
    assert check_doctrine(d) == []


def test_corrupted_reindex_names_the_pair():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1"], "C": ["c1"]})
    f = next(a for a in d.base.arrow_names() if d.base.src(a) == "A" and d.base.dst(a) == "B")
    g = next(a for a in d.base.arrow_names() if d.base.src(a) == "B" and d.base.dst(a) == "C")
    gf = d.base.comp(g, f)
    # corrupt the composite's table only; the corrupted map stays monotone
    bad = dict(d.reindex)
    m = bad[gf]
    bad[gf] = MonotoneMap(m.src, m.dst, {lbl: "{}" for lbl in m.src.elements})
    harmed = Doctrine(d.base, d.fibers, bad)
    out = check_doctrine(harmed)
    assert any("contravariance fails" in v and g in v and f in v for v in out)


def test_identity_one_arrow_and_composition_unit():
    d = powerset_doctrine_over(SETS3)
    i = identity_one_arrow(d)
    assert check_one_arrow(i) == []
    assert compose_one_arrows(i, i) == i


def test_one_arrow_naturality_violation_witnessed():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1"]})
    i = identity_one_arrow(d)
    parts = dict(i.parts)
    parts["A"] = MonotoneMap(d.fibers["A"], d.fibers["A"], {"{}": "{}", "{a1}": "{}"})
    broken = OneArrow(d, d, i.functor, parts)
    assert any("naturality fails" in v for v in check_one_arrow(broken))


def test_triple_composition_associativity_table_equality():
    d = powerset_doctrine_over(SETS3)
    sq, diag = square_doctrine(d)
    sq2, diag2 = square_doctrine(sq)
    left = compose_one_arrows(diag2, diag)
    # associativity on a triple: ((diag2∘diag)∘id) = (diag2∘(diag∘id))
    i = identity_one_arrow(d)
    assert compose_one_arrows(compose_one_arrows(diag2, diag), i) == compose_one_arrows(
        diag2, compose_one_arrows(diag, i)
    )
    assert check_one_arrow(left) == []


def test_identity_two_arrow_and_vertical_composition():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1"]})
    i = identity_one_arrow(d)
    t = identity_two_arrow(i)
    assert check_two_arrow(t) == []
    tt = vertical_compose_two_arrows(t, t)
    assert check_two_arrow(tt) == []


def test_two_arrow_mismatched_middle_rejected():
    d = powerset_doctrine_over({"A": ["a1"]})
    sq, diag = square_doctrine(d)
    t = identity_two_arrow(identity_one_arrow(d))
    z = identity_two_arrow(diag)
    with pytest.raises(ValueError):
        vertical_compose_two_arrows(z, t)


def test_two_arrow_lax_violation_witnessed():
    # on a one-object base, compare the identity with a strictly smaller map
    d = powerset_doctrine_over({"A": ["a1"]})
    i = identity_one_arrow(d)
    drop = OneArrow(
        d, d, i.functor,
        {"A": MonotoneMap(d.fibers["A"], d.fibers["A"], {"{}": "{}", "{a1}": "{}"})},
    )
    # drop ≤ id holds; id ≤ drop fails at {a1}
    ok = TwoArrow(drop, i, identity_two_arrow(i).theta)
    assert check_two_arrow(ok) == []
    bad = TwoArrow(i, drop, identity_two_arrow(i).theta)
    out = check_two_arrow(bad)
    assert any("(A,{a1})" in v for v in out)


def test_whiskering_preserves_two_arrow_validity():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1"]})
    i = identity_one_arrow(d)
    drop = OneArrow(
        d, d, i.functor,
        {
            "A": MonotoneMap(d.fibers["A"], d.fibers["A"], {"{}": "{}", "{a1}": "{}"}),
            "B": MonotoneMap(d.fibers["B"], d.fibers["B"], {"{}": "{}", "{b1}": "{}"}),
        },
    )
    t = TwoArrow(drop, i, identity_two_arrow(i).theta)
    assert check_two_arrow(whisker_arrow_two(i, t)) == []
    assert check_two_arrow(whisker_two_arrow(t, i)) == []


def test_square_doctrine_fiber_sizes_and_diagonal():
    d = powerset_doctrine_over({"A": ["a1"]})
    sq, diag = square_doctrine(d)
    assert check_doctrine(sq) == []
    assert len(sq.fibers["A"].elements) == 4
    assert check_one_arrow(diag) == []
    assert diag.parts["A"].apply("{a1}") == pair_label("{a1}", "{a1}")


def test_square_of_one_point_fibers_is_isomorphic_to_p():
    base = poset_category(chain_poset(["x"]))
    d = constant_doctrine(base, chain_poset(["*"]))
    sq, _ = square_doctrine(d)
    assert len(sq.fibers["x"].elements) == 1


def _product_fragment():
    # Y = {y}, X = {0,1}, chosen product carriers as pair labels
    sets = {
        "Y": ["y"],
        "X": ["0", "1"],
        "YxX": ["y*0", "y*1"],
    }
    return dict(sets), full_function_category(sets)


def test_power_doctrine_with_terminal_factor_is_identity():
    sets = {"Y": ["y", "z"], "One": ["*"]}
    d = powerset_doctrine_over(sets)
    # chosen product of anything with the terminal object is the object itself
    products = {
        obj: ProductData(obj, d.base.id(obj), function_arrow_name(obj, "One", {e: "*" for e in sets[obj]}, sets[obj]), {(e, "*"): e for e in sets[obj]})
        for obj in d.base.objects
    }
    times = {f: f for f in d.base.arrow_names()}
    powered, weakening = power_doctrine(d, d.base, "One", products, times)
    assert check_doctrine(powered) == []
    assert powered.fibers == d.fibers
    assert check_one_arrow(weakening) == []


def test_power_doctrine_powerset_instance():
    base_sets, _ = _product_fragment()
    d = powerset_doctrine_over(base_sets)
    pairs = {("y", "0"): "y*0", ("y", "1"): "y*1"}
    proj1 = function_arrow_name("YxX", "Y", {"y*0": "y", "y*1": "y"}, base_sets["YxX"])
    proj2 = function_arrow_name("YxX", "X", {"y*0": "0", "y*1": "1"}, base_sets["YxX"])
    products = {"Y": ProductData("YxX", proj1, proj2, pairs)}
    # restrict to the single object Y, where product data is total
    from doctrines.fincat import fin_category

    sub = fin_category(
        ["Y"],
        [(a, "Y", "Y") for a in d.base.hom("Y", "Y")],
        {"Y": d.base.id("Y")},
        {(g, f): d.base.comp(g, f) for g in d.base.hom("Y", "Y") for f in d.base.hom("Y", "Y")},
    )
    times = {a: d.base.id("YxX") for a in sub.arrow_names()}
    powered, weakening = power_doctrine(d, sub, "X", products, times)
    assert check_doctrine(powered) == []
    assert len(powered.fibers["Y"].elements) == 4
    assert check_one_arrow(weakening) == []


def test_compose_meet_after_diagonal_is_tabled_composite():
    # composing the meet 1-arrow after the diagonal gives the fiberwise
    # composite table; on powerset fibers the composite is the identity
    from doctrines.instances import conjunction_adjunction
    from doctrines.adjunction import left_arrow, right_arrow
    from doctrines.order import compose_maps

    d = powerset_doctrine_over({"A": ["a1", "a2"]})
    adj = conjunction_adjunction(d)
    diag = left_arrow(adj)
    meet = right_arrow(adj)
    comp = compose_one_arrows(meet, diag)
    for x in d.base.objects:
        assert comp.parts[x] == compose_maps(meet.parts[x], diag.parts[x])
        assert comp.parts[x].graph() == tuple((a, a) for a in d.fibers[x].elements)
