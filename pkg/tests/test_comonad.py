import random

import pytest

from doctrines.adjunction import (
    am_modality,
    check_adjunction,
    identity_adjunction,
    left_arrow,
    random_vertical_adjunction,
)
from doctrines.comonad import (
    CmdTwoCell,
    DoctrineComonad,
    check_cmd_morphism,
    check_cmd_two_cell,
    check_comonad,
    cm_modality,
    cmd_arrow,
    cmd_of_adjunction,
    comparison_arrow,
    em_adjunction,
    em_doctrine,
    em_universal_factor,
    identity_comonad,
    local_adjunction_checks,
    local_adjunction_checks_modal,
    ma,
    ma_agrees_with_em_of_mc,
    mc,
    mc_morphism,
    modality_comparison_check,
    nabla,
)
from doctrines.doctrine import (
    Doctrine,
    check_one_arrow,
    check_two_arrow,
    identity_one_arrow,
    identity_two_arrow,
)
from doctrines.fincat import (
    NatTransformation,
    compose_functors,
    fin_functor,
    fin_nat,
    identity_functor,
    identity_nat,
    poset_category,
)
from doctrines.interior import InteriorOp, check_interior, identity_interior, stable_subdoctrine
from doctrines.order import (
    MonotoneMap,
    fin_poset,
    identity_map,
    label_subset,
    powerset_poset,
    subset_label,
)

from util import powerset_doctrine_over


def diamond_comonad():
    """Meet-with-`a` comonad on the diamond poset, with a fiber family that
    prunes down to the `q`-component; EM fibers come out as proper suborders."""
    p = fin_poset(["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    base = poset_category(p)
    attach = {"bot": ["p"], "a": ["p", "q"], "b": ["p", "r"], "top": ["p", "q", "r"]}
    fibers = {x: powerset_poset(attach[x]) for x in base.objects}
    reindex = {}
    for t in base.arrow_names():
        x, y = base.src(t), base.dst(t)
        reindex[t] = MonotoneMap(
            fibers[y],
            fibers[x],
            {
                lbl: subset_label(label_subset(lbl) & set(attach[x]), attach[x])
                for lbl in fibers[y].elements
            },
        )
    doc = Doctrine(base, fibers, reindex)
    k = {"bot": "bot", "a": "a", "b": "bot", "top": "a"}
    K = fin_functor(base, base, k, {t: f"{k[base.src(t)]}<={k[base.dst(t)]}" for t in base.arrow_names()})
    mu = fin_nat(K, compose_functors(K, K), {x: f"{k[x]}<={k[x]}" for x in base.objects})
    nu = fin_nat(K, identity_functor(base), {x: f"{k[x]}<={x}" for x in base.objects})
    kappa = {}
    for x in base.objects:
        prune = {"bot": set(), "a": {"q"}, "b": set(), "top": {"q"}}[x]
        kappa[x] = MonotoneMap(
            fibers[x],
            fibers[k[x]],
            {
                lbl: subset_label(label_subset(lbl) & prune, attach[k[x]])
                for lbl in fibers[x].elements
            },
        )
    return DoctrineComonad(doc, K, kappa, mu, nu)


def test_identity_comonad_passes():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1"]})
    assert check_comonad(identity_comonad(d)) == []


def test_diamond_comonad_passes():
    assert check_comonad(diamond_comonad()) == []


def test_diamond_comonad_planted_kappa_fails_iii():
    c = diamond_comonad()
    # inflate kappa at `a` to the identity: counit inequality breaks at {p}
    kappa = dict(c.kappa)
    kappa["a"] = identity_map(c.p.fibers["a"])
    bad = DoctrineComonad(c.p, c.k, kappa, c.mu, c.nu)
    out = check_comonad(bad)
    assert out and any(v.startswith("(iii)") or "naturality" in v for v in out)


def test_em_doctrine_identity_comonad_keeps_fibers():
    d = powerset_doctrine_over({"A": ["a1"]})
    bundle = em_doctrine(identity_comonad(d))
    assert len(bundle.em.base.objects) == 1
    o = bundle.em.base.objects[0]
    assert bundle.em.fibers[o].elements == d.fibers["A"].elements
    assert check_one_arrow(bundle.forgetful) == []
    assert check_two_arrow(bundle.universal) == []


def test_em_doctrine_diamond_fibers_are_proper_suborders():
    c = diamond_comonad()
    bundle = em_doctrine(c)
    carriers = sorted(bundle.coalgebras.carrier.values())
    assert carriers == ["a", "bot"]
    by_carrier = {bundle.coalgebras.carrier[o]: o for o in bundle.em.base.objects}
    assert bundle.em.fibers[by_carrier["a"]].elements == ("{}", "{q}")
    assert bundle.em.fibers[by_carrier["bot"]].elements == ("{}",)


def test_em_adjunction_identity_and_diamond():
    d = powerset_doctrine_over({"A": ["a1"]})
    A = em_adjunction(identity_comonad(d))
    assert check_adjunction(A) == []
    A2 = em_adjunction(diamond_comonad())
    assert check_adjunction(A2) == []


def test_cm_modality_matches_am_of_em_adjunction():
    for c in (identity_comonad(powerset_doctrine_over({"A": ["a1"]})), diamond_comonad()):
        op = cm_modality(c)
        assert check_interior(op) == []
        doc, op2 = am_modality(em_adjunction(c))
        assert doc == op.doctrine
        assert op2 == op


def test_cmd_of_adjunction_roundtrip_data():
    for c in (identity_comonad(powerset_doctrine_over({"A": ["a1"]})), diamond_comonad()):
        back = cmd_of_adjunction(em_adjunction(c))
        assert back.k == c.k
        for y in c.p.base.objects:
            assert back.kappa[y].graph() == c.kappa[y].graph()
        assert back.mu.components == dict(c.mu.components)
        assert back.nu.components == dict(c.nu.components)


def test_cmd_of_adjunction_on_random_verticals(seed=7):
    rng = random.Random(seed)
    for _ in range(5):
        A = random_vertical_adjunction(rng)
        c = cmd_of_adjunction(A)
        assert check_comonad(c) == []
        # em fibers are the stable elements of the induced modality
        from doctrines.adjunction import vertical_modality

        op = vertical_modality(A)
        stable, _ = stable_subdoctrine(op)
        bundle = em_doctrine(c)
        for o in bundle.em.base.objects:
            x = bundle.coalgebras.carrier[o]
            assert bundle.em.fibers[o].elements == stable.fibers[x].elements


def test_comparison_arrow_and_modality_comparison(seed=13):
    rng = random.Random(seed)
    for _ in range(5):
        A = random_vertical_adjunction(rng)
        comp = comparison_arrow(A)
        assert check_one_arrow(comp) == []
        rep = modality_comparison_check(A)
        assert rep["pass"], rep


def test_comparison_identity_adjunction():
    d = powerset_doctrine_over({"A": ["a1"]})
    A = identity_adjunction(d)
    rep = modality_comparison_check(A)
    assert rep["pass"]


def test_mc_and_ma_on_interior_ops():
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1", "b2"]})
    drop = InteriorOp(
        d,
        {
            x: MonotoneMap(d.fibers[x], d.fibers[x], {l: "{}" for l in d.fibers[x].elements})
            for x in d.base.objects
        },
    )
    for op in (identity_interior(d), drop):
        c = mc(op)
        assert check_comonad(c) == []
        A = ma(op)
        assert check_adjunction(A) == []
        assert ma_agrees_with_em_of_mc(op) == []
        # inclusion ⊣ box: inclusion(s) ≤ β ⟺ s ≤ box(β)
        from doctrines.adjunction import galois_violations

        assert galois_violations(A) == []


def test_local_adjunction_checks(seed=19):
    rng = random.Random(seed)
    for _ in range(5):
        A = random_vertical_adjunction(rng)
        rep = local_adjunction_checks(A)
        assert rep["pass"], rep


def test_local_adjunction_checks_identity():
    d = powerset_doctrine_over({"A": ["a1"]})
    rep = local_adjunction_checks(identity_adjunction(d))
    assert rep["pass"], rep


def test_local_adjunction_modal_triangle(seed=19):
    d = powerset_doctrine_over({"A": ["a1"], "B": ["b1", "b2"]})
    drop = InteriorOp(
        d,
        {
            x: MonotoneMap(d.fibers[x], d.fibers[x], {l: "{}" for l in d.fibers[x].elements})
            for x in d.base.objects
        },
    )
    for op in (identity_interior(d), drop):
        rep = local_adjunction_checks_modal(op)
        assert rep["pass"], rep
    # and AM(MA(op)) recovers op on the nose
    for op in (identity_interior(d), drop):
        doc, op2 = am_modality(ma(op))
        assert doc == op.doctrine
        assert op2 == op


def test_cmd_morphism_identity_and_mc_of_modal_arrow():
    d = powerset_doctrine_over({"A": ["a1"]})
    op = identity_interior(d)
    m = mc_morphism(identity_one_arrow(d), op, op)
    assert check_cmd_morphism(m) == []
    cell = CmdTwoCell(m, m, identity_two_arrow(identity_one_arrow(d)))
    assert check_cmd_two_cell(cell) == []


def test_cmd_morphism_broken_theta():
    c = diamond_comonad()
    base = c.p.base
    arrow = identity_one_arrow(c.p)
    # theta with a wrong component: use nu-shaped components (Kx ≤ x arrows)
    theta = NatTransformation(
        compose_functors(arrow.functor, c.k),
        compose_functors(c.k, arrow.functor),
        {x: base.id(c.k.obj_map[x]) for x in base.objects},
    )
    from doctrines.comonad import CmdMorphism

    good = CmdMorphism(c, c, arrow, theta)
    assert check_cmd_morphism(good) == []
    bad_theta = NatTransformation(
        theta.src, theta.dst, dict(theta.components) | {"top": "bot<=a"}
    )
    bad = CmdMorphism(c, c, arrow, bad_theta)
    assert check_cmd_morphism(bad) != []


def test_em_universal_factor_at_forgetful_is_identity():
    c = diamond_comonad()
    bundle = em_doctrine(c)
    factor = em_universal_factor(c, bundle.forgetful, bundle.universal.theta)
    assert factor == identity_one_arrow(bundle.em)


def test_em_universal_factor_of_comparison_data(seed=3):
    A = random_vertical_adjunction(random.Random(seed))
    c = cmd_of_adjunction(A)
    xi = NatTransformation(
        A.left,
        compose_functors(c.k, A.left),
        {x: A.left.arr_map[A.eta.components[x]] for x in A.p.base.objects},
    )
    factor = em_universal_factor(c, left_arrow(A), xi)
    assert factor == comparison_arrow(A)


def test_em_universal_factor_rejects_broken_xi():
    # identity comonad over the Z/2 one-object base: the non-identity arrow is
    # natural (abelian monoid) but fails the counit coherence
    from doctrines.fincat import one_object_monoid_category
    from doctrines.order import antichain_poset

    table = {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "e"}
    base = one_object_monoid_category("*", ["e", "a"], "e", table)
    fiber = antichain_poset(["u", "v"])
    d = Doctrine(
        base,
        {"*": fiber},
        {"e": identity_map(fiber), "a": MonotoneMap(fiber, fiber, {"u": "v", "v": "u"})},
    )
    c = identity_comonad(d)
    x = identity_one_arrow(d)
    xi = NatTransformation(x.functor, compose_functors(c.k, x.functor), {"*": "a"})
    with pytest.raises(ValueError, match="counit coherence"):
        em_universal_factor(c, x, xi)


def test_nabla_on_nonvertical_base_change():
    from doctrines.adjunction import base_change_adjunction
    from doctrines.order import chain_poset

    big = poset_category(chain_poset(["0", "1", "2"]))
    small = poset_category(chain_poset(["0", "2"]))
    up = {"0": "0", "1": "2", "2": "2"}
    L = fin_functor(big, small, up, {a: f"{up[big.src(a)]}<={up[big.dst(a)]}" for a in big.arrow_names()})
    R = fin_functor(small, big, {"0": "0", "2": "2"}, {a: a for a in small.arrow_names()})
    eta = fin_nat(identity_functor(big), compose_functors(R, L), {x: f"{x}<={up[x]}" for x in big.objects})
    eps = fin_nat(compose_functors(L, R), identity_functor(small), {x: f"{x}<={x}" for x in small.objects})
    f0 = powerset_poset(["p"])
    f2 = powerset_poset(["p", "q"])
    Q = Doctrine(
        small,
        {"0": f0, "2": f2},
        {
            small.id("0"): identity_map(f0),
            small.id("2"): identity_map(f2),
            "0<=2": MonotoneMap(f2, f0, {"{}": "{}", "{p}": "{p}", "{q}": "{}", "{p,q}": "{p}"}),
        },
    )
    A = base_change_adjunction(Q, L, R, eta, eps)
    rep = local_adjunction_checks(A)
    assert rep["pass"], rep


def test_unit_comparison_morphism_on_bundled_and_random(seed=47):
    from doctrines.adjunction import check_adj_morphism, am_functor, am_modality
    from doctrines.comonad import unit_comparison_morphism
    from doctrines.interior import check_modal_one_arrow

    cases = [identity_adjunction(powerset_doctrine_over({"A": ["a1"]}))]
    rng = random.Random(seed)
    cases.extend(random_vertical_adjunction(rng) for _ in range(4))
    for A in cases:
        m = unit_comparison_morphism(A)
        assert check_adj_morphism(m) == []
        arrow = am_functor(m)
        _, op_a = am_modality(A)
        _, op_b = am_modality(m.dst)
        # the modal image maps stable elements to stable elements
        assert check_modal_one_arrow(arrow, op_a, op_b) == []


def test_mc_morphism_on_real_modal_arrows():
    from doctrines.instances import constant_family_arrow, forgetful_top_arrow, KripkeFrame
    from doctrines.suite import SPACES

    frame = KripkeFrame(("w1", "w2"), frozenset({("w1", "w1"), ("w2", "w2"), ("w1", "w2")}))
    arrow, op_src, op_dst = constant_family_arrow(frame, {"S": ["s", "t"]})
    m = mc_morphism(arrow, op_src, op_dst)
    assert check_cmd_morphism(m) == []
    arrow2, op2_src, op2_dst = forgetful_top_arrow(list(SPACES))
    m2 = mc_morphism(arrow2, op2_src, op2_dst)
    assert check_cmd_morphism(m2) == []
