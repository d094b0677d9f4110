import random
from itertools import chain, combinations

import pytest

from doctrines.doctrine import check_doctrine
from doctrines.interior import check_interior
from doctrines.order import label_subset, subset_label
from doctrines.temporal import (
    FCoalgebra,
    ag_oracle,
    coalgebra_homomorphisms,
    eg_oracle,
    g_oracle,
    gfp_modality,
    gfp_modality_trace,
    oracle_for,
    random_coalgebra,
    random_subset,
    temporal_doctrine,
)


STREAM2 = FCoalgebra("A", "stream", ("s0", "s1"), {"s0": "s1", "s1": "s1"})
TREE3 = FCoalgebra(
    "T", "tree", ("s0", "s1", "s2"), {"s0": ("s1", "s2"), "s1": ("s1",), "s2": ()}
)


def all_subsets(states):
    return [frozenset(c) for c in chain.from_iterable(combinations(states, r) for r in range(len(states) + 1))]


def test_stream_example_from_orbit():
    # orbit of s0 reaches s1, which is outside alpha
    assert gfp_modality(STREAM2, "stream", frozenset({"s0"})) == frozenset()
    assert g_oracle(STREAM2, frozenset({"s0"})) == frozenset()
    # alpha = everything: top is a fixed point
    assert gfp_modality(STREAM2, "stream", frozenset({"s0", "s1"})) == {"s0", "s1"}


def test_tree_exists_example():
    alpha = frozenset({"s0", "s1"})
    assert eg_oracle(TREE3, alpha) == {"s0", "s1"}
    assert gfp_modality(TREE3, "exists", alpha) == {"s0", "s1"}


def test_tree_forall_examples():
    # leaf in alpha is included: no successors
    assert ag_oracle(TREE3, frozenset({"s2"})) == {"s2"}
    assert ag_oracle(TREE3, frozenset(TREE3.states)) == set(TREE3.states)
    # s0 reaches the leaf s2; dropping s2 excludes s0
    assert ag_oracle(TREE3, frozenset({"s0", "s1"})) == {"s1"}
    assert gfp_modality(TREE3, "forall", frozenset({"s0", "s1"})) == {"s1"}


def test_eg_empty_alpha_and_self_loop():
    assert eg_oracle(TREE3, frozenset()) == frozenset()
    loop = FCoalgebra("L", "tree", ("x",), {"x": ("x",)})
    assert eg_oracle(loop, frozenset({"x"})) == {"x"}


def test_g_oracle_three_cycle():
    cyc = FCoalgebra("C", "stream", ("a", "b", "c"), {"a": "b", "b": "c", "c": "a"})
    assert g_oracle(cyc, frozenset({"a", "b"})) == frozenset()
    assert g_oracle(cyc, frozenset({"a", "b", "c"})) == {"a", "b", "c"}


def test_gfp_equals_oracles_exhaustively_small():
    rng = random.Random(5)
    cases = [(STREAM2, "stream"), (TREE3, "forall"), (TREE3, "exists")]
    for _ in range(8):
        cases.append((random_coalgebra(rng, "stream", 5, "R"), "stream"))
        t = random_coalgebra(rng, "tree", 5, "R")
        cases.append((t, "forall"))
        cases.append((t, "exists"))
    for c, lift in cases:
        for alpha in all_subsets(c.states):
            assert gfp_modality(c, lift, alpha) == oracle_for(c, lift, alpha)


def test_gfp_iteration_bound_and_deflationary():
    rng = random.Random(9)
    for _ in range(30):
        kind = "stream" if rng.random() < 0.5 else "tree"
        c = random_coalgebra(rng, kind, 8, "R")
        lift = "stream" if kind == "stream" else ("forall" if rng.random() < 0.5 else "exists")
        alpha = random_subset(rng, c.states)
        trace = gfp_modality_trace(c, lift, alpha)
        # trace includes the start at top and the repeated fixpoint entry
        assert len(trace) - 2 <= len(c.states) + 1
        out = trace[-1]
        assert out <= alpha
        assert gfp_modality(c, lift, out) == out


def test_monotone_in_alpha():
    rng = random.Random(13)
    for _ in range(20):
        c = random_coalgebra(rng, "tree", 6, "R")
        small = random_subset(rng, c.states)
        big = small | random_subset(rng, c.states)
        for lift in ("forall", "exists"):
            assert gfp_modality(c, lift, small) <= gfp_modality(c, lift, big)


def test_temporal_doctrine_single_coalgebra():
    doc, op = temporal_doctrine([STREAM2], "stream")
    assert check_doctrine(doc) == []
    assert check_interior(op) == []


def test_temporal_doctrine_with_quotient_homomorphism():
    a = FCoalgebra("A", "stream", ("s0", "s1"), {"s0": "s1", "s1": "s0"})
    b = FCoalgebra("B", "stream", ("t",), {"t": "t"})
    homs = coalgebra_homomorphisms(a, b)
    assert {"s0": "t", "s1": "t"} in homs
    doc, op = temporal_doctrine([a, b], "stream")
    assert check_doctrine(doc) == []
    assert check_interior(op) == []


def test_temporal_doctrine_trees_both_lifts():
    t2 = FCoalgebra("S", "tree", ("u", "v"), {"u": ("v", "v"), "v": ("v",)})
    for lift in ("forall", "exists"):
        doc, op = temporal_doctrine([TREE3, t2], lift)
        assert check_doctrine(doc) == []
        assert check_interior(op) == []


def test_random_suite_oracle_equivalence_seeded():
    rng = random.Random(7)
    for i in range(100):
        kind = "stream" if i % 2 == 0 else "tree"
        c = random_coalgebra(rng, kind, 8, f"M{i}")
        lift = "stream" if kind == "stream" else ("forall" if i % 4 == 1 else "exists")
        for _ in range(6):
            alpha = random_subset(rng, c.states)
            assert gfp_modality(c, lift, alpha) == oracle_for(c, lift, alpha)


def test_lift_kind_mismatch_rejected():
    with pytest.raises(ValueError):
        temporal_doctrine([STREAM2], "forall")
    with pytest.raises(ValueError):
        g_oracle(TREE3, frozenset())
