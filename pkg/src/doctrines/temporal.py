"""Finite-scale temporal semantics: stream and finitely-branching-tree
coalgebras, the predicate lifts driving a greatest-fixed-point box operator,
independent path/orbit/SCC oracles for G, AG and EG, and the packaging of the
operator as an interior operator over a finite category of coalgebra
homomorphisms.

The operator iterates Ψ(β) = α ∩ step⁻¹(lift(β)) from the full state set, so
it never materializes any infinite unfolding; the oracles decide the same
property by explicit orbit, reachability, or cycle arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .doctrine import Doctrine
from .fincat import fin_category, function_arrow_name
from .interior import InteriorOp
from .order import (
    MonotoneMap,
    label_subset,
    powerset_lattice,
    subset_label,
)


@lru_cache(maxsize=64)
def _cached_powerset_lattice(states: tuple[str, ...]):
    return powerset_lattice(states)


STREAM, TREE = "stream", "tree"
LIFTS = ("stream", "forall", "exists")


@dataclass(frozen=True)
class FCoalgebra:
    """A finite coalgebra: one successor per state (stream) or a finite
    ordered tuple of successors (tree, possibly empty)."""

    name: str
    kind: str  # "stream" | "tree"
    states: tuple[str, ...]
    step: Mapping[str, object]  # state -> state (stream) or tuple of states (tree)

    def successors(self, s: str) -> tuple[str, ...]:
        if self.kind == STREAM:
            return (self.step[s],)
        return tuple(self.step[s])


def coalgebra_violations(c: FCoalgebra) -> list[str]:
    out = []
    if c.kind not in (STREAM, TREE):
        return [f"unknown kind {c.kind}"]
    for s in c.states:
        if s not in c.step:
            out.append(f"step missing at {s}")
        elif c.kind == STREAM and c.step[s] not in c.states:
            out.append(f"stream step leaves the state set at {s}")
        elif c.kind == TREE and any(t not in c.states for t in c.step[s]):
            out.append(f"tree step leaves the state set at {s}")
    return out


def step_satisfies_lift(c: FCoalgebra, lift: str, s: str, beta: frozenset[str]) -> bool:
    """Whether the step at s lands in the lifted predicate."""
    if lift == "stream":
        return c.step[s] in beta
    kids = c.step[s]
    if lift == "forall":
        return all(t in beta for t in kids)
    if lift == "exists":
        return any(t in beta for t in kids)
    raise ValueError(f"unknown lift {lift}")


def default_lift(c: FCoalgebra, lift: str | None) -> str:
    if lift is not None:
        return lift
    return "stream" if c.kind == STREAM else "forall"


def gfp_modality(c: FCoalgebra, lift: str, alpha: frozenset[str]) -> frozenset[str]:
    """Greatest fixed point of Ψ(β) = α ∩ step⁻¹(lift β) on the powerset of
    the state set, computed with the shared fixed-point engine."""
    return gfp_modality_trace(c, lift, alpha)[-1]


def gfp_modality_trace(c: FCoalgebra, lift: str, alpha: frozenset[str]) -> list[frozenset[str]]:
    if not alpha <= set(c.states):
        raise ValueError("alpha mentions unknown states")
    lat = _cached_powerset_lattice(tuple(c.states))
    mapping = {}
    for lbl in lat.carrier.elements:
        beta = label_subset(lbl)
        psi = frozenset(
            s for s in c.states if s in alpha and step_satisfies_lift(c, lift, s, beta)
        )
        mapping[lbl] = subset_label(psi, c.states)
    from .order import gfp_trace

    f = MonotoneMap(lat.carrier, lat.carrier, mapping)
    return [label_subset(lbl) for lbl in gfp_trace(lat, f)]


def g_oracle(c: FCoalgebra, alpha: frozenset[str]) -> frozenset[str]:
    """Orbit oracle for streams: x qualifies iff every iterate stays in alpha."""
    if c.kind != STREAM:
        raise ValueError("g_oracle needs a stream coalgebra")
    out = set()
    for x in c.states:
        seen = []
        cur = x
        ok = True
        while cur not in seen:
            if cur not in alpha:
                ok = False
                break
            seen.append(cur)
            cur = c.step[cur]
        if ok:
            out.add(x)
    return frozenset(out)


def _reachable(c: FCoalgebra, x: str) -> frozenset[str]:
    seen = {x}
    frontier = [x]
    while frontier:
        s = frontier.pop()
        for t in c.successors(s):
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return frozenset(seen)


def ag_oracle(c: FCoalgebra, alpha: frozenset[str]) -> frozenset[str]:
    """Reachability oracle for trees: x qualifies iff everything reachable
    from x (including x) lies in alpha."""
    if c.kind != TREE:
        raise ValueError("ag_oracle needs a tree coalgebra")
    return frozenset(x for x in c.states if _reachable(c, x) <= alpha)


def eg_oracle(c: FCoalgebra, alpha: frozenset[str]) -> frozenset[str]:
    """Cycle oracle for trees: x qualifies iff inside the alpha-induced
    subgraph some cycle is reachable from x; decided by transitive closure,
    independently of the fixed-point iteration."""
    if c.kind != TREE:
        raise ValueError("eg_oracle needs a tree coalgebra")
    nodes = [s for s in c.states if s in alpha]
    reach = {(a, b): False for a in nodes for b in nodes}
    for a in nodes:
        for b in c.successors(a):
            if b in alpha:
                reach[(a, b)] = True
    for k in nodes:
        for a in nodes:
            for b in nodes:
                if reach[(a, k)] and reach[(k, b)]:
                    reach[(a, b)] = True
    cyclic = [s for s in nodes if reach[(s, s)]]
    return frozenset(
        x for x in nodes if any(x == s or reach[(x, s)] for s in cyclic)
    )


def oracle_for(c: FCoalgebra, lift: str, alpha: frozenset[str]) -> frozenset[str]:
    if lift == "stream":
        return g_oracle(c, alpha)
    if lift == "forall":
        return ag_oracle(c, alpha)
    if lift == "exists":
        return eg_oracle(c, alpha)
    raise ValueError(f"unknown lift {lift}")


def coalgebra_homomorphisms(c1: FCoalgebra, c2: FCoalgebra) -> list[dict]:
    """All step-compatible functions, by brute force."""
    if c1.kind != c2.kind:
        return []
    from itertools import product

    out = []
    states = list(c1.states)
    for images in product(c2.states, repeat=len(states)):
        h = dict(zip(states, images))
        ok = True
        for s in states:
            if c1.kind == STREAM:
                if h[c1.step[s]] != c2.step[h[s]]:
                    ok = False
                    break
            else:
                if tuple(h[t] for t in c1.step[s]) != tuple(c2.step[h[s]]):
                    ok = False
                    break
        if ok:
            out.append(h)
    return out


def temporal_doctrine(coalgebras: Sequence[FCoalgebra], lift: str) -> tuple[Doctrine, InteriorOp]:
    """Powerset fibers over the category of coalgebra homomorphisms, with the
    greatest-fixed-point box as operator; naturality across homomorphisms is
    part of the interior-law check."""
    for c in coalgebras:
        bad = coalgebra_violations(c)
        if bad:
            raise ValueError(f"invalid coalgebra {c.name}: " + "; ".join(bad[:3]))
        if lift == "stream" and c.kind != STREAM:
            raise ValueError("stream lift over a non-stream coalgebra")
        if lift in ("forall", "exists") and c.kind != TREE:
            raise ValueError("tree lift over a non-tree coalgebra")
    by_name = {c.name: c for c in coalgebras}
    arrows, graphs = [], {}
    for c1 in coalgebras:
        for c2 in coalgebras:
            for h in coalgebra_homomorphisms(c1, c2):
                n = function_arrow_name(c1.name, c2.name, h, c1.states)
                arrows.append((n, c1.name, c2.name))
                graphs[n] = h
    identities = {
        c.name: function_arrow_name(c.name, c.name, {s: s for s in c.states}, c.states)
        for c in coalgebras
    }
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                comp = {s: graphs[gn][graphs[fn][s]] for s in by_name[fs].states}
                composition[(gn, fn)] = function_arrow_name(fs, gd, comp, by_name[fs].states)
    base = fin_category([c.name for c in coalgebras], arrows, identities, composition)
    from .order import powerset_poset

    fibers = {c.name: powerset_poset(c.states) for c in coalgebras}
    reindex = {}
    for (n, sn, dn) in arrows:
        h = graphs[n]
        reindex[n] = MonotoneMap(
            fibers[dn],
            fibers[sn],
            {
                lbl: subset_label(
                    [s for s in by_name[sn].states if h[s] in label_subset(lbl)],
                    by_name[sn].states,
                )
                for lbl in fibers[dn].elements
            },
        )
    doc = Doctrine(base, fibers, reindex)
    parts = {
        c.name: MonotoneMap(
            fibers[c.name],
            fibers[c.name],
            {
                lbl: subset_label(gfp_modality(c, lift, label_subset(lbl)), c.states)
                for lbl in fibers[c.name].elements
            },
        )
        for c in coalgebras
    }
    return doc, InteriorOp(doc, parts)


def random_coalgebra(rng: random.Random, kind: str, max_states: int, name: str = "M") -> FCoalgebra:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    if kind == STREAM:
        step = {s: states[rng.randrange(n)] for s in states}
    else:
        step = {
            s: tuple(states[rng.randrange(n)] for _ in range(rng.randint(0, 3)))
            for s in states
        }
    return FCoalgebra(name, kind, states, step)


def random_subset(rng: random.Random, states: Sequence[str]) -> frozenset[str]:
    return frozenset(s for s in states if rng.random() < 0.5)
