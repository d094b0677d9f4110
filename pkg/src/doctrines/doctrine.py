"""Doctrines (posets indexed over a finite category), their 1-arrows and
lax 2-arrows, and the derived square/power doctrines used by the connective
modalities.

Reindexing is stored contravariantly: the map attached to an arrow t: X → Y
goes fiber(Y) → fiber(X). All equalities between maps are extensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    compose_functors,
    functor_violations,
    identity_functor,
    identity_nat,
    nat_violations,
)
from .order import (
    FinPoset,
    MonotoneMap,
    compose_maps,
    identity_map,
    monotone_violations,
    product_poset,
)


@dataclass(frozen=True)
class Doctrine:
    base: FinCategory
    fibers: Mapping[str, FinPoset]
    reindex: Mapping[str, MonotoneMap]  # arrow name -> fiber(dst) → fiber(src)

    def fiber(self, x: str) -> FinPoset:
        return self.fibers[x]

    def r(self, arrow: str) -> MonotoneMap:
        return self.reindex[arrow]


def doctrine_violations(d: Doctrine) -> list[str]:
    out = []
    for x in d.base.objects:
        if x not in d.fibers:
            out.append(f"missing fiber at {x}")
    for a in d.base.arrow_names():
        if a not in d.reindex:
            out.append(f"missing reindexing along {a}")
    if out:
        return out
    for a in d.base.arrow_names():
        m = d.reindex[a]
        if m.src != d.fibers[d.base.dst(a)] or m.dst != d.fibers[d.base.src(a)]:
            out.append(f"reindexing along {a} has wrong boundary")
            continue
        out.extend(f"reindexing along {a}: {v}" for v in monotone_violations(m))
    if out:
        return out
    for x in d.base.objects:
        if d.reindex[d.base.id(x)] != identity_map(d.fibers[x]):
            out.append(f"reindex(id_{x}) is not the identity")
    for g in d.base.arrow_names():
        for f in d.base.arrow_names():
            if d.base.dst(f) == d.base.src(g):
                lhs = d.reindex[d.base.comp(g, f)]
                rhs = compose_maps(d.reindex[f], d.reindex[g])
                if lhs != rhs:
                    out.append(f"contravariance fails on ({g},{f})")
    return out


def check_doctrine(d: Doctrine) -> list[str]:
    """Empty list iff identity and composition contravariance laws hold."""
    return doctrine_violations(d)


def valid_doctrine(base, fibers, reindex) -> Doctrine:
    d = Doctrine(base, dict(fibers), dict(reindex))
    bad = doctrine_violations(d)
    if bad:
        raise ValueError("not a doctrine: " + "; ".join(bad[:5]))
    return d


def constant_doctrine(base: FinCategory, fiber: FinPoset) -> Doctrine:
    return Doctrine(
        base,
        {x: fiber for x in base.objects},
        {a: identity_map(fiber) for a in base.arrow_names()},
    )


@dataclass(frozen=True)
class OneArrow:
    """A doctrine morphism ⟨F, f⟩: functor on bases plus a fiberwise family
    f_X: srcfiber(X) → dstfiber(F X), natural in X."""

    src: Doctrine
    dst: Doctrine
    functor: Functor
    parts: Mapping[str, MonotoneMap]

    def at(self, x: str) -> MonotoneMap:
        return self.parts[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneArrow):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.functor == other.functor
            and all(self.parts[x] == other.parts[x] for x in self.src.base.objects)
        )


def one_arrow_violations(a: OneArrow) -> list[str]:
    out = []
    P, Q = a.src, a.dst
    if a.functor.src != P.base or a.functor.dst != Q.base:
        return ["functor boundary mismatch"]
    out.extend("functor: " + v for v in functor_violations(a.functor))
    for x in P.base.objects:
        m = a.parts.get(x)
        if m is None:
            out.append(f"missing fiber map at {x}")
        elif m.src != P.fibers[x] or m.dst != Q.fibers[a.functor.obj_map[x]]:
            out.append(f"fiber map at {x} has wrong boundary")
        else:
            out.extend(f"fiber map at {x}: {v}" for v in monotone_violations(m))
    if out:
        return out
    for t in P.base.arrow_names():
        x, y = P.base.src(t), P.base.dst(t)
        lhs = compose_maps(a.parts[x], P.reindex[t])
        rhs = compose_maps(Q.reindex[a.functor.arr_map[t]], a.parts[y])
        if lhs != rhs:
            out.append(f"naturality fails along {t}")
    return out


def check_one_arrow(a: OneArrow) -> list[str]:
    """Empty list iff the fiber family is natural (as an equality of maps)."""
    return one_arrow_violations(a)


def identity_one_arrow(P: Doctrine) -> OneArrow:
    return OneArrow(
        P, P, identity_functor(P.base), {x: identity_map(P.fibers[x]) for x in P.base.objects}
    )


def compose_one_arrows(b: OneArrow, a: OneArrow) -> OneArrow:
    """b∘a: functor part composes, fiber part is (b at F_a X) ∘ (a at X)."""
    if a.dst != b.src:
        raise ValueError("compose_one_arrows: boundary mismatch")
    return OneArrow(
        a.src,
        b.dst,
        compose_functors(b.functor, a.functor),
        {
            x: compose_maps(b.parts[a.functor.obj_map[x]], a.parts[x])
            for x in a.src.base.objects
        },
    )


@dataclass(frozen=True)
class TwoArrow:
    """A lax 2-cell θ between parallel 1-arrows: natural transformation of the
    functor parts with f_X ≤ Q(θ_X) ∘ f'_X pointwise."""

    src: OneArrow
    dst: OneArrow
    theta: NatTransformation


def two_arrow_violations(t: TwoArrow) -> list[str]:
    out = []
    a, b = t.src, t.dst
    if a.src != b.src or a.dst != b.dst:
        return ["boundary 1-arrows do not share doctrines"]
    if t.theta.src != a.functor or t.theta.dst != b.functor:
        return ["theta has wrong functor boundary"]
    out.extend("theta: " + v for v in nat_violations(t.theta))
    if out:
        return out
    Q = a.dst
    for x in a.src.base.objects:
        fx, gx = a.parts[x], b.parts[x]
        rein = Q.reindex[t.theta.components[x]]
        for alpha in a.src.fibers[x].elements:
            if not Q.fibers[a.functor.obj_map[x]].leq(fx.apply(alpha), rein.apply(gx.apply(alpha))):
                out.append(f"lax inequality fails at ({x},{alpha})")
    return out


def check_two_arrow(t: TwoArrow) -> list[str]:
    return two_arrow_violations(t)


def identity_two_arrow(a: OneArrow) -> TwoArrow:
    return TwoArrow(a, a, identity_nat(a.functor))


def vertical_compose_two_arrows(z: TwoArrow, t: TwoArrow) -> TwoArrow:
    """Componentwise composite of t: a ⇒ a' and z: a' ⇒ a''."""
    if t.dst != z.src:
        raise ValueError("vertical_compose_two_arrows: middle 1-arrow mismatch")
    D = t.src.dst.base
    theta = NatTransformation(
        t.theta.src,
        z.theta.dst,
        {
            x: D.comp(z.theta.components[x], t.theta.components[x])
            for x in t.src.src.base.objects
        },
    )
    return TwoArrow(t.src, z.dst, theta)


def whisker_arrow_two(b: OneArrow, t: TwoArrow) -> TwoArrow:
    """Left whiskering b·t for b composable after both boundaries of t."""
    theta = NatTransformation(
        compose_functors(b.functor, t.src.functor),
        compose_functors(b.functor, t.dst.functor),
        {x: b.functor.arr_map[t.theta.components[x]] for x in t.src.src.base.objects},
    )
    return TwoArrow(compose_one_arrows(b, t.src), compose_one_arrows(b, t.dst), theta)


def whisker_two_arrow(t: TwoArrow, a: OneArrow) -> TwoArrow:
    """Right whiskering t·a for a composable before both boundaries of t."""
    theta = NatTransformation(
        compose_functors(t.src.functor, a.functor),
        compose_functors(t.dst.functor, a.functor),
        {x: t.theta.components[a.functor.obj_map[x]] for x in a.src.base.objects},
    )
    return TwoArrow(compose_one_arrows(t.src, a), compose_one_arrows(t.dst, a), theta)


def pair_label(a: str, b: str) -> str:
    return f"({a}|{b})"


def square_doctrine(P: Doctrine) -> tuple[Doctrine, OneArrow]:
    """The doctrine of componentwise-ordered pairs, with the diagonal 1-arrow."""
    fibers = {x: product_poset(P.fibers[x], P.fibers[x], pair_label) for x in P.base.objects}
    reindex = {}
    for t in P.base.arrow_names():
        x, y = P.base.src(t), P.base.dst(t)
        m = P.reindex[t]
        reindex[t] = MonotoneMap(
            fibers[y],
            fibers[x],
            {
                pair_label(a, b): pair_label(m.apply(a), m.apply(b))
                for a in P.fibers[y].elements
                for b in P.fibers[y].elements
            },
        )
    squared = Doctrine(P.base, fibers, reindex)
    diagonal = OneArrow(
        P,
        squared,
        identity_functor(P.base),
        {
            x: MonotoneMap(
                P.fibers[x], fibers[x], {a: pair_label(a, a) for a in P.fibers[x].elements}
            )
            for x in P.base.objects
        },
    )
    return squared, diagonal


class ProductData(NamedTuple):
    """Chosen binary product of a base object with the fixed object: the
    product object, both projections, and the pairing of elements (used by
    set-level instances to decode product carriers)."""

    prod_obj: str
    proj1: str
    proj2: str
    pair: Mapping[tuple[str, str], str]  # (left element, right element) -> product element


def restrict_doctrine(P: Doctrine, sub: FinCategory) -> Doctrine:
    """P over a subcategory of its base (objects and arrows must belong to it)."""
    return Doctrine(
        sub,
        {x: P.fibers[x] for x in sub.objects},
        {a: P.reindex[a] for a in sub.arrow_names()},
    )


def power_doctrine(
    P: Doctrine,
    sub: FinCategory,
    x_obj: str,
    products: Mapping[str, ProductData],
    times: Mapping[str, str],
) -> tuple[Doctrine, OneArrow]:
    """The doctrine Y ↦ P(Y×X) over `sub` with reindexing along f×id_X, plus
    the weakening 1-arrow built from the first projections.

    `sub` is the part of P's base where chosen products with `x_obj` are
    supplied: `products[Y]` gives the product of Y with X inside P's base,
    `times[f]` gives the chosen arrow f×id_X for every arrow f of `sub`.
    """
    for y in sub.objects:
        if y not in products:
            raise ValueError(f"product data missing for ({y},{x_obj})")
        pd = products[y]
        if P.base.src(pd.proj1) != pd.prod_obj or P.base.dst(pd.proj1) != y:
            raise ValueError(f"first projection for {y} has wrong boundary")
        if P.base.src(pd.proj2) != pd.prod_obj or P.base.dst(pd.proj2) != x_obj:
            raise ValueError(f"second projection for {y} has wrong boundary")
    for f in sub.arrow_names():
        if f not in times:
            raise ValueError(f"product data missing arrow {f}×id")
        y, z = sub.src(f), sub.dst(f)
        fx = times[f]
        if P.base.src(fx) != products[y].prod_obj or P.base.dst(fx) != products[z].prod_obj:
            raise ValueError(f"{f}×id has wrong boundary")
        if P.base.comp(products[z].proj1, fx) != P.base.comp(f, products[y].proj1):
            raise ValueError(f"{f}×id does not commute with first projections")
        if P.base.comp(products[z].proj2, fx) != products[y].proj2:
            raise ValueError(f"{f}×id does not commute with second projections")
    fibers = {y: P.fibers[products[y].prod_obj] for y in sub.objects}
    reindex = {f: P.reindex[times[f]] for f in sub.arrow_names()}
    powered = Doctrine(sub, fibers, reindex)
    weakening = OneArrow(
        restrict_doctrine(P, sub),
        powered,
        identity_functor(sub),
        {y: P.reindex[products[y].proj1] for y in sub.objects},
    )
    return powered, weakening
