"""Interior modal operators on doctrines: the T/4 law suite, stable elements,
the stable subdoctrine, and morphisms that respect the operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .doctrine import Doctrine, OneArrow, one_arrow_violations
from .fincat import identity_functor
from .order import MonotoneMap, compose_maps, identity_map, monotone_violations, sub_poset


@dataclass(frozen=True)
class InteriorOp:
    """A natural family of monotone fiber endomaps that is deflationary (T)
    and satisfies the 4 axiom, hence is idempotent."""

    doctrine: Doctrine
    parts: Mapping[str, MonotoneMap]

    def at(self, x: str) -> MonotoneMap:
        return self.parts[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, InteriorOp):
            return NotImplemented
        return self.doctrine == other.doctrine and all(
            self.parts[x] == other.parts[x] for x in self.doctrine.base.objects
        )


def identity_interior(P: Doctrine) -> InteriorOp:
    return InteriorOp(P, {x: identity_map(P.fibers[x]) for x in P.base.objects})


def interior_violations(op: InteriorOp) -> list[str]:
    out = []
    P = op.doctrine
    for x in P.base.objects:
        m = op.parts.get(x)
        if m is None:
            out.append(f"missing box at {x}")
        elif m.src != P.fibers[x] or m.dst != P.fibers[x]:
            out.append(f"box at {x} is not a fiber endomap")
        else:
            out.extend(f"box at {x}: {v}" for v in monotone_violations(m))
    if out:
        return out
    for t in P.base.arrow_names():
        x, y = P.base.src(t), P.base.dst(t)
        if compose_maps(op.parts[x], P.reindex[t]) != compose_maps(P.reindex[t], op.parts[y]):
            out.append(f"naturality fails along {t}")
    for x in P.base.objects:
        box = op.parts[x]
        fib = P.fibers[x]
        for a in fib.elements:
            if not fib.leq(box.apply(a), a):
                out.append(f"axiom T fails at ({x},{a})")
            if not fib.leq(box.apply(a), box.apply(box.apply(a))):
                out.append(f"axiom 4 fails at ({x},{a})")
    if out:
        return out
    # idempotence is a consequence of T and 4; recheck it anyway
    for x in P.base.objects:
        box = op.parts[x]
        if compose_maps(box, box) != box:
            out.append(f"idempotence fails at {x}")
    return out


def check_interior(op: InteriorOp) -> list[str]:
    """Empty list iff naturality, T, and 4 hold everywhere (idempotence rechecked)."""
    return interior_violations(op)


def stable_elements(op: InteriorOp, x: str) -> tuple[str, ...]:
    """Fixed points of the box at x; equals the image of the box."""
    box = op.parts[x]
    fixed = tuple(a for a in op.doctrine.fibers[x].elements if box.apply(a) == a)
    image = tuple(sorted({box.apply(a) for a in op.doctrine.fibers[x].elements},
                         key=op.doctrine.fibers[x].index))
    assert fixed == image, "image of an interior operator must equal its fixed points"
    return fixed


def stable_subdoctrine(op: InteriorOp) -> tuple[Doctrine, OneArrow]:
    """The doctrine of box-stable elements over the same base, with its
    inclusion 1-arrow; reindexing is the restriction of the ambient one."""
    P = op.doctrine
    fibers = {x: sub_poset(P.fibers[x], stable_elements(op, x)) for x in P.base.objects}
    reindex = {}
    for t in P.base.arrow_names():
        x, y = P.base.src(t), P.base.dst(t)
        m = P.reindex[t]
        mapping = {}
        for a in fibers[y].elements:
            img = m.apply(a)
            # naturality makes this impossible to break; keep the guard anyway
            assert img in fibers[x].elements, f"reindexing along {t} does not preserve stability"
            mapping[a] = img
        reindex[t] = MonotoneMap(fibers[y], fibers[x], mapping)
    stable = Doctrine(P.base, fibers, reindex)
    inclusion = OneArrow(
        stable,
        P,
        identity_functor(P.base),
        {
            x: MonotoneMap(fibers[x], P.fibers[x], {a: a for a in fibers[x].elements})
            for x in P.base.objects
        },
    )
    return stable, inclusion


def modal_one_arrow_violations(a: OneArrow, op_src: InteriorOp, op_dst: InteriorOp) -> list[str]:
    out = list(one_arrow_violations(a))
    if out:
        return out
    if op_src.doctrine != a.src or op_dst.doctrine != a.dst:
        return ["operators do not live on the arrow's doctrines"]
    F = a.functor
    for x in a.src.base.objects:
        fx = a.parts[x]
        box = op_src.parts[x]
        box2 = op_dst.parts[F.obj_map[x]]
        fib2 = a.dst.fibers[F.obj_map[x]]
        for alpha in a.src.fibers[x].elements:
            if not fib2.leq(fx.apply(box.apply(alpha)), box2.apply(fx.apply(alpha))):
                out.append(f"modal inequality fails at ({x},{alpha})")
    if out:
        return out
    # equivalent reading: f maps stable elements to stable elements
    for x in a.src.base.objects:
        fx = a.parts[x]
        box = op_src.parts[x]
        box2 = op_dst.parts[F.obj_map[x]]
        for alpha in a.src.fibers[x].elements:
            lhs = box2.apply(fx.apply(box.apply(alpha)))
            rhs = fx.apply(box.apply(alpha))
            if lhs != rhs:
                out.append(f"stability preservation fails at ({x},{alpha})")
    return out


def check_modal_one_arrow(a: OneArrow, op_src: InteriorOp, op_dst: InteriorOp) -> list[str]:
    """Empty list iff f_X ∘ box_X ≤ box'_{FX} ∘ f_X everywhere; also verifies
    the equivalent stability-preservation equality."""
    return modal_one_arrow_violations(a, op_src, op_dst)
