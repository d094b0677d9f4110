"""Adjunctions between doctrines, the induced interior modalities, the
vertical/base-change factorization, the refined factorization through the
stable subdoctrine, triviality dichotomies, and adjunction morphisms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .doctrine import (
    Doctrine,
    OneArrow,
    TwoArrow,
    compose_one_arrows,
    identity_one_arrow,
    one_arrow_violations,
    two_arrow_violations,
)
from .fincat import (
    Functor,
    NatTransformation,
    adjunction_cat,
    compose_functors,
    discrete_category,
    identity_functor,
    identity_nat,
)
from .interior import InteriorOp, interior_violations, stable_subdoctrine
from .order import (
    MonotoneMap,
    compose_maps,
    identity_map,
    label_subset,
    powerset_poset,
    subset_label,
)


@dataclass(frozen=True)
class DoctrineAdjunction:
    """The octuple presentation of an adjunction between doctrines."""

    p: Doctrine
    q: Doctrine
    left: Functor
    lam: Mapping[str, MonotoneMap]  # X -> P X → Q(L X)
    right: Functor
    rho: Mapping[str, MonotoneMap]  # Y -> Q Y → P(R Y)
    eta: NatTransformation  # Id ⇒ R L
    eps: NatTransformation  # L R ⇒ Id


def left_arrow(A: DoctrineAdjunction) -> OneArrow:
    return OneArrow(A.p, A.q, A.left, dict(A.lam))


def right_arrow(A: DoctrineAdjunction) -> OneArrow:
    return OneArrow(A.q, A.p, A.right, dict(A.rho))


def eta_two_arrow(A: DoctrineAdjunction) -> TwoArrow:
    return TwoArrow(
        identity_one_arrow(A.p),
        compose_one_arrows(right_arrow(A), left_arrow(A)),
        A.eta,
    )


def eps_two_arrow(A: DoctrineAdjunction) -> TwoArrow:
    return TwoArrow(
        compose_one_arrows(left_arrow(A), right_arrow(A)),
        identity_one_arrow(A.q),
        A.eps,
    )


def adjunction_violations(A: DoctrineAdjunction) -> list[str]:
    out = []
    if A.left.src != A.p.base or A.left.dst != A.q.base:
        return ["(i) left functor boundary mismatch"]
    if A.right.src != A.q.base or A.right.dst != A.p.base:
        return ["(i) right functor boundary mismatch"]
    out.extend("(i) " + v for v in adjunction_cat(A.left, A.right, A.eta, A.eps))
    if out:
        return out
    out.extend("(ii) left: " + v for v in one_arrow_violations(left_arrow(A)))
    out.extend("(ii) right: " + v for v in one_arrow_violations(right_arrow(A)))
    if out:
        return out
    out.extend("(iii) eta: " + v for v in two_arrow_violations(eta_two_arrow(A)))
    out.extend("(iii) eps: " + v for v in two_arrow_violations(eps_two_arrow(A)))
    return out


def check_adjunction(A: DoctrineAdjunction) -> list[str]:
    """Empty list iff the Cat adjunction, both 1-arrows, and both lax 2-arrows
    are valid; violations carry (i)/(ii)/(iii) tags with witnesses."""
    return adjunction_violations(A)


def identity_adjunction(P: Doctrine) -> DoctrineAdjunction:
    i = identity_functor(P.base)
    ids = {x: identity_map(P.fibers[x]) for x in P.base.objects}
    return DoctrineAdjunction(P, P, i, ids, i, dict(ids), identity_nat(i), identity_nat(i))


def vertical_adjunction(P: Doctrine, Q: Doctrine, lam, rho) -> DoctrineAdjunction:
    """Identity base functors and identity unit/counit."""
    if P.base != Q.base:
        raise ValueError("vertical adjunction needs a shared base")
    i = identity_functor(P.base)
    return DoctrineAdjunction(P, Q, i, dict(lam), i, dict(rho), identity_nat(i), identity_nat(i))


def is_vertical(A: DoctrineAdjunction) -> bool:
    i = identity_functor(A.p.base)
    return (
        A.p.base == A.q.base
        and A.left == i
        and A.right == i
        and A.eta == identity_nat(i)
        and A.eps == identity_nat(i)
    )


def galois_violations(A: DoctrineAdjunction) -> list[str]:
    """Fiberwise adjunction λ_X(α) ≤ β ⟺ α ≤ ρ_X(β), for vertical A."""
    out = []
    for x in A.p.base.objects:
        lam, rho = A.lam[x], A.rho[x]
        pf, qf = A.p.fibers[x], A.q.fibers[x]
        for a in pf.elements:
            for b in qf.elements:
                if qf.leq(lam.apply(a), b) != pf.leq(a, rho.apply(b)):
                    out.append(f"galois fails at ({x},{a},{b})")
    return out


def vertical_modality(A: DoctrineAdjunction) -> InteriorOp:
    """The interior operator λ∘ρ on Q for a vertical adjunction; the fiberwise
    Galois property is verified along the way."""
    if not is_vertical(A):
        raise ValueError("vertical_modality requires identity base functors and identity unit/counit")
    bad = adjunction_violations(A)
    if bad:
        raise ValueError("invalid adjunction: " + "; ".join(bad[:3]))
    bad = galois_violations(A)
    if bad:
        raise ValueError("; ".join(bad[:3]))
    parts = {x: compose_maps(A.lam[x], A.rho[x]) for x in A.q.base.objects}
    op = InteriorOp(A.q, parts)
    bad = interior_violations(op)
    if bad:
        raise ValueError("vertical modality is not interior: " + "; ".join(bad[:3]))
    return op


def am_doctrine(A: DoctrineAdjunction) -> Doctrine:
    """The doctrine X ↦ Q(L X) over the base of P."""
    base = A.p.base
    return Doctrine(
        base,
        {x: A.q.fibers[A.left.obj_map[x]] for x in base.objects},
        {t: A.q.reindex[A.left.arr_map[t]] for t in base.arrow_names()},
    )


def am_modality(A: DoctrineAdjunction) -> tuple[Doctrine, InteriorOp]:
    """The interior operator λ ∘ P(η) ∘ (ρ at L−) on the doctrine X ↦ Q(L X)."""
    bad = adjunction_violations(A)
    if bad:
        raise ValueError("invalid adjunction: " + "; ".join(bad[:3]))
    doc = am_doctrine(A)
    parts = {}
    for x in A.p.base.objects:
        lx = A.left.obj_map[x]
        parts[x] = compose_maps(
            A.lam[x], compose_maps(A.p.reindex[A.eta.components[x]], A.rho[lx])
        )
    op = InteriorOp(doc, parts)
    bad = interior_violations(op)
    if bad:
        raise ValueError("induced modality is not interior: " + "; ".join(bad[:3]))
    return doc, op


def base_change_adjunction(
    Q: Doctrine, L: Functor, R: Functor, eta: NatTransformation, eps: NatTransformation
) -> DoctrineAdjunction:
    """Lift a Cat-adjunction on bases to the adjunction ⟨QL, Q, L, id, R, Qε⟩."""
    bad = adjunction_cat(L, R, eta, eps)
    if bad:
        raise ValueError("base adjunction invalid: " + "; ".join(bad[:3]))
    p = Doctrine(
        L.src,
        {x: Q.fibers[L.obj_map[x]] for x in L.src.objects},
        {t: Q.reindex[L.arr_map[t]] for t in L.src.arrow_names()},
    )
    lam = {x: identity_map(Q.fibers[L.obj_map[x]]) for x in L.src.objects}
    rho = {y: Q.reindex[eps.components[y]] for y in Q.base.objects}
    return DoctrineAdjunction(p, Q, L, lam, R, rho, eta, eps)


def factorize(A: DoctrineAdjunction) -> tuple[DoctrineAdjunction, DoctrineAdjunction]:
    """Split A into a vertical adjunction into QL followed by the base-change
    adjunction; composing the two legs gives back A's 1-arrows on the nose."""
    bad = adjunction_violations(A)
    if bad:
        raise ValueError("invalid adjunction: " + "; ".join(bad[:3]))
    ql = am_doctrine(A)
    rho_prime = {}
    for x in A.p.base.objects:
        lx = A.left.obj_map[x]
        rho_prime[x] = compose_maps(A.p.reindex[A.eta.components[x]], A.rho[lx])
    vertical = vertical_adjunction(A.p, ql, dict(A.lam), rho_prime)
    base_change = base_change_adjunction(A.q, A.left, A.right, A.eta, A.eps)
    return vertical, base_change


def factorization_composites_agree(A: DoctrineAdjunction) -> list[str]:
    vertical, base_change = factorize(A)
    out = []
    if compose_one_arrows(left_arrow(base_change), left_arrow(vertical)) != left_arrow(A):
        out.append("left composite differs from the original left 1-arrow")
    if compose_one_arrows(right_arrow(vertical), right_arrow(base_change)) != right_arrow(A):
        out.append("right composite differs from the original right 1-arrow")
    return out


def triviality_checks(A: DoctrineAdjunction) -> dict:
    """For a vertical adjunction: λρλ=λ, ρλρ=ρ, and both dichotomies
    (λρ=id ⟺ ρ injective ⟺ λ surjective, and the dual), all by enumeration."""
    if not is_vertical(A):
        raise ValueError("triviality_checks requires a vertical adjunction")
    bad = adjunction_violations(A)
    if bad:
        raise ValueError("invalid adjunction: " + "; ".join(bad[:3]))
    report: dict = {"absorption": [], "dichotomy_lr": {}, "dichotomy_rl": {}}
    for x in A.p.base.objects:
        lam, rho = A.lam[x], A.rho[x]
        if compose_maps(lam, compose_maps(rho, lam)) != lam:
            report["absorption"].append(f"lam.rho.lam != lam at {x}")
        if compose_maps(rho, compose_maps(lam, rho)) != rho:
            report["absorption"].append(f"rho.lam.rho != rho at {x}")
        lr_id = compose_maps(lam, rho) == identity_map(A.q.fibers[x])
        rho_inj = len({rho.apply(b) for b in A.q.fibers[x].elements}) == len(A.q.fibers[x].elements)
        lam_surj = {lam.apply(a) for a in A.p.fibers[x].elements} == set(A.q.fibers[x].elements)
        report["dichotomy_lr"][x] = {
            "lr_identity": lr_id,
            "rho_injective": rho_inj,
            "lambda_surjective": lam_surj,
            "consistent": lr_id == rho_inj == lam_surj,
        }
        rl_id = compose_maps(rho, lam) == identity_map(A.p.fibers[x])
        lam_inj = len({lam.apply(a) for a in A.p.fibers[x].elements}) == len(A.p.fibers[x].elements)
        rho_surj = {rho.apply(b) for b in A.q.fibers[x].elements} == set(A.p.fibers[x].elements)
        report["dichotomy_rl"][x] = {
            "rl_identity": rl_id,
            "lambda_injective": lam_inj,
            "rho_surjective": rho_surj,
            "consistent": rl_id == lam_inj == rho_surj,
        }
    report["pass"] = not report["absorption"] and all(
        v["consistent"] for v in report["dichotomy_lr"].values()
    ) and all(v["consistent"] for v in report["dichotomy_rl"].values())
    return report


def factorize2_report(A: DoctrineAdjunction) -> dict:
    """The refined factorization through the stable subdoctrine: per-object
    surjectivity of λ onto the stable fibers, injectivity of P(η)∘ρL on them,
    the four commuting composites, the box restricting to the identity, and
    the two new adjunctions of the diagram."""
    ql, op = am_modality(A)
    stable, inclusion = stable_subdoctrine(op)
    vertical, base_change = factorize(A)
    rho_prime = vertical.rho

    surj: dict = {}
    inj: dict = {}
    for x in A.p.base.objects:
        image = {A.lam[x].apply(a) for a in A.p.fibers[x].elements}
        missed = [s for s in stable.fibers[x].elements if s not in image]
        extra = [s for s in sorted(image) if s not in stable.fibers[x].elements]
        surj[x] = {"holds": not missed and not extra, "missed": missed, "outside_stable": extra}
        seen: dict = {}
        collisions = []
        for s in stable.fibers[x].elements:
            v = rho_prime[x].apply(s)
            if v in seen:
                collisions.append((seen[v], s))
            seen[v] = s
        inj[x] = {"holds": not collisions, "collisions": collisions}

    lam_bar = {
        x: MonotoneMap(
            A.p.fibers[x],
            stable.fibers[x],
            {a: A.lam[x].apply(a) for a in A.p.fibers[x].elements},
        )
        for x in A.p.base.objects
    }
    rho_bar = {
        x: MonotoneMap(
            stable.fibers[x],
            A.p.fibers[x],
            {s: rho_prime[x].apply(s) for s in stable.fibers[x].elements},
        )
        for x in A.p.base.objects
    }
    upper_left = vertical_adjunction(A.p, stable, lam_bar, rho_bar)

    u_arrow = {
        x: MonotoneMap(
            stable.fibers[x],
            A.q.fibers[A.left.obj_map[x]],
            {s: s for s in stable.fibers[x].elements},
        )
        for x in A.p.base.objects
    }
    rho_upper = {}
    for y in A.q.base.objects:
        ry = A.right.obj_map[y]
        into_ql = A.q.reindex[A.eps.components[y]]
        boxed = compose_maps(op.parts[ry], into_ql)
        rho_upper[y] = MonotoneMap(
            A.q.fibers[y],
            stable.fibers[ry],
            {b: boxed.apply(b) for b in A.q.fibers[y].elements},
        )
    upper_right = DoctrineAdjunction(
        stable, A.q, A.left, u_arrow, A.right, rho_upper, A.eta, A.eps
    )

    squares = {
        "top_left_then_top_right_equals_left": [],
        "bottom_left_then_bottom_right_equals_left": [],
        "top_right_then_top_left_adjoints_equal_right": [],
        "bottom_right_then_bottom_left_adjoints_equal_right": [],
    }
    top = compose_one_arrows(left_arrow(upper_right), left_arrow(upper_left))
    if top != left_arrow(A):
        squares["top_left_then_top_right_equals_left"].append("composite differs")
    bottom = compose_one_arrows(left_arrow(base_change), left_arrow(vertical))
    if bottom != left_arrow(A):
        squares["bottom_left_then_bottom_right_equals_left"].append("composite differs")
    top_r = compose_one_arrows(right_arrow(upper_left), right_arrow(upper_right))
    if top_r != right_arrow(A):
        squares["top_right_then_top_left_adjoints_equal_right"].append("composite differs")
    bottom_r = compose_one_arrows(right_arrow(vertical), right_arrow(base_change))
    if bottom_r != right_arrow(A):
        squares["bottom_right_then_bottom_left_adjoints_equal_right"].append("composite differs")

    box_id = []
    for x in A.p.base.objects:
        for s in stable.fibers[x].elements:
            if op.parts[x].apply(s) != s:
                box_id.append(f"box not identity on stable element ({x},{s})")

    report = {
        "lambda_surjective_onto_stable": surj,
        "eta_rho_injective_on_stable": inj,
        "squares": squares,
        "box_identity_on_stable": box_id,
        "upper_left_adjunction": adjunction_violations(upper_left),
        "upper_right_adjunction": adjunction_violations(upper_right),
    }
    report["pass"] = (
        all(v["holds"] for v in surj.values())
        and all(v["holds"] for v in inj.values())
        and not any(squares.values())
        and not box_id
        and not report["upper_left_adjunction"]
        and not report["upper_right_adjunction"]
    )
    return report


@dataclass(frozen=True)
class AdjMorphism:
    """A homomorphism of doctrine adjunctions ⟨F, f, G, g, θ⟩."""

    src: DoctrineAdjunction
    dst: DoctrineAdjunction
    fun_p: Functor
    parts_p: Mapping[str, MonotoneMap]
    fun_q: Functor
    parts_q: Mapping[str, MonotoneMap]
    theta: NatTransformation  # F R^A ⇒ R^B G


def p_arrow(m: AdjMorphism) -> OneArrow:
    return OneArrow(m.src.p, m.dst.p, m.fun_p, dict(m.parts_p))


def q_arrow(m: AdjMorphism) -> OneArrow:
    return OneArrow(m.src.q, m.dst.q, m.fun_q, dict(m.parts_q))


def adj_morphism_violations(m: AdjMorphism) -> list[str]:
    out = []
    out.extend("p-arrow: " + v for v in one_arrow_violations(p_arrow(m)))
    out.extend("q-arrow: " + v for v in one_arrow_violations(q_arrow(m)))
    if out:
        return out
    A, B = m.src, m.dst
    if compose_functors(m.fun_q, A.left) != compose_functors(B.left, m.fun_p):
        out.append("G L^A != L^B F")
        return out
    basePB = B.p.base
    for x in A.p.base.objects:
        lhs = basePB.comp(m.theta.components[A.left.obj_map[x]], m.fun_p.arr_map[A.eta.components[x]])
        rhs = B.eta.components[m.fun_p.obj_map[x]]
        if lhs != rhs:
            out.append(f"eta square fails at {x}")
    baseQB = B.q.base
    for y in A.q.base.objects:
        lhs = baseQB.comp(B.eps.components[m.fun_q.obj_map[y]], B.left.arr_map[m.theta.components[y]])
        rhs = m.fun_q.arr_map[A.eps.components[y]]
        if lhs != rhs:
            out.append(f"eps square fails at {y}")
    if out:
        return out
    left = compose_one_arrows(p_arrow(m), right_arrow(A))
    right = compose_one_arrows(right_arrow(B), q_arrow(m))
    out.extend("theta: " + v for v in two_arrow_violations(TwoArrow(left, right, m.theta)))
    for x in A.p.base.objects:
        lhs = compose_maps(m.parts_q[A.left.obj_map[x]], A.lam[x])
        rhs = compose_maps(B.lam[m.fun_p.obj_map[x]], m.parts_p[x])
        if lhs != rhs:
            out.append(f"lambda coincidence fails at {x}")
    return out


def check_adj_morphism(m: AdjMorphism) -> list[str]:
    return adj_morphism_violations(m)


def identity_adj_morphism(A: DoctrineAdjunction) -> AdjMorphism:
    return AdjMorphism(
        A,
        A,
        identity_functor(A.p.base),
        {x: identity_map(A.p.fibers[x]) for x in A.p.base.objects},
        identity_functor(A.q.base),
        {y: identity_map(A.q.fibers[y]) for y in A.q.base.objects},
        identity_nat(A.right),
    )


def compose_adj_morphisms(n: AdjMorphism, m: AdjMorphism) -> AdjMorphism:
    """n∘m for m: A→B, n: B→C."""
    if m.dst != n.src:
        raise ValueError("compose_adj_morphisms: boundary mismatch")
    theta = {}
    for y in m.src.q.base.objects:
        theta[y] = n.dst.p.base.comp(
            n.theta.components[m.fun_q.obj_map[y]],
            n.fun_p.arr_map[m.theta.components[y]],
        )
    return AdjMorphism(
        m.src,
        n.dst,
        compose_functors(n.fun_p, m.fun_p),
        {
            x: compose_maps(n.parts_p[m.fun_p.obj_map[x]], m.parts_p[x])
            for x in m.src.p.base.objects
        },
        compose_functors(n.fun_q, m.fun_q),
        {
            y: compose_maps(n.parts_q[m.fun_q.obj_map[y]], m.parts_q[y])
            for y in m.src.q.base.objects
        },
        NatTransformation(
            compose_functors(compose_functors(n.fun_p, m.fun_p), m.src.right),
            compose_functors(n.dst.right, compose_functors(n.fun_q, m.fun_q)),
            theta,
        ),
    )


@dataclass(frozen=True)
class AdjTwoCell:
    src: AdjMorphism
    dst: AdjMorphism
    alpha: TwoArrow  # between the p-side 1-arrows
    beta: TwoArrow  # between the q-side 1-arrows


def adj_two_cell_violations(c: AdjTwoCell) -> list[str]:
    out = []
    out.extend("alpha: " + v for v in two_arrow_violations(c.alpha))
    out.extend("beta: " + v for v in two_arrow_violations(c.beta))
    if out:
        return out
    m, n = c.src, c.dst
    B = m.dst
    for x in m.src.p.base.objects:
        if B.left.arr_map[c.alpha.theta.components[x]] != c.beta.theta.components[m.src.left.obj_map[x]]:
            out.append(f"L^B alpha != beta L^A at {x}")
    basePB = B.p.base
    for y in m.src.q.base.objects:
        lhs = basePB.comp(n.theta.components[y], c.alpha.theta.components[m.src.right.obj_map[y]])
        rhs = basePB.comp(B.right.arr_map[c.beta.theta.components[y]], m.theta.components[y])
        if lhs != rhs:
            out.append(f"theta square fails at {y}")
    return out


def check_adj_two_cell(c: AdjTwoCell) -> list[str]:
    return adj_two_cell_violations(c)


def am_functor(m: AdjMorphism) -> OneArrow:
    """The modal 1-arrow ⟨F, g at L^A−⟩ between the induced modal doctrines."""
    src_doc, _ = am_modality(m.src)
    dst_doc, _ = am_modality(m.dst)
    return OneArrow(
        src_doc,
        dst_doc,
        m.fun_p,
        {x: m.parts_q[m.src.left.obj_map[x]] for x in m.src.p.base.objects},
    )


def am_functor_2cell(c: AdjTwoCell) -> TwoArrow:
    return TwoArrow(am_functor(c.src), am_functor(c.dst), c.alpha.theta)


def random_vertical_adjunction(rng: random.Random, max_objects: int = 2, max_ground: int = 4) -> DoctrineAdjunction:
    """Sample a vertical adjunction over a discrete base: per fiber, a
    join-preserving map between powersets (union along a random assignment
    of atoms to subsets) together with its computed right adjoint."""
    n_obj = rng.randint(1, max_objects)
    objs = [f"X{i}" for i in range(n_obj)]
    base = discrete_category(objs)
    p_fibers, q_fibers, lam, rho = {}, {}, {}, {}
    for x in objs:
        g1 = [f"a{i}" for i in range(rng.randint(1, max_ground))]
        g2 = [f"b{i}" for i in range(rng.randint(1, max_ground))]
        p_fibers[x] = powerset_poset(g1)
        q_fibers[x] = powerset_poset(g2)
        targets = {a: frozenset(rng.sample(g2, rng.randint(0, len(g2)))) for a in g1}
        lam_map = {}
        for lbl in p_fibers[x].elements:
            s = label_subset(lbl)
            acc = frozenset()
            for a in g1:
                if a in s:
                    acc |= targets[a]
            lam_map[lbl] = subset_label(acc, g2)
        rho_map = {}
        for lbl in q_fibers[x].elements:
            b = label_subset(lbl)
            rho_map[lbl] = subset_label([a for a in g1 if targets[a] <= b], g1)
        lam[x] = MonotoneMap(p_fibers[x], q_fibers[x], lam_map)
        rho[x] = MonotoneMap(q_fibers[x], p_fibers[x], rho_map)
    P = Doctrine(base, p_fibers, {base.id(x): identity_map(p_fibers[x]) for x in objs})
    Q = Doctrine(base, q_fibers, {base.id(x): identity_map(q_fibers[x]) for x in objs})
    return vertical_adjunction(P, Q, lam, rho)
