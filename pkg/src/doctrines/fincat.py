"""Finite categories, functors, and natural transformations with full law checking.

Categories are explicit composition tables, so every law check is a finite
table scan. Poset-categories and full function categories on finite sets get
dedicated constructors since that is how most instances enter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .order import FinPoset


@dataclass(frozen=True)
class FinCategory:
    objects: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, src, dst)
    identities: Mapping[str, str]  # object -> arrow name
    composition: Mapping[tuple[str, str], str]  # (g, f) -> g∘f when dst(f)=src(g)
    _by_name: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {n: (s, d) for (n, s, d) in self.arrows})

    def src(self, a: str) -> str:
        return self._by_name[a][0]

    def dst(self, a: str) -> str:
        return self._by_name[a][1]

    def has_arrow(self, a: str) -> bool:
        return a in self._by_name

    def id(self, x: str) -> str:
        return self.identities[x]

    def comp(self, g: str, f: str) -> str:
        """g∘f, defined when dst(f) = src(g)."""
        return self.composition[(g, f)]

    def arrow_names(self) -> tuple[str, ...]:
        return tuple(n for (n, _, _) in self.arrows)

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(n for (n, s, d) in self.arrows if s == x and d == y)


def category_violations(
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    identities: Mapping[str, str],
    composition: Mapping[tuple[str, str], str],
) -> list[str]:
    out = []
    names = [n for (n, _, _) in arrows]
    if len(set(names)) != len(names):
        out.append("duplicate arrow names")
    if len(set(objects)) != len(objects):
        out.append("duplicate object names")
    by_name = {n: (s, d) for (n, s, d) in arrows}
    for (n, s, d) in arrows:
        if s not in objects or d not in objects:
            out.append(f"arrow {n} has dangling src/dst")
    for x in objects:
        i = identities.get(x)
        if i is None or i not in by_name:
            out.append(f"missing identity for {x}")
        elif by_name[i] != (x, x):
            out.append(f"identity of {x} is not an endo-arrow")
    if out:
        return out
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                c = composition.get((gn, fn))
                if c is None:
                    out.append(f"composition undefined for ({gn},{fn})")
                elif c not in by_name or by_name[c] != (fs, gd):
                    out.append(f"composite ({gn},{fn}) has wrong boundary")
    if out:
        return out
    for (fn, fs, fd) in arrows:
        if composition[(fn, identities[fs])] != fn:
            out.append(f"right identity law fails at {fn}")
        if composition[(identities[fd], fn)] != fn:
            out.append(f"left identity law fails at {fn}")
    for (hn, hs, hd) in arrows:
        for (gn, gs, gd) in arrows:
            if hd != gs:
                continue
            for (fn, fs, fd) in arrows:
                if gd != fs:
                    continue
                if composition[(fn, composition[(gn, hn)])] != composition[(composition[(fn, gn)], hn)]:
                    out.append(f"associativity fails on ({fn},{gn},{hn})")
    return out


def check_category(
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    identities: Mapping[str, str],
    composition: Mapping[tuple[str, str], str],
) -> Union[FinCategory, list[str]]:
    """A valid category, or the exact failing law instances."""
    bad = category_violations(objects, arrows, identities, composition)
    if bad:
        return bad
    return FinCategory(tuple(objects), tuple(arrows), dict(identities), dict(composition))


def fin_category(objects, arrows, identities, composition) -> FinCategory:
    got = check_category(objects, arrows, identities, composition)
    if isinstance(got, list):
        raise ValueError("not a category: " + "; ".join(got[:5]))
    return got


def discrete_category(objects: Sequence[str]) -> FinCategory:
    arrows = [(f"id_{x}", x, x) for x in objects]
    identities = {x: f"id_{x}" for x in objects}
    composition = {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects}
    return FinCategory(tuple(objects), tuple(arrows), identities, composition)


def poset_category(p: FinPoset) -> FinCategory:
    """The category with at most one arrow x→y, present iff x ≤ y."""
    arrows = [(f"{a}<={b}", a, b) for (a, b) in sorted(p.relation, key=lambda ab: (p.index(ab[0]), p.index(ab[1])))]
    identities = {x: f"{x}<={x}" for x in p.elements}
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                composition[(gn, fn)] = f"{fs}<={gd}"
    return fin_category(p.elements, arrows, identities, composition)


def one_object_monoid_category(obj: str, elements: Sequence[str], unit: str, table: Mapping[tuple[str, str], str]) -> FinCategory:
    arrows = [(e, obj, obj) for e in elements]
    return fin_category([obj], arrows, {obj: unit}, dict(table))


def function_arrow_name(src_obj: str, dst_obj: str, mapping: Mapping[str, str], src_order: Sequence[str]) -> str:
    graph = ",".join(f"{e}>{mapping[e]}" for e in src_order)
    return f"{src_obj}->{dst_obj}:{graph}"


@dataclass(frozen=True)
class FunctionCategory:
    """A full function category together with the graph of every arrow."""

    category: FinCategory
    sets: Mapping[str, tuple[str, ...]]
    graphs: Mapping[str, Mapping[str, str]]

    def graph(self, arrow: str) -> Mapping[str, str]:
        return self.graphs[arrow]


def full_function_category(sets: Mapping[str, Sequence[str]]) -> FunctionCategory:
    """Full subcategory of finite sets on the named carriers: all functions."""
    names = list(sets)
    arrows = []
    graph_of = {}
    for a in names:
        for b in names:
            for mapping in _all_functions(sets[a], sets[b]):
                n = function_arrow_name(a, b, mapping, sets[a])
                arrows.append((n, a, b))
                graph_of[n] = mapping
    identities = {a: function_arrow_name(a, a, {e: e for e in sets[a]}, sets[a]) for a in names}
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                comp = {e: graph_of[gn][graph_of[fn][e]] for e in sets[fs]}
                composition[(gn, fn)] = function_arrow_name(fs, gd, comp, sets[fs])
    cat = fin_category(names, arrows, identities, composition)
    return FunctionCategory(cat, {k: tuple(v) for k, v in sets.items()}, graph_of)


def _all_functions(src: Sequence[str], dst: Sequence[str]):
    if not src:
        yield {}
        return
    if not dst:
        return
    from itertools import product

    for images in product(dst, repeat=len(src)):
        yield dict(zip(src, images))


def function_graph(cat_arrow_name: str) -> dict[str, str]:
    """Recover the graph of a full_function_category arrow from its name."""
    body = cat_arrow_name.split(":", 1)[1]
    if not body:
        return {}
    return dict(pair.split(">") for pair in body.split(","))


@dataclass(frozen=True)
class Functor:
    src: FinCategory
    dst: FinCategory
    obj_map: Mapping[str, str]
    arr_map: Mapping[str, str]

    def on_obj(self, x: str) -> str:
        return self.obj_map[x]

    def on_arr(self, a: str) -> str:
        return self.arr_map[a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and all(self.obj_map[x] == other.obj_map[x] for x in self.src.objects)
            and all(self.arr_map[a] == other.arr_map[a] for a in self.src.arrow_names())
        )


def functor_violations(F: Functor) -> list[str]:
    out = []
    for x in F.src.objects:
        if x not in F.obj_map:
            out.append(f"unmapped object {x}")
        elif F.obj_map[x] not in F.dst.objects:
            out.append(f"object image outside target: {x}")
    for a in F.src.arrow_names():
        if a not in F.arr_map:
            out.append(f"unmapped arrow {a}")
        elif not F.dst.has_arrow(F.arr_map[a]):
            out.append(f"arrow image outside target: {a}")
    if out:
        return out
    for a in F.src.arrow_names():
        if F.dst.src(F.arr_map[a]) != F.obj_map[F.src.src(a)] or F.dst.dst(F.arr_map[a]) != F.obj_map[F.src.dst(a)]:
            out.append(f"boundary not preserved at {a}")
    if out:
        return out
    for x in F.src.objects:
        if F.arr_map[F.src.id(x)] != F.dst.id(F.obj_map[x]):
            out.append(f"identity not preserved at {x}")
    for g in F.src.arrow_names():
        for f in F.src.arrow_names():
            if F.src.dst(f) == F.src.src(g):
                if F.arr_map[F.src.comp(g, f)] != F.dst.comp(F.arr_map[g], F.arr_map[f]):
                    out.append(f"composition not preserved on ({g},{f})")
    return out


def check_functor(F: Functor) -> list[str]:
    return functor_violations(F)


def fin_functor(src, dst, obj_map, arr_map) -> Functor:
    F = Functor(src, dst, dict(obj_map), dict(arr_map))
    bad = functor_violations(F)
    if bad:
        raise ValueError("not a functor: " + "; ".join(bad[:5]))
    return F


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {a: a for a in C.arrow_names()})


def constant_functor(C: FinCategory, D: FinCategory, obj: str) -> Functor:
    return Functor(C, D, {x: obj for x in C.objects}, {a: D.id(obj) for a in C.arrow_names()})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G∘F (apply F first)."""
    if F.dst != G.src:
        raise ValueError("compose_functors: boundary mismatch")
    return Functor(
        F.src,
        G.dst,
        {x: G.obj_map[F.obj_map[x]] for x in F.src.objects},
        {a: G.arr_map[F.arr_map[a]] for a in F.src.arrow_names()},
    )


@dataclass(frozen=True)
class NatTransformation:
    src: Functor
    dst: Functor
    components: Mapping[str, str]  # object of src.src -> arrow of src.dst

    def at(self, x: str) -> str:
        return self.components[x]


def nat_violations(t: NatTransformation) -> list[str]:
    out = []
    F, G = t.src, t.dst
    if F.src != G.src or F.dst != G.dst:
        return ["boundary functors do not share categories"]
    C, D = F.src, F.dst
    for x in C.objects:
        a = t.components.get(x)
        if a is None:
            out.append(f"missing component at {x}")
        elif not D.has_arrow(a) or D.src(a) != F.obj_map[x] or D.dst(a) != G.obj_map[x]:
            out.append(f"component at {x} has wrong boundary")
    if out:
        return out
    for f in C.arrow_names():
        x, y = C.src(f), C.dst(f)
        if D.comp(t.components[y], F.arr_map[f]) != D.comp(G.arr_map[f], t.components[x]):
            out.append(f"naturality square fails at {f}")
    return out


def check_nat(t: NatTransformation) -> list[str]:
    return nat_violations(t)


def fin_nat(src, dst, components) -> NatTransformation:
    t = NatTransformation(src, dst, dict(components))
    bad = nat_violations(t)
    if bad:
        raise ValueError("not natural: " + "; ".join(bad[:5]))
    return t


def identity_nat(F: Functor) -> NatTransformation:
    return NatTransformation(F, F, {x: F.dst.id(F.obj_map[x]) for x in F.src.objects})


def vcompose_nats(s: NatTransformation, t: NatTransformation) -> NatTransformation:
    """s·t (t first), componentwise composition."""
    D = t.src.dst
    return NatTransformation(
        t.src, s.dst, {x: D.comp(s.components[x], t.components[x]) for x in t.src.src.objects}
    )


def whisker_functor_nat(H: Functor, t: NatTransformation) -> NatTransformation:
    """H·t : H∘F ⇒ H∘G, components H(t_X)."""
    return NatTransformation(
        compose_functors(H, t.src),
        compose_functors(H, t.dst),
        {x: H.arr_map[t.components[x]] for x in t.src.src.objects},
    )


def whisker_nat_functor(t: NatTransformation, H: Functor) -> NatTransformation:
    """t·H : F∘H ⇒ G∘H, components t_{H X}."""
    return NatTransformation(
        compose_functors(t.src, H),
        compose_functors(t.dst, H),
        {x: t.components[H.obj_map[x]] for x in H.src.objects},
    )


def adjunction_cat(L: Functor, R: Functor, eta: NatTransformation, eps: NatTransformation) -> list[str]:
    """Triangle identities for L ⊣ R, checked objectwise; empty list iff they hold."""
    out = []
    C, D = L.src, L.dst
    if R.src != D or R.dst != C:
        return ["boundary mismatch: R must go back from the target of L"]
    if eta.src != identity_functor(C) or eta.dst != compose_functors(R, L):
        out.append("eta has wrong boundary (expected Id => RL)")
    if eps.src != compose_functors(L, R) or eps.dst != identity_functor(D):
        out.append("eps has wrong boundary (expected LR => Id)")
    if out:
        return out
    out.extend("eta: " + v for v in nat_violations(eta))
    out.extend("eps: " + v for v in nat_violations(eps))
    if out:
        return out
    for x in C.objects:
        lhs = D.comp(eps.components[L.obj_map[x]], L.arr_map[eta.components[x]])
        if lhs != D.id(L.obj_map[x]):
            out.append(f"triangle (eps L)(L eta) = id fails at {x}")
    for y in D.objects:
        lhs = C.comp(R.arr_map[eps.components[y]], eta.components[R.obj_map[y]])
        if lhs != C.id(R.obj_map[y]):
            out.append(f"triangle (R eps)(eta R) = id fails at {y}")
    return out


def comonad_cat_violations(K: Functor, mu: NatTransformation, nu: NatTransformation) -> list[str]:
    """Counit and coassociativity laws for ⟨K,μ,ν⟩ on K.src; empty list iff they hold."""
    out = []
    C = K.src
    if K.dst != C:
        return ["K is not an endofunctor"]
    KK = compose_functors(K, K)
    if mu.src != K or mu.dst != KK:
        out.append("mu has wrong boundary (expected K => KK)")
    if nu.src != K or nu.dst != identity_functor(C):
        out.append("nu has wrong boundary (expected K => Id)")
    if out:
        return out
    out.extend("mu: " + v for v in nat_violations(mu))
    out.extend("nu: " + v for v in nat_violations(nu))
    if out:
        return out
    for x in C.objects:
        kx = K.obj_map[x]
        if C.comp(K.arr_map[nu.components[x]], mu.components[x]) != C.id(kx):
            out.append(f"counit law (K nu) mu = id fails at {x}")
        if C.comp(nu.components[kx], mu.components[x]) != C.id(kx):
            out.append(f"counit law (nu K) mu = id fails at {x}")
        lhs = C.comp(K.arr_map[mu.components[x]], mu.components[x])
        rhs = C.comp(mu.components[kx], mu.components[x])
        if lhs != rhs:
            out.append(f"coassociativity fails at {x}")
    return out


@dataclass(frozen=True)
class CoalgebraData:
    """Category of coalgebras for a base comonad, plus the forgetful functor
    and the structure arrow of each coalgebra object."""

    category: FinCategory
    forgetful: Functor
    carrier: Mapping[str, str]  # coalgebra object -> base object
    structure: Mapping[str, str]  # coalgebra object -> base arrow c: C → KC


def coalgebra_object_name(base_obj: str, structure_arrow: str) -> str:
    return f"<{base_obj}|{structure_arrow}>"


def coalgebra_category(K: Functor, mu: NatTransformation, nu: NatTransformation) -> CoalgebraData:
    """Eilenberg-Moore category of ⟨K,μ,ν⟩: objects are pairs ⟨C,c⟩ with the
    counit/coassociativity squares, arrows are base arrows commuting with the
    structure maps."""
    bad = comonad_cat_violations(K, mu, nu)
    if bad:
        raise ValueError("comonad laws fail: " + "; ".join(bad[:5]))
    C = K.src
    objs, carrier, structure = [], {}, {}
    for x in C.objects:
        for c in C.hom(x, K.obj_map[x]):
            if C.comp(nu.components[x], c) != C.id(x):
                continue
            if C.comp(K.arr_map[c], c) != C.comp(mu.components[x], c):
                continue
            name = coalgebra_object_name(x, c)
            objs.append(name)
            carrier[name] = x
            structure[name] = c
    arrows, arrow_base = [], {}
    for o1 in objs:
        for o2 in objs:
            for f in C.hom(carrier[o1], carrier[o2]):
                if C.comp(structure[o2], f) == C.comp(K.arr_map[f], structure[o1]):
                    n = f"{o1}=>{o2}:{f}"
                    arrows.append((n, o1, o2))
                    arrow_base[n] = f
    identities = {o: f"{o}=>{o}:{C.id(carrier[o])}" for o in objs}
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                base = C.comp(arrow_base[gn], arrow_base[fn])
                composition[(gn, fn)] = f"{fs}=>{gd}:{base}"
    em = fin_category(objs, arrows, identities, composition)
    U = fin_functor(em, C, dict(carrier), dict(arrow_base))
    return CoalgebraData(em, U, carrier, structure)


def hom_sizes_by_closure(C: FinCategory) -> dict[tuple[str, str], int]:
    """Hom-set sizes via closure of identities and generators under composition;
    cross-check against the literal arrow list filter."""
    reached = set(C.identities.values()) | set(C.arrow_names())
    changed = True
    while changed:
        changed = False
        for g in list(reached):
            for f in list(reached):
                if C.dst(f) == C.src(g):
                    c = C.comp(g, f)
                    if c not in reached:
                        reached.add(c)
                        changed = True
    sizes: dict[tuple[str, str], int] = {}
    for a in reached:
        key = (C.src(a), C.dst(a))
        sizes[key] = sizes.get(key, 0) + 1
    return sizes
