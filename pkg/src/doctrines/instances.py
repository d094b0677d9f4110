"""Concrete doctrines and interior operators: Kripke frames (plain and
family-indexed), finite topological spaces, finite commutative quantales with
the exponential ("bang") modality, finite presheaves with the
largest-subpresheaf modality, subobject doctrines over finite sets, and the
conjunction/universal-quantifier connective modalities.

Every construction is validated eagerly and ships with an independent oracle
where the induced operator has a second characterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .adjunction import DoctrineAdjunction, vertical_adjunction, vertical_modality
from .doctrine import (
    Doctrine,
    OneArrow,
    ProductData,
    power_doctrine,
    restrict_doctrine,
)
from .fincat import (
    FinCategory,
    Functor,
    FunctionCategory,
    fin_category,
    full_function_category,
    function_arrow_name,
)
from .interior import InteriorOp
from .order import (
    FinLattice,
    FinPoset,
    MonotoneMap,
    identity_map,
    label_subset,
    lattice_from_poset,
    subset_label,
    subsets_in_order,
)


# ---------------------------------------------------------------------------
# Kripke frames


@dataclass(frozen=True)
class KripkeFrame:
    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]

    def successors(self, w: str) -> frozenset[str]:
        return frozenset(v for (u, v) in self.rel if u == w)


def frame_violations(frame: KripkeFrame) -> list[str]:
    out = []
    for w in frame.worlds:
        if (w, w) not in frame.rel:
            out.append(f"not reflexive at {w}")
    for (a, b) in sorted(frame.rel):
        for (c, d) in sorted(frame.rel):
            if b == c and (a, d) not in frame.rel:
                out.append(f"not transitive: {a}->{b}->{d}")
    return out


def kripke_box(frame: KripkeFrame, a: frozenset[str]) -> frozenset[str]:
    """Worlds whose every successor lies in `a`."""
    if not a <= set(frame.worlds):
        raise ValueError("subset mentions unknown worlds")
    return frozenset(w for w in frame.worlds if frame.successors(w) <= a)


def fun_label(mapping: Mapping[str, str], domain: Sequence[str]) -> str:
    return "[" + ";".join(f"{d}:{mapping[d]}" for d in domain) + "]"


def _function_fiber(domain: Sequence[str], codomain_labels: Sequence[str], codomain_poset: FinPoset) -> tuple[FinPoset, dict]:
    """Poset of all functions domain → codomain, ordered pointwise."""
    domain = list(domain)
    if not domain:
        lbl = "[]"
        return FinPoset((lbl,), frozenset({(lbl, lbl)})), {lbl: {}}
    combos = list(product(codomain_labels, repeat=len(domain)))
    decode = {}
    labels = []
    for combo in combos:
        m = dict(zip(domain, combo))
        lbl = fun_label(m, domain)
        labels.append(lbl)
        decode[lbl] = m
    rel = set()
    for l1 in labels:
        for l2 in labels:
            if all(codomain_poset.leq(decode[l1][d], decode[l2][d]) for d in domain):
                rel.add((l1, l2))
    return FinPoset(tuple(labels), frozenset(rel)), decode


def powerset_doctrine(sets: Mapping[str, Sequence[str]]) -> tuple[Doctrine, FunctionCategory]:
    """Powerset doctrine over the full function category, inverse-image reindexing."""
    fc = full_function_category(sets)
    base = fc.category
    from .order import powerset_poset

    fibers = {x: powerset_poset(sets[x]) for x in base.objects}
    reindex = {}
    for a in base.arrow_names():
        s, d = base.src(a), base.dst(a)
        g = fc.graphs[a]
        reindex[a] = MonotoneMap(
            fibers[d],
            fibers[s],
            {
                lbl: subset_label([e for e in sets[s] if g[e] in label_subset(lbl)], sets[s])
                for lbl in fibers[d].elements
            },
        )
    return Doctrine(base, fibers, reindex), fc


def kripke_doctrine(frame: KripkeFrame, sets: Mapping[str, Sequence[str]]) -> tuple[Doctrine, InteriorOp]:
    """Fibers are world-valued predicates pw(W)^D over the full function
    category on `sets`; the operator postcomposes with the frame box. The
    interior laws hold iff the frame is a preorder (check_interior reports
    the failure otherwise)."""
    world_sets = subsets_in_order(frame.worlds)
    world_labels = [subset_label(s, frame.worlds) for s in world_sets]
    from .order import powerset_poset

    wposet = powerset_poset(frame.worlds)
    fc = full_function_category(sets)
    base = fc.category
    fibers, decode = {}, {}
    for x in base.objects:
        fibers[x], decode[x] = _function_fiber(sets[x], world_labels, wposet)
    reindex = {}
    for a in base.arrow_names():
        s, d = base.src(a), base.dst(a)
        g = fc.graphs[a]
        mapping = {}
        for lbl in fibers[d].elements:
            alpha = decode[d][lbl]
            mapping[lbl] = fun_label({e: alpha[g[e]] for e in sets[s]}, sets[s])
        reindex[a] = MonotoneMap(fibers[d], fibers[s], mapping)
    doc = Doctrine(base, fibers, reindex)
    parts = {}
    for x in base.objects:
        mapping = {}
        for lbl in fibers[x].elements:
            alpha = decode[x][lbl]
            boxed = {
                e: subset_label(kripke_box(frame, label_subset(alpha[e])), frame.worlds)
                for e in sets[x]
            }
            mapping[lbl] = fun_label(boxed, sets[x])
        parts[x] = MonotoneMap(fibers[x], fibers[x], mapping)
    return doc, InteriorOp(doc, parts)


# ---------------------------------------------------------------------------
# W-indexed families


@dataclass(frozen=True)
class IndexedFamily:
    name: str
    carrier: tuple[str, ...]
    parts: Mapping[str, frozenset[str]]  # world -> subset of carrier


def family_element_label(carrier_subset, parts, carrier_order, worlds) -> str:
    c = subset_label(carrier_subset, carrier_order)
    body = ";".join(f"{w}:{subset_label(parts[w], carrier_order)}" for w in worlds)
    return f"({c}|{body})"


def fam_doctrine(frame: KripkeFrame, families: Sequence[IndexedFamily]) -> tuple[Doctrine, InteriorOp]:
    """Subfamily-style doctrine over the category of W-indexed families on the
    given objects; fiber elements are a sub-carrier plus world-indexed parts
    inside it, reindexed by plain pointwise inverse image. The operator
    intersects the parts over all successor worlds."""
    worlds = frame.worlds
    fams = {f.name: f for f in families}
    arrows, graphs = [], {}
    for f1 in families:
        for f2 in families:
            for g in _all_functions_list(f1.carrier, f2.carrier):
                if all(
                    all(g[e] in f2.parts[w] for e in f1.parts[w]) for w in worlds
                ):
                    n = function_arrow_name(f1.name, f2.name, g, f1.carrier)
                    arrows.append((n, f1.name, f2.name))
                    graphs[n] = g
    identities = {
        f.name: function_arrow_name(f.name, f.name, {e: e for e in f.carrier}, f.carrier)
        for f in families
    }
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                comp = {e: graphs[gn][graphs[fn][e]] for e in fams[fs].carrier}
                composition[(gn, fn)] = function_arrow_name(fs, gd, comp, fams[fs].carrier)
    base = fin_category([f.name for f in families], arrows, identities, composition)

    fibers, decode = {}, {}
    for f in families:
        subs = subsets_in_order(f.carrier)
        labels, dec = [], {}
        for carrier_sub in subs:
            sub_order = [e for e in f.carrier if e in carrier_sub]
            for parts_combo in product(subsets_in_order(sub_order), repeat=len(worlds)):
                parts = dict(zip(worlds, parts_combo))
                lbl = family_element_label(carrier_sub, parts, f.carrier, worlds)
                labels.append(lbl)
                dec[lbl] = (carrier_sub, parts)
        rel = set()
        for l1 in labels:
            c1, p1 = dec[l1]
            for l2 in labels:
                c2, p2 = dec[l2]
                if c1 <= c2 and all(p1[w] <= p2[w] for w in worlds):
                    rel.add((l1, l2))
        fibers[f.name] = FinPoset(tuple(labels), frozenset(rel))
        decode[f.name] = dec

    reindex = {}
    for (n, s, d) in arrows:
        g = graphs[n]
        mapping = {}
        for lbl in fibers[d].elements:
            c, p = decode[d][lbl]
            c_pre = frozenset(e for e in fams[s].carrier if g[e] in c)
            p_pre = {w: frozenset(e for e in fams[s].carrier if g[e] in p[w]) for w in worlds}
            mapping[lbl] = family_element_label(c_pre, p_pre, fams[s].carrier, worlds)
        reindex[n] = MonotoneMap(fibers[d], fibers[s], mapping)
    doc = Doctrine(base, fibers, reindex)

    parts_maps = {}
    for f in families:
        mapping = {}
        for lbl in fibers[f.name].elements:
            c, p = decode[f.name][lbl]
            boxed = {
                w: frozenset.intersection(*[p[v] for v in sorted(frame.successors(w))])
                if frame.successors(w)
                else c
                for w in worlds
            }
            mapping[lbl] = family_element_label(c, boxed, f.carrier, worlds)
        parts_maps[f.name] = MonotoneMap(fibers[f.name], fibers[f.name], mapping)
    return doc, InteriorOp(doc, parts_maps)


def _all_functions_list(src, dst):
    src = list(src)
    if not src:
        return [{}]
    if not dst:
        return []
    return [dict(zip(src, images)) for images in product(list(dst), repeat=len(src))]


def constant_family_arrow(
    frame: KripkeFrame, sets: Mapping[str, Sequence[str]]
) -> tuple[OneArrow, InteriorOp, InteriorOp]:
    """The 1-arrow from world-valued predicates to constant families:
    an element s lands in the part at w iff w satisfies the predicate at s."""
    src_doc, src_op = kripke_doctrine(frame, sets)
    families = [
        IndexedFamily(name, tuple(sets[name]), {w: frozenset(sets[name]) for w in frame.worlds})
        for name in sets
    ]
    dst_doc, dst_op = fam_doctrine(frame, families)
    fams = {f.name: f for f in families}
    obj_map = {name: name for name in sets}
    arr_map = {}
    for a in src_doc.base.arrow_names():
        s, d = src_doc.base.src(a), src_doc.base.dst(a)
        # same graph, renamed as a family arrow
        g_body = a.split(":", 1)[1]
        arr_map[a] = f"{s}->{d}:{g_body}"
    functor = Functor(src_doc.base, dst_doc.base, obj_map, arr_map)
    parts = {}
    for name in sets:
        mapping = {}
        fib = src_doc.fibers[name]
        for lbl in fib.elements:
            # decode the function label back through reconstruction
            alpha = _decode_fun_label(lbl, sets[name])
            fam_parts = {
                w: frozenset(s for s in sets[name] if w in label_subset(alpha[s]))
                for w in frame.worlds
            }
            mapping[lbl] = family_element_label(
                frozenset(sets[name]), fam_parts, fams[name].carrier, frame.worlds
            )
        parts[name] = MonotoneMap(fib, dst_doc.fibers[name], mapping)
    return OneArrow(src_doc, dst_doc, functor, parts), src_op, dst_op


def _decode_fun_label(lbl: str, domain: Sequence[str]) -> dict:
    body = lbl[1:-1]
    if not body:
        return {}
    out = {}
    for chunk in body.split(";"):
        k, v = chunk.split(":", 1)
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# Finite topological spaces


@dataclass(frozen=True)
class FiniteTopSpace:
    name: str
    points: tuple[str, ...]
    opens: frozenset[frozenset[str]]


def space_violations(s: FiniteTopSpace) -> list[str]:
    out = []
    pts = frozenset(s.points)
    if frozenset() not in s.opens:
        out.append("empty set not open")
    if pts not in s.opens:
        out.append("whole space not open")
    for u in s.opens:
        if not u <= pts:
            out.append("open set outside the space")
        for v in s.opens:
            if u | v not in s.opens:
                out.append(f"not closed under union: {sorted(u)} ∪ {sorted(v)}")
            if u & v not in s.opens:
                out.append(f"not closed under intersection: {sorted(u)} ∩ {sorted(v)}")
    return out


def interior_of(space: FiniteTopSpace, a: frozenset[str]) -> frozenset[str]:
    acc = frozenset()
    for u in space.opens:
        if u <= a:
            acc |= u
    return acc


def open_continuous_maps(s: FiniteTopSpace, t: FiniteTopSpace) -> list[dict]:
    """All functions that are both continuous and open, by brute force."""
    out = []
    for g in _all_functions_list(s.points, t.points):
        continuous = all(
            frozenset(p for p in s.points if g[p] in u) in s.opens for u in t.opens
        )
        if not continuous:
            continue
        is_open = all(frozenset(g[p] for p in u) in t.opens for u in s.opens)
        if is_open:
            out.append(g)
    return out


def topological_doctrine(spaces: Sequence[FiniteTopSpace]) -> tuple[Doctrine, InteriorOp]:
    """Powerset fibers over the category of open continuous maps, with the
    topological interior as operator; its naturality holds as an equality."""
    for s in spaces:
        bad = space_violations(s)
        if bad:
            raise ValueError(f"invalid space {s.name}: " + "; ".join(bad[:3]))
    by_name = {s.name: s for s in spaces}
    arrows, graphs = [], {}
    for s in spaces:
        for t in spaces:
            for g in open_continuous_maps(s, t):
                n = function_arrow_name(s.name, t.name, g, s.points)
                arrows.append((n, s.name, t.name))
                graphs[n] = g
    identities = {
        s.name: function_arrow_name(s.name, s.name, {p: p for p in s.points}, s.points)
        for s in spaces
    }
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                comp = {p: graphs[gn][graphs[fn][p]] for p in by_name[fs].points}
                composition[(gn, fn)] = function_arrow_name(fs, gd, comp, by_name[fs].points)
    base = fin_category([s.name for s in spaces], arrows, identities, composition)
    from .order import powerset_poset

    fibers = {s.name: powerset_poset(s.points) for s in spaces}
    reindex = {}
    for (n, sn, dn) in arrows:
        g = graphs[n]
        reindex[n] = MonotoneMap(
            fibers[dn],
            fibers[sn],
            {
                lbl: subset_label(
                    [p for p in by_name[sn].points if g[p] in label_subset(lbl)],
                    by_name[sn].points,
                )
                for lbl in fibers[dn].elements
            },
        )
    doc = Doctrine(base, fibers, reindex)
    parts = {
        s.name: MonotoneMap(
            fibers[s.name],
            fibers[s.name],
            {
                lbl: subset_label(interior_of(s, label_subset(lbl)), s.points)
                for lbl in fibers[s.name].elements
            },
        )
        for s in spaces
    }
    return doc, InteriorOp(doc, parts)


def forgetful_top_arrow(spaces: Sequence[FiniteTopSpace]) -> tuple[OneArrow, InteriorOp, InteriorOp]:
    """⟨U, id⟩ from the topological doctrine to the plain powerset doctrine."""
    src_doc, src_op = topological_doctrine(spaces)
    sets = {s.name: list(s.points) for s in spaces}
    dst_doc, _ = powerset_doctrine(sets)
    obj_map = {s.name: s.name for s in spaces}
    arr_map = {a: a for a in src_doc.base.arrow_names()}
    functor = Functor(src_doc.base, dst_doc.base, obj_map, arr_map)
    parts = {s.name: identity_map(src_doc.fibers[s.name]) for s in spaces}
    from .interior import identity_interior

    return OneArrow(src_doc, dst_doc, functor, parts), src_op, identity_interior(dst_doc)


# ---------------------------------------------------------------------------
# Finite commutative quantales


@dataclass(frozen=True)
class FiniteQuantale:
    name: str
    lattice: FinLattice
    tensor: Mapping[tuple[str, str], str]
    unit: str


def quantale_violations(q: FiniteQuantale) -> list[str]:
    out = []
    els = q.lattice.carrier.elements
    for a in els:
        if q.tensor.get((a, q.unit)) != a or q.tensor.get((q.unit, a)) != a:
            out.append(f"unit law fails at {a}")
        for b in els:
            if (a, b) not in q.tensor or q.tensor[(a, b)] not in els:
                out.append(f"tensor missing or outside carrier at ({a},{b})")
                return out
            if q.tensor[(a, b)] != q.tensor[(b, a)]:
                out.append(f"commutativity fails at ({a},{b})")
            for c in els:
                if q.tensor[(q.tensor[(a, b)], c)] != q.tensor[(a, q.tensor[(b, c)])]:
                    out.append(f"associativity fails at ({a},{b},{c})")
    # distributivity over all joins; for larger carriers the binary+empty cases
    # generate every finite join
    if len(els) <= 8:
        families = subsets_in_order(els)
    else:
        families = [frozenset()] + [frozenset({a, b}) for a in els for b in els]
    for x in els:
        for fam in families:
            join = q.lattice.bottom
            for y in sorted(fam, key=q.lattice.carrier.index):
                join = q.lattice.join[(join, y)]
            lhs = q.tensor[(x, join)]
            rhs = q.lattice.bottom
            for y in sorted(fam, key=q.lattice.carrier.index):
                rhs = q.lattice.join[(rhs, q.tensor[(x, y)])]
            if lhs != rhs:
                out.append(f"tensor does not distribute over the join of {sorted(fam)} at {x}")
    return out


def valid_quantale(name, lattice, tensor, unit) -> FiniteQuantale:
    q = FiniteQuantale(name, lattice, dict(tensor), unit)
    bad = quantale_violations(q)
    if bad:
        raise ValueError(f"invalid quantale {name}: " + "; ".join(bad[:3]))
    return q


def bool_quantale() -> FiniteQuantale:
    from .order import chain_poset

    lat = lattice_from_poset(chain_poset(["0", "1"]))
    tensor = {(a, b): lat.meet[(a, b)] for a in "01" for b in "01"}
    return valid_quantale("bool", lat, tensor, "1")


def lukasiewicz3() -> FiniteQuantale:
    """The 3-chain 0 ≤ h ≤ 1 with x⊗y = max(0, x+y−1)."""
    from .order import chain_poset

    lat = lattice_from_poset(chain_poset(["0", "h", "1"]))
    val = {"0": 0.0, "h": 0.5, "1": 1.0}
    back = {0.0: "0", 0.5: "h", 1.0: "1"}
    tensor = {
        (a, b): back[max(0.0, val[a] + val[b] - 1.0)]
        for a in val
        for b in val
    }
    return valid_quantale("luk3", lat, tensor, "1")


def powerset_monoid_quantale(elements: Sequence[str], op: Mapping[tuple[str, str], str], unit: str) -> FiniteQuantale:
    """pw(M) for a finite commutative monoid M, with elementwise products."""
    from .order import powerset_lattice

    lat = powerset_lattice(elements)
    tensor = {}
    for l1 in lat.carrier.elements:
        s1 = label_subset(l1)
        for l2 in lat.carrier.elements:
            s2 = label_subset(l2)
            prod_set = {op[(a, b)] for a in s1 for b in s2}
            tensor[(l1, l2)] = subset_label(prod_set, elements)
    return valid_quantale("pw-monoid", lat, tensor, subset_label({unit}, elements))


@dataclass(frozen=True)
class QuantaleCore:
    elements: tuple[str, ...]
    sub: FinPoset
    iota: MonotoneMap  # sub → Q
    r: MonotoneMap  # Q → sub


def quantale_core(q: FiniteQuantale) -> QuantaleCore:
    """The sub-quantale of elements below the unit and below their own square,
    with the inclusion and its right adjoint; closure and the Galois property
    are verified exhaustively."""
    lat = q.lattice
    els = lat.carrier.elements
    core = [x for x in els if lat.carrier.leq(x, q.unit) and lat.carrier.leq(x, q.tensor[(x, x)])]
    if q.unit not in core:
        raise ValueError("unit escaped the core")
    for a in core:
        for b in core:
            if q.tensor[(a, b)] not in core:
                raise ValueError(f"core not closed under tensor at ({a},{b})")
    for fam in subsets_in_order(core) if len(core) <= 8 else []:
        join = lat.bottom
        for y in sorted(fam, key=lat.carrier.index):
            join = lat.join[(join, y)]
        if join not in core:
            raise ValueError(f"core not closed under the join of {sorted(fam)}")
    from .order import sub_poset

    sub = sub_poset(lat.carrier, core)
    iota = MonotoneMap(sub, lat.carrier, {x: x for x in core})
    r_map = {}
    for x in els:
        below = [y for y in core if lat.carrier.leq(y, x)]
        join = lat.bottom
        for y in below:
            join = lat.join[(join, y)]
        if join not in core:
            raise ValueError(f"coreflection escapes the core at {x}")
        r_map[x] = join
    r = MonotoneMap(lat.carrier, sub, r_map)
    for x in els:
        if not lat.carrier.leq(r_map[x], x):
            raise ValueError(f"iota∘r not deflationary at {x}")
    for y in core:
        if r_map[y] != y:
            raise ValueError(f"r∘iota not identity at {y}")
    for y in core:
        for x in els:
            if lat.carrier.leq(y, x) != lat.carrier.leq(y, r_map[x]):
                raise ValueError(f"galois property fails at ({y},{x})")
    return QuantaleCore(tuple(core), sub, iota, r)


def quantale_doctrine(
    q: FiniteQuantale, sets: Mapping[str, Sequence[str]]
) -> tuple[Doctrine, DoctrineAdjunction, InteriorOp]:
    """The doctrines Q^(−) and core^(−) over a finite-set fragment, the
    vertical adjunction ⟨ι∘−⟩ ⊣ ⟨r∘−⟩ between them, and the induced bang."""
    core = quantale_core(q)
    fc = full_function_category(sets)
    base = fc.category
    q_fibers, q_decode = {}, {}
    c_fibers, c_decode = {}, {}
    for x in base.objects:
        q_fibers[x], q_decode[x] = _function_fiber(sets[x], q.lattice.carrier.elements, q.lattice.carrier)
        c_fibers[x], c_decode[x] = _function_fiber(sets[x], core.elements, core.sub)
    def _reindex(fibers, decode):
        out = {}
        for a in base.arrow_names():
            s, d = base.src(a), base.dst(a)
            g = fc.graphs[a]
            out[a] = MonotoneMap(
                fibers[d],
                fibers[s],
                {
                    lbl: fun_label({e: decode[d][lbl][g[e]] for e in sets[s]}, sets[s])
                    for lbl in fibers[d].elements
                },
            )
        return out

    Qdoc = Doctrine(base, q_fibers, _reindex(q_fibers, q_decode))
    Cdoc = Doctrine(base, c_fibers, _reindex(c_fibers, c_decode))
    lam = {
        x: MonotoneMap(
            c_fibers[x],
            q_fibers[x],
            {lbl: fun_label(c_decode[x][lbl], sets[x]) for lbl in c_fibers[x].elements},
        )
        for x in base.objects
    }
    rho = {
        x: MonotoneMap(
            q_fibers[x],
            c_fibers[x],
            {
                lbl: fun_label({e: core.r.apply(q_decode[x][lbl][e]) for e in sets[x]}, sets[x])
                for lbl in q_fibers[x].elements
            },
        )
        for x in base.objects
    }
    adj = vertical_adjunction(Cdoc, Qdoc, lam, rho)
    bang = vertical_modality(adj)
    return Qdoc, adj, bang


@dataclass(frozen=True)
class FiberMonoid:
    unit: str
    star: Mapping[tuple[str, str], str]
    residuation: Mapping[tuple[str, str], str]


def quantale_monoid_ops(q: FiniteQuantale, x_elements: Sequence[str]) -> FiberMonoid:
    """Pointwise monoid structure and residuation on the fiber Q^X; the
    residuation adjunction is verified exhaustively."""
    fiber, decode = _function_fiber(x_elements, q.lattice.carrier.elements, q.lattice.carrier)
    unit = fun_label({e: q.unit for e in x_elements}, x_elements)
    star, imp = {}, {}
    for l1 in fiber.elements:
        a = decode[l1]
        for l2 in fiber.elements:
            b = decode[l2]
            star[(l1, l2)] = fun_label({e: q.tensor[(a[e], b[e])] for e in x_elements}, x_elements)
            res = {}
            for e in x_elements:
                best = q.lattice.bottom
                for z in q.lattice.carrier.elements:
                    if q.lattice.carrier.leq(q.tensor[(a[e], z)], b[e]):
                        best = q.lattice.join[(best, z)]
                res[e] = best
            imp[(l1, l2)] = fun_label(res, x_elements)
    for l1 in fiber.elements:
        for l2 in fiber.elements:
            for l3 in fiber.elements:
                lhs = fiber.leq(star[(l1, l3)], l2)
                rhs = fiber.leq(l3, imp[(l1, l2)])
                if lhs != rhs:
                    raise ValueError(f"residuation adjunction fails at ({l1},{l2},{l3})")
    return FiberMonoid(unit, star, imp)


def bang_law_suite(
    q: FiniteQuantale, sets: Mapping[str, Sequence[str]], core_override: QuantaleCore | None = None
) -> dict:
    """The four exponential laws of the bang operator, checked exhaustively on
    every fiber; `core_override` lets tests plant a fake core."""
    core = core_override if core_override is not None else quantale_core(q)
    report = {"law1": [], "law2": [], "law3": [], "law4": []}
    for name, elements in sets.items():
        fiber, decode = _function_fiber(elements, q.lattice.carrier.elements, q.lattice.carrier)
        ops = quantale_monoid_ops(q, elements)
        def bang(lbl):
            a = decode[lbl]
            return fun_label({e: core.iota.apply(core.r.apply(a[e])) for e in elements}, elements)

        for l1 in fiber.elements:
            b1 = bang(l1)
            if not fiber.leq(b1, ops.unit):
                report["law1"].append(f"({name},{l1})")
            if not fiber.leq(b1, ops.star[(b1, b1)]):
                report["law2"].append(f"({name},{l1})")
        if not fiber.leq(ops.unit, bang(ops.unit)):
            report["law3"].append(f"({name},unit)")
        for l1 in fiber.elements:
            for l2 in fiber.elements:
                lhs = ops.star[(bang(l1), bang(l2))]
                rhs = bang(ops.star[(l1, l2)])
                if not fiber.leq(lhs, rhs):
                    report["law4"].append(f"({name},{l1},{l2})")
    report["pass"] = not any(report[k] for k in ("law1", "law2", "law3", "law4"))
    return report


def fake_core(q: FiniteQuantale) -> QuantaleCore:
    """The sub-poset of elements below the unit without the idempotence filter;
    not a valid core, used as the negative control for the bang laws."""
    lat = q.lattice
    els = [x for x in lat.carrier.elements if lat.carrier.leq(x, q.unit)]
    from .order import sub_poset

    sub = sub_poset(lat.carrier, els)
    iota = MonotoneMap(sub, lat.carrier, {x: x for x in els})
    r_map = {}
    for x in lat.carrier.elements:
        join = lat.bottom
        for y in els:
            if lat.carrier.leq(y, x):
                join = lat.join[(join, y)]
        r_map[x] = join
    return QuantaleCore(tuple(els), sub, iota, MonotoneMap(lat.carrier, sub, r_map))


# ---------------------------------------------------------------------------
# Finite presheaves


@dataclass(frozen=True)
class FinPresheaf:
    """A finite-set-valued functor on a finite base category; the action sends
    an arrow f: w → v to a function at(w) → at(v)."""

    name: str
    base: FinCategory
    at: Mapping[str, tuple[str, ...]]
    act: Mapping[str, Mapping[str, str]]


def presheaf_violations(d: FinPresheaf) -> list[str]:
    out = []
    for w in d.base.objects:
        if w not in d.at:
            out.append(f"missing carrier at {w}")
    for f in d.base.arrow_names():
        if f not in d.act:
            out.append(f"missing action along {f}")
    if out:
        return out
    for f in d.base.arrow_names():
        w, v = d.base.src(f), d.base.dst(f)
        for e in d.at[w]:
            if d.act[f].get(e) not in d.at[v]:
                out.append(f"action along {f} not into the target carrier at {e}")
    if out:
        return out
    for w in d.base.objects:
        if any(d.act[d.base.id(w)][e] != e for e in d.at[w]):
            out.append(f"identity action fails at {w}")
    for g in d.base.arrow_names():
        for f in d.base.arrow_names():
            if d.base.dst(f) == d.base.src(g):
                for e in d.at[d.base.src(f)]:
                    if d.act[d.base.comp(g, f)][e] != d.act[g][d.act[f][e]]:
                        out.append(f"functoriality fails on ({g},{f}) at {e}")
    return out


def presheaf_nat_transformations(d: FinPresheaf, e: FinPresheaf) -> list[dict]:
    """All natural families of functions d ⇒ e, by brute force."""
    worlds = list(d.base.objects)
    per_world = [_all_functions_list(d.at[w], e.at[w]) for w in worlds]
    out = []
    for combo in product(*per_world):
        phi = dict(zip(worlds, combo))
        ok = True
        for f in d.base.arrow_names():
            w, v = d.base.src(f), d.base.dst(f)
            for x in d.at[w]:
                if phi[v][d.act[f][x]] != e.act[f][phi[w][x]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(phi)
    return out


def presheaf_family_label(parts: Mapping[str, frozenset], d: FinPresheaf) -> str:
    return "[" + ";".join(f"{w}:{subset_label(parts[w], d.at[w])}" for w in d.base.objects) + "]"


def is_subpresheaf(d: FinPresheaf, parts: Mapping[str, frozenset]) -> bool:
    for f in d.base.arrow_names():
        w, v = d.base.src(f), d.base.dst(f)
        for x in parts[w]:
            if d.act[f][x] not in parts[v]:
                return False
    return True


def largest_subpresheaf(d: FinPresheaf, parts: Mapping[str, frozenset]) -> dict:
    """Direct characterization: keep x at w iff every action image stays in
    the family."""
    return {
        w: frozenset(
            x
            for x in parts[w]
            if all(
                d.act[f][x] in parts[d.base.dst(f)]
                for f in d.base.arrow_names()
                if d.base.src(f) == w
            )
        )
        for w in d.base.objects
    }


def subpresheaf_union_oracle(d: FinPresheaf, parts: Mapping[str, frozenset]) -> dict:
    """Independent oracle: the union of all subfamilies of `parts` satisfying
    the subpresheaf condition."""
    worlds = list(d.base.objects)
    per_world = [subsets_in_order(sorted(parts[w], key=list(d.at[w]).index)) for w in worlds]
    acc = {w: frozenset() for w in worlds}
    for combo in product(*per_world):
        cand = dict(zip(worlds, combo))
        if is_subpresheaf(d, cand):
            acc = {w: acc[w] | cand[w] for w in worlds}
    return acc


def presheaf_instance(presheaves: Sequence[FinPresheaf]) -> tuple[DoctrineAdjunction, Doctrine, InteriorOp]:
    """The vertical adjunction between the subpresheaf doctrine and the
    all-families doctrine over the category of the given presheaves, and the
    induced largest-subpresheaf interior operator on families.

    This is the finitely realizable vertical factor of the geometric-morphism
    construction; the operator it induces is the geometric one."""
    for d in presheaves:
        bad = presheaf_violations(d)
        if bad:
            raise ValueError(f"invalid presheaf {d.name}: " + "; ".join(bad[:3]))
    if any(d.base != presheaves[0].base for d in presheaves):
        raise ValueError("presheaves must share a base")
    by_name = {d.name: d for d in presheaves}
    arrows, comps = [], {}
    for d in presheaves:
        for e in presheaves:
            for i, phi in enumerate(presheaf_nat_transformations(d, e)):
                n = f"{d.name}=>{e.name}#" + ",".join(
                    f"{w}:" + "".join(f"{x}>{phi[w][x]};" for x in d.at[w]) for w in d.base.objects
                )
                arrows.append((n, d.name, e.name))
                comps[n] = phi
    identities = {}
    for d in presheaves:
        ident = {w: {x: x for x in d.at[w]} for w in d.base.objects}
        name = next(n for (n, s, t) in arrows if s == d.name and t == d.name and comps[n] == ident)
        identities[d.name] = name
    composition = {}
    for (gn, gs, gd) in arrows:
        for (fn, fs, fd) in arrows:
            if fd == gs:
                phi = {
                    w: {x: comps[gn][w][comps[fn][w][x]] for x in by_name[fs].at[w]}
                    for w in by_name[fs].base.objects
                }
                name = next(
                    n for (n, s, t) in arrows if s == fs and t == gd and comps[n] == phi
                )
                composition[(gn, fn)] = name
    base = fin_category([d.name for d in presheaves], arrows, identities, composition)

    fibers, decode = {}, {}
    sub_fibers = {}
    for d in presheaves:
        worlds = list(d.base.objects)
        labels, dec = [], {}
        for combo in product(*[subsets_in_order(d.at[w]) for w in worlds]):
            parts = dict(zip(worlds, combo))
            lbl = presheaf_family_label(parts, d)
            labels.append(lbl)
            dec[lbl] = parts
        rel = frozenset(
            (l1, l2)
            for l1 in labels
            for l2 in labels
            if all(dec[l1][w] <= dec[l2][w] for w in worlds)
        )
        fibers[d.name] = FinPoset(tuple(labels), rel)
        decode[d.name] = dec
        from .order import sub_poset

        sub_fibers[d.name] = sub_poset(
            fibers[d.name], [l for l in labels if is_subpresheaf(d, dec[l])]
        )

    def _reindex(fibs):
        out = {}
        for (n, sn, dn) in arrows:
            phi = comps[n]
            mapping = {}
            for lbl in fibs[dn].elements:
                parts = decode[dn][lbl]
                pre = {
                    w: frozenset(x for x in by_name[sn].at[w] if phi[w][x] in parts[w])
                    for w in by_name[sn].base.objects
                }
                mapping[lbl] = presheaf_family_label(pre, by_name[sn])
            out[n] = MonotoneMap(fibs[dn], fibs[sn], mapping)
        return out

    Qdoc = Doctrine(base, fibers, _reindex(fibers))
    sub_reindex = {}
    for (n, sn, dn) in arrows:
        m = Qdoc.reindex[n]
        sub_reindex[n] = MonotoneMap(
            sub_fibers[dn],
            sub_fibers[sn],
            {l: m.apply(l) for l in sub_fibers[dn].elements},
        )
    Pdoc = Doctrine(base, sub_fibers, sub_reindex)
    lam = {
        d.name: MonotoneMap(
            sub_fibers[d.name],
            fibers[d.name],
            {l: l for l in sub_fibers[d.name].elements},
        )
        for d in presheaves
    }
    rho = {
        d.name: MonotoneMap(
            fibers[d.name],
            sub_fibers[d.name],
            {
                lbl: presheaf_family_label(largest_subpresheaf(d, decode[d.name][lbl]), d)
                for lbl in fibers[d.name].elements
            },
        )
        for d in presheaves
    }
    adj = vertical_adjunction(Pdoc, Qdoc, lam, rho)
    op = vertical_modality(adj)
    return adj, Qdoc, op


def presheaf_decode(doc_fiber_label: str, d: FinPresheaf) -> dict:
    body = doc_fiber_label[1:-1]
    out = {}
    for chunk in body.split(";"):
        w, v = chunk.split(":", 1)
        out[w] = label_subset(v)
    return out


# ---------------------------------------------------------------------------
# Subobjects over finite sets, computed by pullback


def subobject_doctrine_finset(sets: Mapping[str, Sequence[str]]) -> Doctrine:
    """Subobject doctrine over a finite-set fragment with reindexing computed
    by an explicit pullback (pairs construction), not by inverse image; it is
    the powerset doctrine up to a natural fiberwise bijection."""
    fc = full_function_category(sets)
    base = fc.category
    from .order import powerset_poset

    fibers = {x: powerset_poset(sets[x]) for x in base.objects}
    reindex = {}
    for a in base.arrow_names():
        s, d = base.src(a), base.dst(a)
        g = fc.graphs[a]
        mapping = {}
        for lbl in fibers[d].elements:
            target = label_subset(lbl)
            pullback_pairs = [(e, m) for e in sets[s] for m in target if g[e] == m]
            mapping[lbl] = subset_label({e for (e, _) in pullback_pairs}, sets[s])
        reindex[a] = MonotoneMap(fibers[d], fibers[s], mapping)
    return Doctrine(base, fibers, reindex)


# ---------------------------------------------------------------------------
# Connective modalities


def conjunction_adjunction(P: Doctrine) -> DoctrineAdjunction:
    """Diagonal ⊣ meet between P and its square; every fiber must have binary
    meets preserved by reindexing."""
    from .doctrine import pair_label, square_doctrine

    meets = {}
    for x in P.base.objects:
        meets[x] = lattice_from_poset(P.fibers[x]).meet
    for t in P.base.arrow_names():
        x, y = P.base.src(t), P.base.dst(t)
        m = P.reindex[t]
        for a in P.fibers[y].elements:
            for b in P.fibers[y].elements:
                if m.apply(meets[y][(a, b)]) != meets[x][(m.apply(a), m.apply(b))]:
                    raise ValueError(f"reindexing along {t} does not preserve meets at ({a},{b})")
    squared, diagonal = square_doctrine(P)
    rho = {
        x: MonotoneMap(
            squared.fibers[x],
            P.fibers[x],
            {
                pair_label(a, b): meets[x][(a, b)]
                for a in P.fibers[x].elements
                for b in P.fibers[x].elements
            },
        )
        for x in P.base.objects
    }
    return vertical_adjunction(P, squared, dict(diagonal.parts), rho)


def conjunction_modality(P: Doctrine) -> InteriorOp:
    """(α,β) ↦ (α∧β, α∧β) on the square doctrine."""
    return vertical_modality(conjunction_adjunction(P))


def forall_instance(
    y_sets: Mapping[str, Sequence[str]], x_name: str, x_elements: Sequence[str]
) -> tuple[DoctrineAdjunction, InteriorOp]:
    """Weakening ⊣ universal quantification over a finite powerset fragment:
    the fragment is closed with chosen products Y×X, the left adjoint is
    reindexing along the first projection, and the right adjoint is the
    pointwise ∀ over the X component."""
    def pair_elem(y, x):
        return f"{y}*{x}"

    all_sets: dict = {}
    prods: dict = {}
    for y, els in y_sets.items():
        all_sets[y] = list(els)
    all_sets[x_name] = list(x_elements)
    for y, els in y_sets.items():
        pname = f"{y}x{x_name}"
        prods[y] = pname
        all_sets[pname] = [pair_elem(e, x) for e in els for x in x_elements]
    P, fc = powerset_doctrine(all_sets)
    base = fc.category
    names = list(y_sets)
    sub = fin_category(
        names,
        [(a, base.src(a), base.dst(a)) for a in base.arrow_names() if base.src(a) in names and base.dst(a) in names],
        {y: base.id(y) for y in names},
        {
            (g, f): base.comp(g, f)
            for g in base.arrow_names()
            for f in base.arrow_names()
            if base.src(g) in names and base.dst(g) in names
            and base.src(f) in names and base.dst(f) in names
            and base.dst(f) == base.src(g)
        },
    )
    products = {}
    for y in names:
        pname = prods[y]
        proj1 = function_arrow_name(
            pname, y, {pair_elem(e, x): e for e in y_sets[y] for x in x_elements}, all_sets[pname]
        )
        proj2 = function_arrow_name(
            pname, x_name, {pair_elem(e, x): x for e in y_sets[y] for x in x_elements}, all_sets[pname]
        )
        products[y] = ProductData(
            pname, proj1, proj2, {(e, x): pair_elem(e, x) for e in y_sets[y] for x in x_elements}
        )
    times = {}
    for f in sub.arrow_names():
        y, z = sub.src(f), sub.dst(f)
        g = fc.graphs[f]
        lifted = {
            pair_elem(e, x): pair_elem(g[e], x) for e in y_sets[y] for x in x_elements
        }
        times[f] = function_arrow_name(prods[y], prods[z], lifted, all_sets[prods[y]])
    powered, weakening = power_doctrine(P, sub, x_name, products, times)
    restricted = restrict_doctrine(P, sub)
    rho = {}
    for y in names:
        mapping = {}
        for lbl in powered.fibers[y].elements:
            alpha = label_subset(lbl)
            kept = [
                e for e in y_sets[y] if all(pair_elem(e, x) in alpha for x in x_elements)
            ]
            mapping[lbl] = subset_label(kept, y_sets[y])
        rho[y] = MonotoneMap(powered.fibers[y], restricted.fibers[y], mapping)
    adj = vertical_adjunction(restricted, powered, dict(weakening.parts), rho)
    return adj, vertical_modality(adj)
