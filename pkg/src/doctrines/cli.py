"""Command-line interface: parse model files in a line-oriented block format,
dispatch law suites and derivations, and emit deterministic reports.

Format: `kind name { key: atoms; ... }` with whitespace-separated atoms,
relations written `a->b`, map entries written `x=a>b,c>d`, sets written
`{a,b}`, and `#` comments. Exit status: 0 all verdicts pass, 1 any verdict
fails, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .adjunction import (
    adjunction_violations,
    factorization_composites_agree,
    factorize,
    factorize2_report,
    galois_violations,
    vertical_adjunction,
)
from .comonad import (
    check_comonad,
    cm_modality,
    cmd_of_adjunction,
    em_adjunction,
    em_doctrine,
    ma,
    mc,
    DoctrineComonad,
)
from .doctrine import Doctrine, check_doctrine
from .fincat import check_category
from .instances import (
    FinPresheaf,
    FiniteTopSpace,
    KripkeFrame,
    bang_law_suite,
    frame_violations,
    kripke_doctrine,
    presheaf_decode,
    presheaf_family_label,
    presheaf_instance,
    quantale_doctrine,
    quantale_violations,
    space_violations,
    subpresheaf_union_oracle,
    topological_doctrine,
    FiniteQuantale,
)
from .interior import InteriorOp, interior_violations
from .order import MonotoneMap, check_poset, close_relation, label_subset, lattice_from_poset
from .temporal import (
    FCoalgebra,
    coalgebra_violations,
    gfp_modality,
    oracle_for,
)

KINDS = (
    "poset",
    "category",
    "doctrine",
    "interior",
    "adjunction",
    "comonad",
    "kripke-frame",
    "quantale",
    "topspace",
    "presheaf",
    "coalgebra",
    "query",
)

LIFT_OF_OP = {"G": "stream", "AG": "forall", "EG": "exists"}


class ParseError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"parse error at line {line}, column {col}: {message}")
        self.line, self.col, self.message = line, col, message


class BuildError(Exception):
    pass


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    entries: tuple[tuple[str, tuple[str, ...]], ...]

    def get(self, key: str, default=None):
        for k, atoms in self.entries:
            if k == key:
                return list(atoms)
        return default

    def need(self, key: str) -> list[str]:
        got = self.get(key)
        if got is None:
            raise BuildError(f"{self.kind} {self.name}: missing entry '{key}'")
        return got


@dataclass(frozen=True)
class ModelDocument:
    declarations: tuple[Declaration, ...]

    def find(self, name: str):
        for d in self.declarations:
            if d.name == name:
                return d
        return None


def tokenize(text: str):
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 1
        for chunk in line.split():
            col = line.index(chunk, col - 1) + 1
            rest = chunk
            # peel standalone punctuation off the ends
            pre, post = [], []
            while rest and rest[0] == ";":
                pre.append((";", lineno, col))
                rest = rest[1:]
            while rest and rest[-1] == ";":
                post.insert(0, (";", lineno, col + len(rest) - 1))
                rest = rest[:-1]
            while rest and rest[-1] == "}" and rest != "}" and "{" not in rest:
                post.insert(0, ("}", lineno, col + len(rest) - 1))
                rest = rest[:-1]
            tokens.extend(pre)
            if rest:
                tokens.append((rest, lineno, col))
            tokens.extend(post)
            col += len(chunk)
    return tokens


def parse_text(text: str) -> ModelDocument:
    tokens = tokenize(text)
    decls = []
    names = set()
    i = 0
    n = len(tokens)
    while i < n:
        kind, line, col = tokens[i]
        if kind not in KINDS:
            raise ParseError(line, col, f"unknown block kind '{kind}'")
        if i + 2 >= n:
            raise ParseError(line, col, "unexpected end of file in block header")
        name = tokens[i + 1][0]
        if name in names:
            raise ParseError(tokens[i + 1][1], tokens[i + 1][2], f"duplicate name '{name}'")
        names.add(name)
        if tokens[i + 2][0] != "{":
            raise ParseError(tokens[i + 2][1], tokens[i + 2][2], "expected '{' after block name")
        i += 3
        entries = []
        current_key = None
        atoms: list[str] = []
        seen_keys = set()
        while True:
            if i >= n:
                raise ParseError(line, col, f"unterminated block '{name}'")
            tok, tl, tc = tokens[i]
            if tok == "}":
                if current_key is not None:
                    entries.append((current_key, tuple(atoms)))
                i += 1
                break
            if tok == ";":
                if current_key is not None:
                    entries.append((current_key, tuple(atoms)))
                    current_key, atoms = None, []
                i += 1
                continue
            if tok.endswith(":") and len(tok) > 1 and not tok.startswith("{"):
                if current_key is not None:
                    entries.append((current_key, tuple(atoms)))
                key = tok[:-1]
                if key in seen_keys:
                    raise ParseError(tl, tc, f"duplicate key '{key}' in block '{name}'")
                seen_keys.add(key)
                current_key, atoms = key, []
                i += 1
                continue
            if current_key is None:
                raise ParseError(tl, tc, f"expected 'key:' before atom '{tok}'")
            atoms.append(tok)
            i += 1
        decls.append(Declaration(kind, name, tuple(entries)))
    return ModelDocument(tuple(decls))


def parse(path: str) -> ModelDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def serialize(doc: ModelDocument) -> str:
    lines = []
    for d in doc.declarations:
        body = "; ".join(f"{k}: " + " ".join(atoms) for k, atoms in d.entries)
        lines.append(f"{d.kind} {d.name} {{ {body} }}")
    return "\n".join(lines) + "\n"


def _pairs(atoms):
    out = []
    for a in atoms:
        if "->" not in a:
            raise BuildError(f"expected a relation atom 'a->b', got '{a}'")
        left, right = a.split("->", 1)
        out.append((left, right))
    return out


def _map_entry(atom):
    """'x=a>b,c>d' -> ('x', {'a': 'b', 'c': 'd'}); 'x=v' -> ('x', 'v')."""
    if "=" not in atom:
        raise BuildError(f"expected 'name=value', got '{atom}'")
    key, body = atom.split("=", 1)
    if ">" in body:
        mapping = {}
        for part in body.split(","):
            if ">" not in part:
                raise BuildError(f"expected 'a>b' inside '{atom}'")
            a, b = part.split(">", 1)
            mapping[a] = b
        return key, mapping
    return key, body


def _named_sets(atoms):
    out = {}
    for a in atoms:
        key, body = a.split("=", 1)
        out[key] = [e for e in body.split(",") if e]
    return out


class Workspace:
    """Everything built from a document, plus the law-suite verdicts."""

    def __init__(self, max_size: int):
        self.max_size = max_size
        self.posets = {}
        self.categories = {}
        self.frames = {}
        self.frame_sets = {}
        self.quantales = {}
        self.quantale_sets = {}
        self.spaces = []
        self.presheaves = {}
        self.coalgebras = {}
        self.doctrines = {}
        self.interiors = {}
        self.adjunctions = {}
        self.comonads = {}
        self.queries = []
        self.verdicts = []
        self.outputs = {}

    def verdict(self, name: str, witnesses: list[str]):
        self.verdicts.append(
            {"name": name, "pass": not witnesses, "witnesses": [str(w) for w in witnesses[:8]]}
        )

    def refuse(self, name: str, count: int):
        self.verdicts.append(
            {
                "name": name,
                "pass": False,
                "witnesses": [f"refused: enumeration of {count} items exceeds --max-size {self.max_size}"],
            }
        )


def _build_poset(ws: Workspace, d: Declaration):
    elements = d.need("elements")
    pairs = _pairs(d.get("pairs", []))
    closure = (d.get("closure") or ["refl-trans"])[0]
    rel = close_relation(elements, pairs, closure)
    got = check_poset(elements, rel)
    if isinstance(got, list):
        ws.verdict(f"poset {d.name}", got)
    else:
        ws.posets[d.name] = got
        ws.verdict(f"poset {d.name}", [])


def _build_category(ws: Workspace, d: Declaration):
    objects = d.need("objects")
    arrows = []
    for atom in d.get("arrows", []):
        name, typ = atom.split("=", 1)
        srcdst = _pairs([typ])[0]
        arrows.append((name, srcdst[0], srcdst[1]))
    identities = dict(_map_entry(a) for a in d.need("identities"))
    composition = {}
    for atom in d.get("compose", []):
        lhs, result = atom.split("=", 1)
        g, f = lhs.split(".", 1)
        composition[(g, f)] = result
    got = check_category(objects, arrows, identities, composition)
    if isinstance(got, list):
        ws.verdict(f"category {d.name}", got)
    else:
        ws.categories[d.name] = got
        ws.verdict(f"category {d.name}", [])


def _build_frame(ws: Workspace, d: Declaration):
    worlds = d.need("worlds")
    pairs = _pairs(d.get("rel", []))
    closure = (d.get("closure") or ["refl-trans"])[0]
    rel = close_relation(worlds, pairs, closure)
    frame = KripkeFrame(tuple(worlds), rel)
    ws.frames[d.name] = frame
    ws.verdict(f"kripke-frame {d.name}", frame_violations(frame))
    sets = _named_sets(d.get("sets", []))
    if sets:
        count = sum((2 ** len(frame.worlds)) ** len(v) for v in sets.values())
        if count > ws.max_size:
            ws.refuse(f"kripke-doctrine {d.name}", count)
            return
        doc, op = kripke_doctrine(frame, sets)
        ws.frame_sets[d.name] = sets
        ws.doctrines[f"{d.name}.doctrine"] = doc
        ws.interiors[f"{d.name}.box"] = op
        ws.verdict(f"kripke-doctrine {d.name}", check_doctrine(doc))
        ws.verdict(f"kripke-interior {d.name}", interior_violations(op))


def _build_quantale(ws: Workspace, d: Declaration):
    elements = d.need("elements")
    pairs = _pairs(d.get("pairs", []))
    closure = (d.get("closure") or ["refl-trans"])[0]
    rel = close_relation(elements, pairs, closure)
    got = check_poset(elements, rel)
    if isinstance(got, list):
        ws.verdict(f"quantale {d.name}", got)
        return
    try:
        lat = lattice_from_poset(got)
    except ValueError as e:
        ws.verdict(f"quantale {d.name}", [str(e)])
        return
    unit = d.need("unit")[0]
    tensor = {}
    for atom in d.need("tensor"):
        lhs, result = atom.split("=", 1)
        a, b = lhs.split("*", 1)
        tensor[(a, b)] = result
        tensor.setdefault((b, a), result)
    q = FiniteQuantale(d.name, lat, tensor, unit)
    bad = quantale_violations(q)
    ws.verdict(f"quantale {d.name}", bad)
    if bad:
        return
    ws.quantales[d.name] = q
    sets = _named_sets(d.get("sets", []))
    if sets:
        count = sum(len(elements) ** len(v) for v in sets.values())
        if count > ws.max_size:
            ws.refuse(f"quantale-doctrine {d.name}", count)
            return
        ws.quantale_sets[d.name] = sets
        doc, adj, bang = quantale_doctrine(q, sets)
        ws.doctrines[f"{d.name}.doctrine"] = doc
        ws.adjunctions[f"{d.name}.adjunction"] = adj
        ws.interiors[f"{d.name}.bang"] = bang
        ws.verdict(f"quantale-adjunction {d.name}", adjunction_violations(adj))
        ws.verdict(f"quantale-bang {d.name}", interior_violations(bang))
        rep = bang_law_suite(q, sets)
        ws.verdict(
            f"quantale-bang-laws {d.name}",
            [] if rep["pass"] else [f"{k}: {v[:2]}" for k, v in rep.items() if k != "pass" and v],
        )


def _build_topspace(ws: Workspace, d: Declaration):
    points = d.need("points")
    opens = frozenset(label_subset(a) for a in d.need("opens"))
    space = FiniteTopSpace(d.name, tuple(points), opens)
    bad = space_violations(space)
    ws.verdict(f"topspace {d.name}", bad)
    if not bad:
        ws.spaces.append(space)


def _build_presheaf(ws: Workspace, d: Declaration):
    frame_name = d.need("frame")[0]
    frame = ws.frames.get(frame_name)
    if frame is None:
        raise BuildError(f"presheaf {d.name}: unresolved frame '{frame_name}'")
    from .order import check_poset as _chk

    got = _chk(frame.worlds, frame.rel)
    if isinstance(got, list):
        raise BuildError(f"presheaf {d.name}: frame '{frame_name}' must be an antisymmetric preorder")
    base = poset_category_cached(ws, frame_name, got)
    at = {}
    for atom in d.need("at"):
        key, body = atom.split("=", 1)
        if body.startswith("{") and body.endswith("}"):
            body = body[1:-1]
        at[key] = tuple(e for e in body.split(",") if e)
    act = {}
    for atom in d.get("act", []):
        key, mapping = _map_entry(atom)
        src, dst = key.split("->", 1)
        act[f"{src}<={dst}"] = mapping
    for w in base.objects:
        act.setdefault(base.id(w), {e: e for e in at.get(w, ())})
    # fill composites along reflexivity/transitivity when determined
    for f in base.arrow_names():
        if f not in act:
            raise BuildError(f"presheaf {d.name}: missing action along {f}")
    psh = FinPresheaf(d.name, base, at, act)
    from .instances import presheaf_violations

    bad = presheaf_violations(psh)
    ws.verdict(f"presheaf {d.name}", bad)
    if not bad:
        ws.presheaves.setdefault(frame_name, []).append(psh)


def poset_category_cached(ws: Workspace, frame_name: str, poset):
    key = f"__frame_base_{frame_name}"
    if key not in ws.categories:
        from .fincat import poset_category

        ws.categories[key] = poset_category(poset)
    return ws.categories[key]


def _build_coalgebra(ws: Workspace, d: Declaration):
    kind = d.need("kind")[0]
    states = d.need("states")
    step = {}
    for atom in d.need("step"):
        key, body = atom.split("=", 1)
        if kind == "stream":
            step[key] = body
        else:
            inner = body.strip()
            if not (inner.startswith("(") and inner.endswith(")")):
                raise BuildError(f"coalgebra {d.name}: tree step must be a tuple, got '{body}'")
            inner = inner[1:-1]
            step[key] = tuple(t for t in inner.split(",") if t)
    c = FCoalgebra(d.name, kind, tuple(states), step)
    bad = coalgebra_violations(c)
    ws.verdict(f"coalgebra {d.name}", bad)
    if not bad:
        ws.coalgebras[d.name] = c
        count = 2 ** len(states)
        if count > ws.max_size:
            ws.refuse(f"coalgebra-oracle {d.name}", count)
            return
        from itertools import chain, combinations

        lifts = ["stream"] if kind == "stream" else ["forall", "exists"]
        mism = []
        for lift in lifts:
            for r in range(len(states) + 1):
                for combo in combinations(states, r):
                    alpha = frozenset(combo)
                    if gfp_modality(c, lift, alpha) != oracle_for(c, lift, alpha):
                        mism.append(f"{lift} at {sorted(alpha)}")
        ws.verdict(f"coalgebra-oracle {d.name}", mism)


def _resolve_fiber(ws: Workspace, name: str):
    if name in ws.posets:
        return ws.posets[name]
    raise BuildError(f"unresolved poset reference '{name}'")


def _build_doctrine(ws: Workspace, d: Declaration):
    base_name = d.need("base")[0]
    base = ws.categories.get(base_name)
    if base is None:
        raise BuildError(f"doctrine {d.name}: unresolved category '{base_name}'")
    fibers = {}
    for atom in d.need("fiber"):
        obj, ref = atom.split("=", 1)
        fibers[obj] = _resolve_fiber(ws, ref)
    reindex = {}
    for atom in d.get("reindex", []):
        arrow, mapping = _map_entry(atom)
        if not base.has_arrow(arrow):
            raise BuildError(f"doctrine {d.name}: unresolved arrow '{arrow}'")
        x, y = base.src(arrow), base.dst(arrow)
        reindex[arrow] = MonotoneMap(fibers[y], fibers[x], mapping)
    for x in base.objects:
        ident = base.id(x)
        if ident not in reindex and x in fibers:
            from .order import identity_map

            reindex[ident] = identity_map(fibers[x])
    doc = Doctrine(base, fibers, reindex)
    bad = check_doctrine(doc)
    ws.verdict(f"doctrine {d.name}", bad)
    if not bad:
        ws.doctrines[d.name] = doc


def _build_interior(ws: Workspace, d: Declaration):
    ref = d.need("doctrine")[0]
    doc = ws.doctrines.get(ref)
    if doc is None:
        raise BuildError(f"interior {d.name}: unresolved doctrine '{ref}'")
    parts = {}
    for atom in d.need("box"):
        obj, mapping = _map_entry(atom)
        parts[obj] = MonotoneMap(doc.fibers[obj], doc.fibers[obj], mapping)
    op = InteriorOp(doc, parts)
    bad = interior_violations(op)
    ws.verdict(f"interior {d.name}", bad)
    if not bad:
        ws.interiors[d.name] = op


def _build_adjunction(ws: Workspace, d: Declaration):
    p = ws.doctrines.get(d.need("p")[0])
    q = ws.doctrines.get(d.need("q")[0])
    if p is None or q is None:
        raise BuildError(f"adjunction {d.name}: unresolved doctrine reference")
    lam, rho = {}, {}
    for atom in d.need("lam"):
        obj, mapping = _map_entry(atom)
        lam[obj] = MonotoneMap(p.fibers[obj], q.fibers[obj], mapping)
    for atom in d.need("rho"):
        obj, mapping = _map_entry(atom)
        rho[obj] = MonotoneMap(q.fibers[obj], p.fibers[obj], mapping)
    A = vertical_adjunction(p, q, lam, rho)
    bad = adjunction_violations(A)
    ws.verdict(f"adjunction {d.name}", bad)
    if not bad:
        ws.adjunctions[d.name] = A
        ws.verdict(f"adjunction-galois {d.name}", galois_violations(A))


def _build_comonad(ws: Workspace, d: Declaration):
    p = ws.doctrines.get(d.need("p")[0])
    if p is None:
        raise BuildError(f"comonad {d.name}: unresolved doctrine reference")
    from .fincat import Functor, NatTransformation, compose_functors, identity_functor, identity_nat

    base = p.base
    if d.get("k-obj") is not None:
        obj_map = dict(_map_entry(a) for a in d.need("k-obj"))
        arr_map = dict(_map_entry(a) for a in d.need("k-arr"))
        K = Functor(base, base, obj_map, arr_map)
    else:
        K = identity_functor(base)
    if d.get("mu") is not None:
        mu = NatTransformation(K, compose_functors(K, K), dict(_map_entry(a) for a in d.need("mu")))
    else:
        mu = NatTransformation(K, compose_functors(K, K), {x: base.id(K.obj_map[x]) for x in base.objects})
    if d.get("nu") is not None:
        nu = NatTransformation(K, identity_functor(base), dict(_map_entry(a) for a in d.need("nu")))
    else:
        nu = NatTransformation(K, identity_functor(base), {x: base.id(x) for x in base.objects})
    kappa = {}
    for atom in d.need("kappa"):
        obj, mapping = _map_entry(atom)
        kappa[obj] = MonotoneMap(p.fibers[obj], p.fibers[K.obj_map[obj]], mapping)
    c = DoctrineComonad(p, K, kappa, mu, nu)
    bad = check_comonad(c)
    ws.verdict(f"comonad {d.name}", bad)
    if not bad:
        ws.comonads[d.name] = c


BUILDERS = {
    "poset": _build_poset,
    "category": _build_category,
    "kripke-frame": _build_frame,
    "quantale": _build_quantale,
    "topspace": _build_topspace,
    "presheaf": _build_presheaf,
    "coalgebra": _build_coalgebra,
    "doctrine": _build_doctrine,
    "interior": _build_interior,
    "adjunction": _build_adjunction,
    "comonad": _build_comonad,
}


def build_workspace(doc: ModelDocument, max_size: int) -> Workspace:
    ws = Workspace(max_size)
    for d in doc.declarations:
        if d.kind == "query":
            ws.queries.append(d)
            continue
        try:
            BUILDERS[d.kind](ws, d)
        except BuildError as e:
            raise
        except (KeyError, ValueError) as e:
            ws.verdict(f"{d.kind} {d.name}", [f"build failed: {e}"])
    # cross-declaration groups
    if ws.spaces:
        count = sum(2 ** len(s.points) for s in ws.spaces)
        if count > ws.max_size:
            ws.refuse("topological-doctrine", count)
        else:
            tdoc, top = topological_doctrine(ws.spaces)
            ws.doctrines["topological.doctrine"] = tdoc
            ws.interiors["topological.interior"] = top
            ws.verdict("topological-doctrine", check_doctrine(tdoc))
            ws.verdict("topological-interior", interior_violations(top))
    for frame_name, group in ws.presheaves.items():
        count = sum(
            1
            for d in group
            for _ in range(max(1, 2 ** sum(len(d.at[w]) for w in d.base.objects)))
        )
        if count > ws.max_size:
            ws.refuse(f"presheaf-instance {frame_name}", count)
            continue
        adj, families, op = presheaf_instance(group)
        ws.adjunctions[f"presheaf.{frame_name}.adjunction"] = adj
        ws.doctrines[f"presheaf.{frame_name}.families"] = families
        ws.interiors[f"presheaf.{frame_name}.box"] = op
        ws.verdict(f"presheaf-adjunction {frame_name}", adjunction_violations(adj))
        ws.verdict(f"presheaf-interior {frame_name}", interior_violations(op))
        mism = []
        for d in group:
            for lbl in families.fibers[d.name].elements:
                parts = presheaf_decode(lbl, d)
                want = presheaf_family_label(subpresheaf_union_oracle(d, parts), d)
                if op.parts[d.name].apply(lbl) != want:
                    mism.append(f"{d.name} at {lbl}")
        ws.verdict(f"presheaf-oracle {frame_name}", mism)
    return ws


def _run_queries(ws: Workspace):
    for q in ws.queries:
        try:
            mode = q.need("run")[0]
            if mode == "temporal":
                cname = q.need("coalgebra")[0]
                c = ws.coalgebras.get(cname)
                if c is None:
                    raise BuildError(f"query {q.name}: unresolved coalgebra '{cname}'")
                op = q.need("op")[0]
                lift = LIFT_OF_OP.get(op)
                if lift is None:
                    raise BuildError(f"query {q.name}: unknown temporal op '{op}'")
                alpha = label_subset(q.need("alpha")[0])
                got = gfp_modality(c, lift, alpha)
                want = oracle_for(c, lift, alpha)
                from .order import subset_label

                ws.outputs[f"query {q.name}"] = subset_label(got, c.states)
                ws.verdict(
                    f"query {q.name}",
                    [] if got == want else [f"fixpoint {sorted(got)} differs from oracle {sorted(want)}"],
                )
            elif mode == "check":
                target = q.need("target")[0]
                found = [v for v in ws.verdicts if v["name"].split(" ", 1)[-1].startswith(target)]
                ws.verdict(
                    f"query {q.name}",
                    [] if found and all(v["pass"] for v in found) else [f"target '{target}' has failing or missing verdicts"],
                )
            elif mode == "derive":
                src = q.need("from")[0]
                what = q.need("what")[0]
                _derive_into(ws, f"query {q.name}", src, what)
            else:
                raise BuildError(f"query {q.name}: unknown run mode '{mode}'")
        except BuildError as e:
            raise
        except (KeyError, ValueError) as e:
            ws.verdict(f"query {q.name}", [f"query failed: {e}"])


def _derive_into(ws: Workspace, label: str, src: str, what: str):
    if src in ws.adjunctions:
        A = ws.adjunctions[src]
        if what == "modality":
            from .adjunction import am_modality

            doc, op = am_modality(A)
            ws.outputs[label] = _box_tables(op)
            ws.verdict(label, interior_violations(op))
        elif what == "comonad":
            c = cmd_of_adjunction(A)
            ws.verdict(label, check_comonad(c))
        else:
            raise BuildError(f"{label}: cannot derive '{what}' from an adjunction")
    elif src in ws.comonads:
        c = ws.comonads[src]
        if what == "modality":
            op = cm_modality(c)
            ws.outputs[label] = _box_tables(op)
            ws.verdict(label, interior_violations(op))
        elif what == "adjunction":
            A = em_adjunction(c)
            ws.verdict(label, adjunction_violations(A))
        else:
            raise BuildError(f"{label}: cannot derive '{what}' from a comonad")
    elif src in ws.interiors:
        op = ws.interiors[src]
        if what == "comonad":
            ws.verdict(label, check_comonad(mc(op)))
        elif what == "adjunction":
            ws.verdict(label, adjunction_violations(ma(op)))
        elif what == "modality":
            ws.outputs[label] = _box_tables(op)
            ws.verdict(label, interior_violations(op))
        else:
            raise BuildError(f"{label}: cannot derive '{what}' from an interior operator")
    else:
        raise BuildError(f"{label}: unresolved source '{src}'")


def _box_tables(op: InteriorOp) -> dict:
    return {
        x: {a: op.parts[x].apply(a) for a in op.doctrine.fibers[x].elements}
        for x in op.doctrine.base.objects
    }


def run(document: ModelDocument | None, command: str, flags: dict) -> dict:
    """Build the document, execute `command`, and produce the report object."""
    seed = flags.get("seed", 7)
    max_size = flags.get("max_size", 200000)
    report = {
        "tool": "doctrines",
        "version": __version__,
        "command": command,
        "seed": seed,
        "max_size": max_size,
        "verdicts": [],
        "outputs": {},
    }
    if command == "suite":
        from .suite import run_acceptance

        acc = run_acceptance(seed)
        for c in acc["criteria"]:
            report["verdicts"].append(
                {
                    "name": f"criterion {c['id']}: {c['title']}",
                    "pass": c["pass"],
                    "witnesses": [] if c["pass"] else c["details"][:8],
                }
            )
        report["outputs"]["criteria-details"] = {
            f"criterion {c['id']}": c["details"] for c in acc["criteria"]
        }
        return report
    ws = build_workspace(document, max_size)
    if command == "check":
        target = flags.get("target")
        _run_queries(ws)
        if target:
            ws.verdicts = [v for v in ws.verdicts if target in v["name"]]
            if not ws.verdicts:
                raise BuildError(f"no verdicts match target '{target}'")
    elif command == "derive":
        src = flags.get("from")
        what = flags.get("what")
        if not src or not what:
            raise BuildError("derive needs --from and one of --modality/--comonad/--adjunction")
        _derive_into(ws, f"derive {src} {what}", src, what)
    elif command == "em":
        src = flags.get("from")
        if src in ws.interiors:
            c = mc(ws.interiors[src])
        elif src in ws.comonads:
            c = ws.comonads[src]
        else:
            raise BuildError(f"em: unresolved comonad or interior '{src}'")
        bundle = em_doctrine(c)
        ws.outputs[f"em {src}"] = {
            "coalgebras": list(bundle.em.base.objects),
            "fibers": {o: list(bundle.em.fibers[o].elements) for o in bundle.em.base.objects},
        }
        ws.verdict(f"em {src}", check_doctrine(bundle.em))
        ws.verdict(f"em-adjunction {src}", adjunction_violations(em_adjunction(c)))
    elif command == "factor":
        src = flags.get("from")
        A = ws.adjunctions.get(src)
        if A is None:
            raise BuildError(f"factor: unresolved adjunction '{src}'")
        vert, bc = factorize(A)
        ws.verdict(f"factor-vertical {src}", adjunction_violations(vert))
        ws.verdict(f"factor-base-change {src}", adjunction_violations(bc))
        ws.verdict(f"factor-composites {src}", factorization_composites_agree(A))
        rep = factorize2_report(A)
        ws.verdict(f"factor-stable {src}", [] if rep["pass"] else ["refined factorization failed"])
        ws.outputs[f"factor {src}"] = {
            "lambda-surjective": {k: v["holds"] for k, v in rep["lambda_surjective_onto_stable"].items()},
            "eta-rho-injective": {k: v["holds"] for k, v in rep["eta_rho_injective_on_stable"].items()},
        }
    elif command == "temporal":
        cname = flags.get("coalgebra")
        c = ws.coalgebras.get(cname)
        if c is None:
            raise BuildError(f"temporal: unresolved coalgebra '{cname}'")
        opname = flags.get("op")
        lift = LIFT_OF_OP.get(opname)
        if lift is None:
            raise BuildError(f"temporal: unknown op '{opname}' (expected G, AG or EG)")
        alpha = label_subset(flags.get("alpha", "{}"))
        got = gfp_modality(c, lift, alpha)
        want = oracle_for(c, lift, alpha)
        from .order import subset_label

        ws.outputs[f"temporal {opname} {cname}"] = subset_label(got, c.states)
        ws.verdict(
            f"temporal {opname} {cname}",
            [] if got == want else [f"fixpoint differs from oracle {sorted(want)}"],
        )
    else:
        raise BuildError(f"unknown command '{command}'")
    report["verdicts"] = ws.verdicts
    report["outputs"] = ws.outputs
    return report


def render_text(report: dict) -> str:
    lines = [
        f"doctrines {report['command']} report (seed={report['seed']}, max-size={report['max_size']})"
    ]
    for v in report["verdicts"]:
        lines.append(("PASS " if v["pass"] else "FAIL ") + v["name"])
        for w in v["witnesses"]:
            lines.append(f"  - {w}")
    for key, value in report["outputs"].items():
        lines.append(f"{key}: {json.dumps(value)}")
    n = len(report["verdicts"])
    good = sum(1 for v in report["verdicts"] if v["pass"])
    lines.append(f"RESULT: {'PASS' if good == n else 'FAIL'} ({good}/{n})")
    return "\n".join(lines) + "\n"


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="doctrines", description=__doc__)
    ap.add_argument("--json", action="store_true", help="emit a structured report")
    ap.add_argument("--seed", type=int, default=7, help="seed for randomized suites")
    ap.add_argument("--max-size", type=int, default=200000, help="refuse enumerations above this size")
    sub = ap.add_subparsers(dest="command", required=True)
    p_check = sub.add_parser("check", help="run every law suite declared in a model file")
    p_check.add_argument("file")
    p_check.add_argument("--all", action="store_true", help="run all checks (default)")
    p_check.add_argument("--target", help="restrict the report to verdicts matching a name")
    p_derive = sub.add_parser("derive", help="run a construction and report its law suite")
    p_derive.add_argument("file")
    p_derive.add_argument("--from", dest="source", required=True)
    g = p_derive.add_mutually_exclusive_group(required=True)
    g.add_argument("--modality", action="store_true")
    g.add_argument("--comonad", action="store_true")
    g.add_argument("--adjunction", action="store_true")
    p_em = sub.add_parser("em", help="dump the Eilenberg-Moore doctrine of a comonad")
    p_em.add_argument("file")
    p_em.add_argument("--from", dest="source", required=True)
    p_factor = sub.add_parser("factor", help="both factorization theorems for an adjunction")
    p_factor.add_argument("file")
    p_factor.add_argument("--from", dest="source", required=True)
    p_temporal = sub.add_parser("temporal", help="G/AG/EG queries with oracle cross-checks")
    p_temporal.add_argument("file")
    p_temporal.add_argument("--coalgebra", required=True)
    p_temporal.add_argument("--op", required=True)
    p_temporal.add_argument("--alpha", default="{}")
    sub.add_parser("suite", help="run the full acceptance suite")
    return ap


def main(argv=None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    flags = {"seed": args.seed, "max_size": args.max_size}
    if args.command == "derive":
        flags["from"] = args.source
        flags["what"] = "modality" if args.modality else ("comonad" if args.comonad else "adjunction")
    elif args.command in ("em", "factor"):
        flags["from"] = args.source
    elif args.command == "temporal":
        flags.update({"coalgebra": args.coalgebra, "op": args.op, "alpha": args.alpha})
    elif args.command == "check":
        flags["target"] = args.target
    try:
        document = None
        if args.command != "suite":
            document = parse(getattr(args, "file"))
        report = run(document, args.command, flags)
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"cannot read file: {e.filename}", file=sys.stderr)
        return 2
    except BuildError as e:
        print(str(e), file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return 0 if all(v["pass"] for v in report["verdicts"]) else 1


if __name__ == "__main__":
    sys.exit(main())
