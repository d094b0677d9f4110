"""Shared builders for tests; deliberately independent of doctrines.instances
so instance constructors can be cross-checked against these."""

from doctrines.doctrine import Doctrine
from doctrines.fincat import full_function_category
from doctrines.order import MonotoneMap, label_subset, powerset_poset, subset_label


def powerset_doctrine_over(sets):
    """Powerset doctrine over the full function category on `sets`,
    with inverse-image reindexing."""
    fc = full_function_category(sets)
    base = fc.category
    fibers = {x: powerset_poset(sets[x]) for x in base.objects}
    reindex = {}
    for a in base.arrow_names():
        src_obj, dst_obj = base.src(a), base.dst(a)
        g = fc.graphs[a]
        mapping = {}
        for lbl in fibers[dst_obj].elements:
            target = label_subset(lbl)
            preimage = [e for e in sets[src_obj] if g[e] in target]
            mapping[lbl] = subset_label(preimage, sets[src_obj])
        reindex[a] = MonotoneMap(fibers[dst_obj], fibers[src_obj], mapping)
    return Doctrine(base, fibers, reindex)
