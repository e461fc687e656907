"""Relative categories, zigzag types and shapes, and zigzag (hammock) categories.

A zigzag shape is the free category on a line graph with a chosen direction
per edge; since the graph is a line, every hom-set has at most one element
and the shape is materialized as a FinCat with integer node objects and
(i, j) path morphisms.  Categories of relative functors out of a line shape
are enumerated directly from edge data, which keeps object labels canonical:
a zigzag is labelled (node objects, edge morphisms) and a ladder between
zigzags is labelled (source, target, vertical morphisms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import budget
from .errors import BadZigzagType, InputParse, ShapeMismatch, UnknownMorphism, UnknownObject
from .fincat import FinCat, Functor, canon_key, sort_labels


@dataclass(frozen=True, eq=True)
class RelCat:
    """A finite category with a wide subcategory of weak equivalences.

    line_dirs is set for zigzag shape categories (tuple of +1/-1 per edge)
    and enables the fast path for relative functor enumeration.
    """

    und: FinCat
    weq: frozenset
    line_dirs: tuple | None = None

    @cached_property
    def weq_sorted(self):
        return sort_labels(self.weq)

    def is_weq(self, m):
        return m in self.weq

    def check(self):
        morset = set(self.und.morphisms)
        for m in self.weq:
            if m not in morset:
                raise UnknownMorphism(m)
        for i in self.und.id_of.values():
            if i not in self.weq:
                raise InputParse(f"weak equivalences must contain the identity {i!r}")
        for (g, f), gf in self.und.comp.items():
            if g in self.weq and f in self.weq and gf not in self.weq:
                raise InputParse(f"weak equivalences are not closed under composition at ({g!r}, {f!r})")
        return True


def make_relative(c: FinCat, weq_generators) -> RelCat:
    """Close the generators under composition and adjoin all identities."""
    morset = set(c.morphisms)
    for m in weq_generators:
        if m not in morset:
            raise UnknownMorphism(m)
    weq = set(c.id_of.values()) | set(weq_generators)
    changed = True
    while changed:
        changed = False
        for g in list(weq):
            for f in list(weq):
                if c.tgt[f] == c.src[g]:
                    gf = c.comp[(g, f)]
                    if gf not in weq:
                        weq.add(gf)
                        changed = True
    return RelCat(c, frozenset(weq))


def all_weq(c: FinCat) -> RelCat:
    return RelCat(c, frozenset(c.morphisms))


def identities_only(c: FinCat) -> RelCat:
    return RelCat(c, frozenset(c.id_of.values()))


def weq_subcategory(r: RelCat) -> FinCat:
    """The wide subcategory on the weak equivalences."""
    morphisms = sort_labels(r.weq)
    comp = {k: v for k, v in r.und.comp.items() if k[0] in r.weq and k[1] in r.weq}
    return FinCat.build(
        r.und.objects,
        morphisms,
        {m: r.und.src[m] for m in morphisms},
        {m: r.und.tgt[m] for m in morphisms},
        dict(r.und.id_of),
        comp,
    )


# ---------------------------------------------------------------------------
# Zigzag types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class ZigzagType:
    """A sign-alternating sequence of non-zero integers."""

    signs: tuple

    def __post_init__(self):
        for i, k in enumerate(self.signs):
            if k == 0:
                raise BadZigzagType("zero entry in a normalized zigzag type")
            if i > 0 and (k > 0) == (self.signs[i - 1] > 0):
                raise BadZigzagType("signs must alternate in a normalized zigzag type")

    @property
    def length(self):
        return sum(abs(k) for k in self.signs)

    def dirs(self):
        """One +1/-1 per edge of the underlying line graph."""
        out = []
        for k in self.signs:
            out.extend([1 if k > 0 else -1] * abs(k))
        return tuple(out)


def normalize_zigzag_type(seq) -> ZigzagType:
    """Merge same-sign neighbours and drop zeros; preserves total length."""
    merged = []
    for k in seq:
        if k == 0:
            continue
        if merged and (merged[-1] > 0) == (k > 0):
            merged[-1] += k
        else:
            merged.append(k)
    return ZigzagType(tuple(merged))


def dirs_of(seq) -> tuple:
    """Edge directions of an unnormalized integer sequence."""
    return normalize_zigzag_type(seq).dirs() if any(seq) else ()


# ---------------------------------------------------------------------------
# Zigzag shape categories
# ---------------------------------------------------------------------------


def _line_morphisms(dirs):
    """Path morphisms (i, j) of the free category on the line with edge dirs."""
    n = len(dirs)
    morphisms = [(i, i) for i in range(n + 1)]
    for i in range(n + 1):
        # rightward runs from i
        j = i
        while j < n and dirs[j] > 0:
            j += 1
            morphisms.append((i, j))
        # leftward runs ending at i (morphisms from higher to lower index)
        j = i
        while j < n and dirs[j] < 0:
            j += 1
            morphisms.append((j, i))
    return sort_labels(set(morphisms))


def zigzag_shape(seq) -> RelCat:
    """The zigzag shape category of an (unnormalized) type.

    Underlying category: free category on the line; weak equivalences:
    composites of leftward edges.
    """
    dirs = dirs_of(seq) if not isinstance(seq, ZigzagType) else seq.dirs()
    return shape_from_dirs(dirs)


def shape_from_dirs(dirs) -> RelCat:
    n = len(dirs)
    objects = tuple(range(n + 1))
    morphisms = _line_morphisms(dirs)
    src = {m: m[0] for m in morphisms}
    tgt = {m: m[1] for m in morphisms}
    id_of = {i: (i, i) for i in objects}
    morset = set(morphisms)
    comp = {}
    for (i, j) in morphisms:
        for (j2, k) in morphisms:
            if j2 == j:
                if (i, k) not in morset:
                    continue  # cannot happen on a line, kept defensive
                comp[((j, k), (i, j))] = (i, k)
    und = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    weq = frozenset(m for m in morphisms if m[0] >= m[1])
    return RelCat(und, weq, line_dirs=tuple(dirs))


# ---------------------------------------------------------------------------
# Zigzags and ladders over a line shape
# ---------------------------------------------------------------------------


def enumerate_zigzags(c: RelCat, dirs, x=None, y=None):
    """Zigzag labels (objects, edges) of the given edge pattern in C.

    Rightward edges map to arbitrary morphisms, leftward edges to weak
    equivalences (pointing from the higher node to the lower one).  x / y
    optionally pin the first / last node object.
    """
    und = c.und
    n = len(dirs)
    results = []
    starts = [x] if x is not None else list(und.objects)
    if x is not None and x not in set(und.objects):
        raise UnknownObject(x)
    if y is not None and y not in set(und.objects):
        raise UnknownObject(y)

    def extend(nodes, edges, t):
        if t == n:
            if y is None or nodes[-1] == y:
                results.append((tuple(nodes), tuple(edges)))
            return
        cur = nodes[-1]
        if dirs[t] > 0:
            for m in und.out_of(cur):
                nodes.append(und.tgt[m])
                edges.append(m)
                extend(nodes, edges, t + 1)
                nodes.pop()
                edges.pop()
        else:
            for m in und.into(cur):
                if m in c.weq:
                    nodes.append(und.src[m])
                    edges.append(m)
                    extend(nodes, edges, t + 1)
                    nodes.pop()
                    edges.pop()

    for s in starts:
        extend([s], [], 0)
    results.sort(key=canon_key)
    budget.current().check_objects(len(results), "zigzag enumeration")
    return results


def enumerate_ladders(c: RelCat, dirs, zigzags, fix_endpoints):
    """All weq ladders between the given zigzags.

    A ladder from z to z' is a tuple of vertical weak equivalences
    v_i : z_i → z'_i making every square commute; with fix_endpoints the
    outermost verticals must be identities.
    """
    und = c.und
    n = len(dirs)
    zigset = set(zigzags)
    ladders = []

    def verticals_ok(top, v_prev, v_next, t, bottom_edge):
        # square over edge t: top edge e, bottom edge bottom_edge
        e = top[1][t]
        if dirs[t] > 0:
            return und.comp[(bottom_edge, v_prev)] == und.comp[(v_next, e)]
        return und.comp[(v_prev, e)] == und.comp[(bottom_edge, v_next)]

    for top in zigzags:
        nodes, edges = top

        def extend(t, verts, bnodes, bedges):
            if t == n:
                if fix_endpoints and not und.is_identity(verts[-1]):
                    return
                bottom = (tuple(bnodes), tuple(bedges))
                if bottom in zigset:
                    ladders.append((top, bottom, tuple(verts)))
                return
            v_prev = verts[-1]
            # choose the next vertical and the bottom edge together
            if dirs[t] > 0:
                for v_next in und.out_of(nodes[t + 1]):
                    if v_next not in c.weq:
                        continue
                    if fix_endpoints and t == n - 1 and not und.is_identity(v_next):
                        continue
                    lhs = und.comp[(v_next, edges[t])]
                    for be in und.hom(bnodes[-1], und.tgt[v_next]):
                        if und.comp[(be, v_prev)] == lhs:
                            extend(t + 1, verts + [v_next], bnodes + [und.tgt[v_next]], bedges + [be])
            else:
                for v_next in und.out_of(nodes[t + 1]):
                    if v_next not in c.weq:
                        continue
                    if fix_endpoints and t == n - 1 and not und.is_identity(v_next):
                        continue
                    lhs = und.comp[(v_prev, edges[t])]
                    for be in und.hom(und.tgt[v_next], bnodes[-1]):
                        if be in c.weq and und.comp[(be, v_next)] == lhs:
                            extend(t + 1, verts + [v_next], bnodes + [und.tgt[v_next]], bedges + [be])

        first = [und.id_of[nodes[0]]] if fix_endpoints else [v for v in und.out_of(nodes[0]) if v in c.weq]
        for v0 in first:
            extend(0, [v0], [und.tgt[v0]], [])
    ladders.sort(key=canon_key)
    budget.current().check_morphisms(len(ladders), "ladder enumeration")
    return ladders


def _ladder_category(c: RelCat, dirs, zigzags, fix_endpoints):
    und = c.und
    ladders = enumerate_ladders(c, dirs, zigzags, fix_endpoints)
    objects = tuple(zigzags)
    src = {m: m[0] for m in ladders}
    tgt = {m: m[1] for m in ladders}
    id_of = {z: (z, z, tuple(und.id_of[o] for o in z[0])) for z in objects}
    by_src = {}
    for m in ladders:
        by_src.setdefault(m[0], []).append(m)
    comp = {}
    for m1 in ladders:
        for m2 in by_src.get(m1[1], ()):
            verts = tuple(und.comp[(m2[2][i], m1[2][i])] for i in range(len(m1[2])))
            comp[(m2, m1)] = (m1[0], m2[1], verts)
    return FinCat.build(objects, tuple(ladders), src, tgt, id_of, comp)


def weq_relfun_line(c: RelCat, dirs) -> FinCat:
    """weq RelFun(shape, C) for a line shape: zigzags and weq ladders."""
    zigzags = enumerate_zigzags(c, dirs)
    return _ladder_category(c, dirs, zigzags, fix_endpoints=False)


def zigzag_category(c: RelCat, seq, x, y) -> FinCat:
    """The category of zigzags from x to y of the given type.

    Objects are zigzags with the endpoints pinned; morphisms are ladders
    whose outer verticals are identities.
    """
    dirs = dirs_of(seq) if not isinstance(seq, ZigzagType) else seq.dirs()
    if len(dirs) == 0:
        if x == y:
            if x not in set(c.und.objects):
                raise UnknownObject(x)
            label = ((x,), ())
            ident = (label, label, (c.und.id_of[x],))
            return FinCat.build((label,), (ident,), {ident: label}, {ident: label}, {label: ident}, {(ident, ident): ident})
        return FinCat.build((), (), {}, {}, {}, {})
    zigzags = enumerate_zigzags(c, dirs, x, y)
    return _ladder_category(c, dirs, zigzags, fix_endpoints=True)


def node_functor(cat_on_dirs: FinCat, c: RelCat, node: int, target: FinCat | None = None) -> Functor:
    """Evaluation at a line node, e.g. dom (node 0) or codom (last node).

    target defaults to weq C; it must contain all weq morphisms of C.
    """
    tgt = target if target is not None else weq_subcategory(c)
    return Functor(
        cat_on_dirs,
        tgt,
        {z: z[0][node] for z in cat_on_dirs.objects},
        {m: m[2][node] for m in cat_on_dirs.morphisms},
    )


# ---------------------------------------------------------------------------
# Shape maps and the functors they induce
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class ShapeMap:
    """A relative functor between line shapes, given by its node images.

    Maps the j-th edge of the source pattern to the (possibly empty) path
    between node_images[j] and node_images[j+1] in the target pattern;
    leftward edges must land on weak equivalences.  Precomposition with a
    shape map induces functors between zigzag and relative functor
    categories in the other direction.
    """

    src_dirs: tuple   # pattern of the shape the map goes FROM
    tgt_dirs: tuple   # pattern of the shape the map goes TO
    node_images: tuple

    def __post_init__(self):
        if len(self.node_images) != len(self.src_dirs) + 1:
            raise ShapeMismatch("node image count does not match the source pattern")
        for j, d in enumerate(self.src_dirs):
            a, b = self.node_images[j], self.node_images[j + 1]
            lo, hi = min(a, b), max(a, b)
            if d > 0:
                # need a morphism a → b in the target shape
                if a <= b:
                    if not all(x > 0 for x in self.tgt_dirs[a:b]):
                        raise ShapeMismatch(f"edge {j} has no rightward image path")
                else:
                    if not all(x < 0 for x in self.tgt_dirs[b:a]):
                        raise ShapeMismatch(f"edge {j} has no image path")
            else:
                # leftward edge: morphism from node j+1 image to node j image, must be weq
                if b >= a:
                    if not all(x < 0 for x in self.tgt_dirs[a:b]):
                        raise ShapeMismatch(f"leftward edge {j} does not land on weak equivalences")
                else:
                    raise ShapeMismatch(f"leftward edge {j} does not land on weak equivalences")

    def pull_zigzag(self, c: RelCat, z):
        """Restrict a zigzag over tgt_dirs to one over src_dirs."""
        und = c.und
        nodes, edges = z
        new_nodes = tuple(nodes[i] for i in self.node_images)
        new_edges = []
        for j in range(len(self.src_dirs)):
            a, b = self.node_images[j], self.node_images[j + 1]
            lo, hi = min(a, b), max(a, b)
            if lo == hi:
                new_edges.append(und.id_of[nodes[lo]])
            else:
                new_edges.append(_compose_interval(und, edges, lo, hi, self.tgt_dirs))
        return (new_nodes, tuple(new_edges))

    def pull_ladder(self, c: RelCat, m):
        top, bottom, verts = m
        return (
            self.pull_zigzag(c, top),
            self.pull_zigzag(c, bottom),
            tuple(verts[i] for i in self.node_images),
        )


def _compose_interval(und: FinCat, edges, lo, hi, dirs):
    """Compose the edges of a zigzag over the node interval [lo, hi].

    All edges in the interval point the same way; rightward runs compose
    left-to-right, leftward runs right-to-left.
    """
    run = [edges[t] for t in range(lo, hi)]
    if dirs[lo] > 0:
        return und.compose_chain(run)
    return und.compose_chain(list(reversed(run)))


def induced_functor(sm: ShapeMap, c: RelCat, cat_from: FinCat, cat_to: FinCat) -> Functor:
    """The functor cat_from → cat_to given by precomposition with sm.

    cat_from lives over sm.tgt_dirs and cat_to over sm.src_dirs (both built
    by weq_relfun_line or zigzag_category on the same C).
    """
    obj_map = {}
    for z in cat_from.objects:
        obj_map[z] = sm.pull_zigzag(c, z)
    mor_map = {}
    for m in cat_from.morphisms:
        mor_map[m] = sm.pull_ladder(c, m)
    known_obj = set(cat_to.objects)
    known_mor = set(cat_to.morphisms)
    for v in obj_map.values():
        if v not in known_obj:
            raise ShapeMismatch(f"restricted zigzag {v!r} missing from the target category")
    for v in mor_map.values():
        if v not in known_mor:
            raise ShapeMismatch(f"restricted ladder {v!r} missing from the target category")
    return Functor(cat_from, cat_to, obj_map, mor_map)


def _rewrite_shape_map(dirs_before, spec):
    """The shape map underlying a zigzag-type rewrite.

    Returns (shape map, dirs of the rewritten type).  The induced functor
    always goes from the category over dirs_before to the one over the
    rewritten pattern, so the shape map points the other way.
    """
    dirs_before = tuple(dirs_before)
    n = len(dirs_before)
    kind = spec[0]
    if kind == "insert-identity":
        p = spec[1]
        if not 0 <= p <= n:
            raise ShapeMismatch(f"cannot insert at edge position {p} of an {n}-edge pattern")
        dirs_after = dirs_before[:p] + (-1,) + dirs_before[p:]
        images = tuple(range(p + 1)) + tuple(range(p, n + 1))
        return ShapeMap(dirs_after, dirs_before, images), dirs_after
    if kind == "compose":
        t = spec[1]
        if not (0 <= t < n - 1 and dirs_before[t] < 0 and dirs_before[t + 1] < 0):
            raise ShapeMismatch(f"edges {t} and {t + 1} are not both leftward")
        dirs_after = dirs_before[:t] + dirs_before[t + 1 :]
        images = tuple(range(t + 1)) + tuple(range(t + 2, n + 1))
        return ShapeMap(dirs_after, dirs_before, images), dirs_after
    if kind == "pad":
        dirs_after = (-1,) + dirs_before + (-1,)
        images = (0,) + tuple(range(n + 1)) + (n,)
        return ShapeMap(dirs_after, dirs_before, images), dirs_after
    if kind == "restrict":
        if n < 2 or dirs_before[0] > 0 or dirs_before[-1] > 0:
            raise ShapeMismatch("only patterns with leftward outer edges can be restricted")
        dirs_after = dirs_before[1:-1]
        images = tuple(range(1, n))
        return ShapeMap(dirs_after, dirs_before, images), dirs_after
    raise ShapeMismatch(f"unknown rewrite {kind!r}")


def insertion_functor(c: RelCat, k_before, spec, k_after, x=None, y=None) -> Functor:
    """The functor between zigzag categories induced by a type rewrite.

    spec is one of:
      ("insert-identity", p) — add a leftward identity edge at edge position p;
      ("compose", t)         — merge the leftward edges at positions t, t+1;
      ("pad",)               — add leftward identity edges at both ends;
      ("restrict",)          — drop the two outermost (leftward) edges.
    Without endpoints the functor lives between the categories of all
    zigzags and weq ladders of the two types; with x and y it lives between
    the endpoint-pinned categories (pad/restrict move endpoints and exist
    only unpinned).
    """
    dirs_before = dirs_of(k_before) if not isinstance(k_before, ZigzagType) else k_before.dirs()
    sm, dirs_after = _rewrite_shape_map(dirs_before, spec)
    declared = dirs_of(k_after) if not isinstance(k_after, ZigzagType) else k_after.dirs()
    if declared != dirs_after:
        raise ShapeMismatch(f"rewrite produces edge pattern {dirs_after}, not {declared}")
    if x is None and y is None:
        cat_from = weq_relfun_line(c, dirs_before)
        cat_to = weq_relfun_line(c, dirs_after)
    else:
        if spec[0] in ("pad", "restrict"):
            raise ShapeMismatch(f"{spec[0]} moves the endpoints; pinned categories are not available")
        cat_from = zigzag_category(c, dirs_before, x, y)
        cat_to = zigzag_category(c, dirs_after, x, y)
    return induced_functor(sm, c, cat_from, cat_to)


# ---------------------------------------------------------------------------
# Relative functor categories (generic shapes)
# ---------------------------------------------------------------------------


def rel_functor_category(k: RelCat, c: RelCat) -> RelCat:
    """The relative functor category RelFun(K, C).

    Underlying category: relative functors K → C with all natural
    transformations; weak equivalences: transformations with weq components.
    Line shapes take the fast path with (nodes, edges) labels.
    """
    if k.line_dirs is not None:
        dirs = k.line_dirs
        zigzags = enumerate_zigzags(c, dirs)
        und = _all_ladder_category(c, dirs, zigzags)
        weq = frozenset(m for m in und.morphisms if all(v in c.weq for v in m[2]))
        return RelCat(und, weq)
    from .fincat import enumerate_functors, enumerate_nat_trans, functor_label

    functors = [
        f
        for f in enumerate_functors(k.und, c.und, mor_constraint=lambda m, cand: (m not in k.weq) or (cand in c.weq))
    ]
    budget.current().check_objects(len(functors), "relative functor category objects")
    by_label = {functor_label(f): f for f in functors}
    objects = tuple(sorted(by_label, key=canon_key))
    morphisms, src, tgt = [], {}, {}
    for la in objects:
        for lb in objects:
            for nt in enumerate_nat_trans(by_label[la], by_label[lb]):
                comps = tuple(nt.components[x] for x in k.und.objects)
                label = (la, lb, comps)
                morphisms.append(label)
                src[label], tgt[label] = la, lb
    budget.current().check_morphisms(len(morphisms), "relative functor category morphisms")
    morphisms = sort_labels(morphisms)
    id_of = {
        la: (la, la, tuple(c.und.id_of[by_label[la].obj_map[x]] for x in k.und.objects)) for la in objects
    }
    comp = {}
    by_src = {}
    for m in morphisms:
        by_src.setdefault(m[0], []).append(m)
    for m1 in morphisms:
        for m2 in by_src.get(m1[1], ()):
            comps = tuple(c.und.comp[(m2[2][i], m1[2][i])] for i in range(len(k.und.objects)))
            comp[(m2, m1)] = (m1[0], m2[1], comps)
    und = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    weq = frozenset(m for m in morphisms if all(v in c.weq for v in m[2]))
    return RelCat(und, weq)


def _all_ladder_category(c: RelCat, dirs, zigzags) -> FinCat:
    """Like weq_relfun_line but with arbitrary (not only weq) verticals."""
    und = c.und
    n = len(dirs)
    zigset = set(zigzags)
    morphisms = []
    for top in zigzags:
        nodes, edges = top

        def extend(t, verts, bnodes, bedges):
            if t == n:
                bottom = (tuple(bnodes), tuple(bedges))
                if bottom in zigset:
                    morphisms.append((top, bottom, tuple(verts)))
                return
            v_prev = verts[-1]
            if dirs[t] > 0:
                for v_next in und.out_of(nodes[t + 1]):
                    lhs = und.comp[(v_next, edges[t])]
                    for be in und.hom(bnodes[-1], und.tgt[v_next]):
                        if und.comp[(be, v_prev)] == lhs:
                            extend(t + 1, verts + [v_next], bnodes + [und.tgt[v_next]], bedges + [be])
            else:
                for v_next in und.out_of(nodes[t + 1]):
                    lhs = und.comp[(v_prev, edges[t])]
                    for be in und.hom(und.tgt[v_next], bnodes[-1]):
                        if be in c.weq and und.comp[(be, v_next)] == lhs:
                            extend(t + 1, verts + [v_next], bnodes + [und.tgt[v_next]], bedges + [be])

        for v0 in und.out_of(nodes[0]):
            extend(0, [v0], [und.tgt[v0]], [])
    morphisms = sort_labels(morphisms)
    budget.current().check_morphisms(len(morphisms), "ladder enumeration")
    objects = tuple(zigzags)
    src = {m: m[0] for m in morphisms}
    tgt = {m: m[1] for m in morphisms}
    id_of = {z: (z, z, tuple(und.id_of[o] for o in z[0])) for z in objects}
    by_src = {}
    for m in morphisms:
        by_src.setdefault(m[0], []).append(m)
    comp = {}
    for m1 in morphisms:
        for m2 in by_src.get(m1[1], ()):
            verts = tuple(und.comp[(m2[2][i], m1[2][i])] for i in range(len(m1[2])))
            comp[(m2, m1)] = (m1[0], m2[1], verts)
    return FinCat.build(objects, tuple(morphisms), src, tgt, id_of, comp)


# ---------------------------------------------------------------------------
# Two-out-of-three
# ---------------------------------------------------------------------------


def two_out_of_three(r: RelCat):
    """Check the 2-out-of-3 property; returns (holds, witness or None)."""
    und = r.und
    for f in und.morphisms:
        for g in und.out_of(und.tgt[f]):
            gf = und.comp[(g, f)]
            flags = (f in r.weq, g in r.weq, gf in r.weq)
            if sum(flags) == 2:
                return False, (f, g, gf)
    return True, None
