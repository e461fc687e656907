"""Finite categories given by explicit composition tables.

Objects and morphisms are labelled by hashable values (strings, integers,
or nested tuples of those).  All constructors produce categories whose
objects and morphisms are listed in a canonical deterministic order, so
that downstream reports are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iter_product

from . import budget
from .errors import (
    BadIdentity,
    InputParse,
    MissingComposite,
    NonAssociative,
    SizeBudgetExceeded,
    UnknownObject,
)


def canon_key(label):
    """Total order on labels: ints < strings < tuples, recursively."""
    if isinstance(label, bool):
        raise TypeError("bool labels are not supported")
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(canon_key(x) for x in label))
    raise TypeError(f"unsupported label type: {type(label).__name__}")


def sort_labels(labels):
    return tuple(sorted(labels, key=canon_key))


@dataclass(frozen=True, eq=True)
class FinCat:
    """A finite category as a total composition table.

    comp maps (g, f) to g∘f and is defined exactly on composable pairs.
    """

    objects: tuple
    morphisms: tuple
    src: dict
    tgt: dict
    id_of: dict
    comp: dict

    # -- construction -------------------------------------------------

    @staticmethod
    def build(objects, morphisms, src, tgt, id_of, comp, check="quick") -> "FinCat":
        cat = FinCat(tuple(objects), tuple(morphisms), dict(src), dict(tgt), dict(id_of), dict(comp))
        b = budget.current()
        b.check_objects(len(cat.objects))
        b.check_morphisms(len(cat.morphisms))
        if check == "quick":
            cat._check_structure()
        elif check == "full":
            cat._check_structure()
            cat._check_associativity()
        elif check != "none":
            raise ValueError(f"unknown check level {check!r}")
        return cat

    # -- cached lookup tables -----------------------------------------

    @cached_property
    def identity_set(self):
        return frozenset(self.id_of.values())

    @cached_property
    def _out(self):
        table = {x: [] for x in self.objects}
        for m in self.morphisms:
            table[self.src[m]].append(m)
        return table

    @cached_property
    def _in(self):
        table = {x: [] for x in self.objects}
        for m in self.morphisms:
            table[self.tgt[m]].append(m)
        return table

    @cached_property
    def _hom(self):
        table = {}
        for m in self.morphisms:
            table.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return table

    # -- basic queries ------------------------------------------------

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def out_of(self, x):
        return self._out[x]

    def into(self, x):
        return self._in[x]

    def is_identity(self, m):
        return m in self.identity_set

    def compose(self, g, f):
        """g∘f; requires tgt(f) = src(g)."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise MissingComposite(g, f) from None

    def compose_chain(self, morphisms):
        """Compose a left-to-right composable chain f1, f2, ... as fn∘...∘f1."""
        it = iter(morphisms)
        acc = next(it)
        for m in it:
            acc = self.compose(m, acc)
        return acc

    # -- invariant checks ---------------------------------------------

    def _check_structure(self):
        objset = set(self.objects)
        if len(objset) != len(self.objects):
            raise InputParse("duplicate object labels")
        morset = set(self.morphisms)
        if len(morset) != len(self.morphisms):
            raise InputParse("duplicate morphism labels")
        for m in self.morphisms:
            if self.src[m] not in objset:
                raise UnknownObject(self.src[m])
            if self.tgt[m] not in objset:
                raise UnknownObject(self.tgt[m])
        for x in self.objects:
            i = self.id_of.get(x)
            if i is None or i not in morset:
                raise BadIdentity(x, "no identity morphism designated")
            if self.src[i] != x or self.tgt[i] != x:
                raise BadIdentity(x, "identity is not an endomorphism")
        # totality and src/tgt of composites
        for (g, f), gf in self.comp.items():
            if self.tgt[f] != self.src[g]:
                raise InputParse(f"composition listed for non-composable pair ({g!r}, {f!r})")
            if gf not in morset:
                raise UnknownMorphismError(gf)
            if self.src[gf] != self.src[f] or self.tgt[gf] != self.tgt[g]:
                raise InputParse(f"composite of ({g!r}, {f!r}) has wrong endpoints")
        for y in self.objects:
            for f in self._in[y]:
                for g in self._out[y]:
                    if (g, f) not in self.comp:
                        raise MissingComposite(g, f)
        # unit laws
        for f in self.morphisms:
            if self.comp[(self.id_of[self.tgt[f]], f)] != f:
                raise BadIdentity(self.tgt[f], f"id∘{f!r} != {f!r}")
            if self.comp[(f, self.id_of[self.src[f]])] != f:
                raise BadIdentity(self.src[f], f"{f!r}∘id != {f!r}")

    def _check_associativity(self):
        for f in self.morphisms:
            for g in self._out[self.tgt[f]]:
                gf = self.comp[(g, f)]
                for h in self._out[self.tgt[g]]:
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise NonAssociative(h, g, f)

    def validate(self):
        """Run the full invariant check (structure, units, associativity)."""
        self._check_structure()
        self._check_associativity()
        return True


class UnknownMorphismError(InputParse):
    def __init__(self, mor):
        super().__init__(f"composite refers to unknown morphism {mor!r}")


# ---------------------------------------------------------------------------
# Functors and natural transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: dict
    mor_map: dict

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, m):
        return self.mor_map[m]

    def check(self):
        """Exhaustively verify src/tgt, identity and composition preservation."""
        s, t = self.source, self.target
        for x in s.objects:
            if self.obj_map[x] not in set(t.objects):
                raise UnknownObject(self.obj_map[x])
            if self.mor_map[s.id_of[x]] != t.id_of[self.obj_map[x]]:
                raise BadIdentity(x, "functor does not preserve the identity")
        for m in s.morphisms:
            fm = self.mor_map[m]
            if t.src[fm] != self.obj_map[s.src[m]] or t.tgt[fm] != self.obj_map[s.tgt[m]]:
                raise InputParse(f"functor breaks src/tgt on {m!r}")
        for (g, f), gf in s.comp.items():
            if t.comp[(self.mor_map[g], self.mor_map[f])] != self.mor_map[gf]:
                raise NonAssociative(self.mor_map[g], self.mor_map[f], gf)
        return True

    def is_isomorphism(self):
        return (
            len(set(self.obj_map.values())) == len(self.source.objects) == len(self.target.objects)
            and len(set(self.mor_map.values())) == len(self.source.morphisms) == len(self.target.morphisms)
        )


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g: Functor, f: Functor) -> Functor:
    """g∘f."""
    if f.target is not g.source and f.target != g.source:
        raise InputParse("functors are not composable")
    return Functor(
        f.source,
        g.target,
        {x: g.obj_map[fx] for x, fx in f.obj_map.items()},
        {m: g.mor_map[fm] for m, fm in f.mor_map.items()},
    )


def constant_functor(c: FinCat, d: FinCat, obj) -> Functor:
    if obj not in set(d.objects):
        raise UnknownObject(obj)
    return Functor(c, d, {x: obj for x in c.objects}, {m: d.id_of[obj] for m in c.morphisms})


@dataclass(frozen=True, eq=True)
class NatTrans:
    source: Functor
    target: Functor
    components: dict

    def check(self):
        f, g = self.source, self.target
        if f.source != g.source or f.target != g.target:
            raise InputParse("natural transformation between functors of different shape")
        c, d = f.source, f.target
        for x in c.objects:
            a = self.components[x]
            if d.src[a] != f.obj_map[x] or d.tgt[a] != g.obj_map[x]:
                raise InputParse(f"component at {x!r} has wrong endpoints")
        for m in c.morphisms:
            x, y = c.src[m], c.tgt[m]
            if d.comp[(self.components[y], f.mor_map[m])] != d.comp[(g.mor_map[m], self.components[x])]:
                raise InputParse(f"naturality fails at {m!r}")
        return True


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def validate_category(raw) -> FinCat:
    """Build a FinCat from the JSON interchange format and check all invariants.

    Format: {"objects": [...], "morphisms": [{"id","src","tgt"}...],
    "identities": {obj: mor}, "composition": [{"g","f","gf"}...]}.
    Morphisms are normalized to lexicographic order.
    """
    try:
        objects = list(raw["objects"])
        mor_entries = list(raw["morphisms"])
        identities = dict(raw["identities"])
        comp_entries = list(raw["composition"])
    except (KeyError, TypeError) as exc:
        raise InputParse(f"malformed category description: {exc}") from None
    morphisms = sort_labels(m["id"] for m in mor_entries)
    src = {m["id"]: m["src"] for m in mor_entries}
    tgt = {m["id"]: m["tgt"] for m in mor_entries}
    comp = {}
    for e in comp_entries:
        comp[(e["g"], e["f"])] = e["gf"]
    # auto-fill identity composites so input tables only list the non-trivial part
    for m in morphisms:
        comp.setdefault((identities.get(tgt[m]), m), m)
        comp.setdefault((m, identities.get(src[m])), m)
    cat = FinCat.build(tuple(objects), morphisms, src, tgt, identities, comp, check="none")
    cat.validate()
    return cat


def terminal_category() -> FinCat:
    return FinCat.build(("*",), ("id",), {"id": "*"}, {"id": "*"}, {"*": "id"}, {("id", "id"): "id"})


def is_terminal_category(c: FinCat) -> bool:
    return len(c.objects) == 1 and len(c.morphisms) == 1


def discrete_category(labels) -> FinCat:
    labels = tuple(labels)
    ids = {x: ("id", x) for x in labels}
    return FinCat.build(
        labels,
        tuple(ids[x] for x in labels),
        {ids[x]: x for x in labels},
        {ids[x]: x for x in labels},
        ids,
        {(ids[x], ids[x]): ids[x] for x in labels},
    )


def ordinal(n: int) -> FinCat:
    """The poset 0 ≤ 1 ≤ ... ≤ n as a category; morphism (i, j) for i ≤ j."""
    if n < 0:
        raise ValueError("ordinal requires n >= 0")
    objects = tuple(range(n + 1))
    morphisms = tuple((i, j) for i in objects for j in objects if i <= j)
    src = {m: m[0] for m in morphisms}
    tgt = {m: m[1] for m in morphisms}
    id_of = {i: (i, i) for i in objects}
    comp = {}
    for (j1, k) in morphisms:
        for (i, j2) in morphisms:
            if j2 == j1:
                comp[((j1, k), (i, j2))] = (i, k)
    return FinCat.build(objects, morphisms, src, tgt, id_of, comp)


def opposite(c: FinCat) -> FinCat:
    return FinCat.build(
        c.objects,
        c.morphisms,
        dict(c.tgt),
        dict(c.src),
        dict(c.id_of),
        {(f, g): gf for (g, f), gf in c.comp.items()},
    )


def product(c: FinCat, d: FinCat):
    """Product category; returns (C×D, projection to C, projection to D)."""
    b = budget.current()
    b.check_objects(len(c.objects) * len(d.objects))
    b.check_morphisms(len(c.morphisms) * len(d.morphisms))
    objects = tuple((x, y) for x in c.objects for y in d.objects)
    morphisms = tuple((f, g) for f in c.morphisms for g in d.morphisms)
    src = {(f, g): (c.src[f], d.src[g]) for f, g in morphisms}
    tgt = {(f, g): (c.tgt[f], d.tgt[g]) for f, g in morphisms}
    id_of = {(x, y): (c.id_of[x], d.id_of[y]) for x, y in objects}
    comp = {}
    for (g1, f1), h1 in c.comp.items():
        for (g2, f2), h2 in d.comp.items():
            comp[((g1, g2), (f1, f2))] = (h1, h2)
    cat = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    pr1 = Functor(cat, c, {o: o[0] for o in objects}, {m: m[0] for m in morphisms})
    pr2 = Functor(cat, d, {o: o[1] for o in objects}, {m: m[1] for m in morphisms})
    return cat, pr1, pr2


def slice_category(c: FinCat, x, side="over"):
    """Slice (morphisms into x) or coslice (morphisms out of x), with projection.

    Over: objects f: A → x; a morphism f' → f is h: A' → A with f∘h = f'.
    Under: objects f: x → A; a morphism f → f' is h: A → A' with h∘f = f'.
    """
    if x not in set(c.objects):
        raise UnknownObject(x)
    if side == "over":
        objects = sort_labels(c.into(x))
        morphisms = []
        src, tgt, proj_obj, proj_mor = {}, {}, {}, {}
        for f in objects:
            proj_obj[f] = c.src[f]
        for f2 in objects:  # codomain object of the slice morphism
            for h in c.into(c.src[f2]):
                f1 = c.comp[(f2, h)]
                label = (f1, f2, h)
                morphisms.append(label)
                src[label], tgt[label] = f1, f2
                proj_mor[label] = h
        morphisms = sort_labels(morphisms)
        id_of = {f: (f, f, c.id_of[c.src[f]]) for f in objects}
        comp = {}
        for (m1, m2, h1) in morphisms:
            for (m2b, m3, h2) in morphisms:
                if m2b == m2:
                    comp[(((m2, m3, h2)), ((m1, m2, h1)))] = (m1, m3, c.comp[(h2, h1)])
        cat = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
        proj = Functor(cat, c, proj_obj, proj_mor)
        return cat, proj
    if side == "under":
        op_cat, op_proj = slice_category(opposite(c), x, "over")
        cat = opposite(op_cat)
        return cat, Functor(cat, c, dict(op_proj.obj_map), dict(op_proj.mor_map))
    raise ValueError("side must be 'over' or 'under'")


# ---------------------------------------------------------------------------
# Functor categories
# ---------------------------------------------------------------------------


def enumerate_functors(c: FinCat, d: FinCat, mor_constraint=None):
    """All functors C → D, in canonical order.

    mor_constraint(m, candidate) may prune morphism image choices; used for
    relative functor enumeration.
    """
    non_id = [m for m in c.morphisms if not c.is_identity(m)]
    results = []

    def mor_search(obj_map, idx, mor_map):
        if idx == len(non_id):
            results.append(Functor(c, d, dict(obj_map), dict(mor_map)))
            return
        m = non_id[idx]
        candidates = d.hom(obj_map[c.src[m]], obj_map[c.tgt[m]])
        for cand in candidates:
            if mor_constraint is not None and not mor_constraint(m, cand):
                continue
            mor_map[m] = cand
            ok = True
            for m2 in non_id[: idx + 1]:
                for (g, f) in ((m, m2), (m2, m)):
                    if c.tgt[f] == c.src[g]:
                        gf = c.comp[(g, f)]
                        if gf in mor_map or c.is_identity(gf):
                            gf_img = mor_map[gf] if gf in mor_map else d.id_of[obj_map[c.src[gf]]]
                            if d.comp[(mor_map[g], mor_map[f])] != gf_img:
                                ok = False
                                break
                if not ok:
                    break
            if ok:
                mor_search(obj_map, idx + 1, mor_map)
            del mor_map[m]

    def obj_search(idx, obj_map):
        if idx == len(c.objects):
            mor_map = {c.id_of[x]: d.id_of[obj_map[x]] for x in c.objects}
            mor_search(obj_map, 0, mor_map)
            return
        x = c.objects[idx]
        for y in d.objects:
            obj_map[x] = y
            obj_search(idx + 1, obj_map)
        obj_map.pop(x, None)

    obj_search(0, {})
    results.sort(key=lambda f: canon_key(functor_label(f)))
    return results


def functor_label(f: Functor):
    """Canonical label: images of objects and of non-identity morphisms."""
    return (
        tuple(f.obj_map[x] for x in f.source.objects),
        tuple(f.mor_map[m] for m in f.source.morphisms if not f.source.is_identity(m)),
    )


def enumerate_nat_trans(f: Functor, g: Functor):
    """All natural transformations f ⇒ g, in canonical component order."""
    c, d = f.source, f.target
    results = []

    def search(idx, comps):
        if idx == len(c.objects):
            results.append(NatTrans(f, g, dict(comps)))
            return
        x = c.objects[idx]
        for a in d.hom(f.obj_map[x], g.obj_map[x]):
            comps[x] = a
            ok = True
            for m in c.morphisms:
                if c.is_identity(m):
                    continue
                sx, sy = c.src[m], c.tgt[m]
                if sx in comps and sy in comps:
                    if d.comp[(comps[sy], f.mor_map[m])] != d.comp[(g.mor_map[m], comps[sx])]:
                        ok = False
                        break
            if ok:
                search(idx + 1, comps)
            del comps[x]

    search(0, {})
    return results


def functor_category(c: FinCat, d: FinCat):
    """The category of all functors C → D with natural transformations.

    Object labels are functor labels; morphism labels are
    (source label, target label, component tuple).
    """
    functors = enumerate_functors(c, d)
    b = budget.current()
    b.check_objects(len(functors), "functor-category objects")
    by_label = {functor_label(f): f for f in functors}
    objects = tuple(sorted(by_label, key=canon_key))
    morphisms = []
    src, tgt = {}, {}
    nat_of = {}
    for la in objects:
        for lb in objects:
            for nt in enumerate_nat_trans(by_label[la], by_label[lb]):
                comps = tuple(nt.components[x] for x in c.objects)
                label = (la, lb, comps)
                morphisms.append(label)
                src[label], tgt[label] = la, lb
                nat_of[label] = nt
    b.check_morphisms(len(morphisms), "functor-category morphisms")
    morphisms = sort_labels(morphisms)
    id_of = {la: (la, la, tuple(d.id_of[by_label[la].obj_map[x]] for x in c.objects)) for la in objects}
    comp = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if m2[0] == m1[1]:
                comps = tuple(
                    d.comp[(m2[2][i], m1[2][i])] for i in range(len(c.objects))
                )
                comp[(m2, m1)] = (m1[0], m2[1], comps)
    cat = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    return cat, by_label, nat_of


def arrow_category(c: FinCat):
    """Category of morphisms of C and commutative squares, with dom/codom.

    Objects are morphisms of C; a morphism f1 → f2 is a pair (u, v) with
    v∘f1 = f2∘u.  Equal to functor_category(ordinal(1), C) up to relabeling.
    """
    objects = sort_labels(c.morphisms)
    b = budget.current()
    b.check_objects(len(objects), "arrow-category objects")
    morphisms = []
    src, tgt = {}, {}
    for f1 in objects:
        for u in c.out_of(c.src[f1]):
            for v in c.out_of(c.tgt[f1]):
                # find targets f2 with f2∘u = v∘f1
                vf1 = c.comp[(v, f1)]
                for f2 in c.hom(c.tgt[u], c.tgt[v]):
                    if c.comp[(f2, u)] == vf1:
                        label = (f1, f2, (u, v))
                        morphisms.append(label)
                        src[label], tgt[label] = f1, f2
    b.check_morphisms(len(morphisms), "arrow-category morphisms")
    morphisms = sort_labels(morphisms)
    id_of = {f: (f, f, (c.id_of[c.src[f]], c.id_of[c.tgt[f]])) for f in objects}
    comp = {}
    by_src = {}
    for m in morphisms:
        by_src.setdefault(m[0], []).append(m)
    for m1 in morphisms:
        for m2 in by_src.get(m1[1], ()):
            comp[(m2, m1)] = (m1[0], m2[1], (c.comp[(m2[2][0], m1[2][0])], c.comp[(m2[2][1], m1[2][1])]))
    cat = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    dom = Functor(cat, c, {f: c.src[f] for f in objects}, {m: m[2][0] for m in morphisms})
    codom = Functor(cat, c, {f: c.tgt[f] for f in objects}, {m: m[2][1] for m in morphisms})
    return cat, dom, codom


# ---------------------------------------------------------------------------
# Zigzags of natural transformations
# ---------------------------------------------------------------------------


def nat_trans_zigzag(f: Functor, g: Functor, max_len: int):
    """Shortest zigzag of natural transformations connecting f and g.

    Searches the graph whose nodes are all functors source → target and
    whose edges are natural transformations in either direction.  Returns a
    tuple of (NatTrans, direction) pairs with direction "fwd" when the
    transformation points from the current node toward g, or None when no
    path of length ≤ max_len exists.
    """
    if f.source != g.source or f.target != g.target:
        raise InputParse("functors do not share source and target")
    start, goal = functor_label(f), functor_label(g)
    if start == goal:
        return ()
    functors = enumerate_functors(f.source, f.target)
    by_label = {functor_label(h): h for h in functors}
    edges = {la: [] for la in by_label}
    labels = sorted(by_label, key=canon_key)
    for la in labels:
        for lb in labels:
            if la == lb:
                continue
            nts = enumerate_nat_trans(by_label[la], by_label[lb])
            if nts:
                edges[la].append((lb, nts[0], "fwd"))
                edges[lb].append((la, nts[0], "bwd"))
    frontier = [start]
    parents = {start: None}
    depth = 0
    while frontier and depth < max_len:
        depth += 1
        nxt = []
        for la in frontier:
            for lb, nt, direction in edges[la]:
                if lb not in parents:
                    parents[lb] = (la, nt, direction)
                    if lb == goal:
                        path = []
                        cur = goal
                        while parents[cur] is not None:
                            prev, nt2, d2 = parents[cur]
                            path.append((nt2, d2))
                            cur = prev
                        path.reverse()
                        return tuple(path)
                    nxt.append(lb)
        frontier = nxt
    return None
