"""Grothendieck (op)fibrations and the two-sided Grothendieck construction.

Fibration detection is exact: for every object over the target of a base
morphism, all candidate lifts are enumerated and the defining universal
bijection is verified pointwise against every test object.  The chosen
family of lifts (identities for identity base morphisms, lexicographically
least cartesian lift otherwise) induces transition functors between strict
fibers; the family is additionally reported split when those transitions
compose strictly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import budget
from .errors import BadZigzagType, InputParse, NotAFibration, UnknownObject
from .fincat import FinCat, Functor, canon_key, identity_functor, opposite, sort_labels, terminal_category
from .relcat import RelCat, ZigzagType, dirs_of, weq_subcategory, zigzag_category


def opposite_functor(p: Functor) -> Functor:
    """The same assignment viewed as a functor between opposite categories."""
    return Functor(opposite(p.source), opposite(p.target), dict(p.obj_map), dict(p.mor_map))


# ---------------------------------------------------------------------------
# Fibration detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class FibrationReport:
    """Outcome of an exhaustive (co)cartesian-lift search.

    lifts maps (object over the appropriate end of f, base morphism f) to
    the chosen lift morphism in the total category; for the fibration
    variant the object sits over the target of f and the lift points into
    it, for the opfibration variant the object sits over the source and the
    lift points out of it.
    """

    functor: Functor
    variant: str          # "fibration" | "opfibration"
    verdict: bool
    lifts: dict           # (object, base morphism) -> total-category morphism
    split: bool
    counterexample: tuple | None

    def recheck(self) -> bool:
        """Recompute the report from scratch and compare."""
        fresh = check_fibration(self.functor, self.variant)
        return (
            fresh.verdict == self.verdict
            and fresh.lifts == self.lifts
            and fresh.split == self.split
            and fresh.counterexample == self.counterexample
        )


def is_cartesian(p: Functor, phi, f) -> bool:
    """Exact test of the universal bijection defining a cartesian lift.

    phi : E' → E lies over f : B' → B; for every test object E'' the map
    h' ↦ (phi∘h', P(h')) must biject onto pairs (h : E'' → E, f' : P(E'') → B')
    with P(h) = f∘f'.
    """
    e_cat, b_cat = p.source, p.target
    e_prime, e = e_cat.src[phi], e_cat.tgt[phi]
    b_prime = b_cat.src[f]
    if p.mor_map[phi] != f:
        return False
    for e2 in e_cat.objects:
        pairs = set()
        for h in e_cat.hom(e2, e):
            for fp in b_cat.hom(p.obj_map[e2], b_prime):
                if b_cat.comp[(f, fp)] == p.mor_map[h]:
                    pairs.add((h, fp))
        images = [(e_cat.comp[(phi, hp)], p.mor_map[hp]) for hp in e_cat.hom(e2, e_prime)]
        if len(images) != len(set(images)) or set(images) != pairs:
            return False
    return True


def _fibration_core(p: Functor):
    """Lift search for the fibration variant; returns (lifts, failures)."""
    e_cat, b_cat = p.source, p.target
    over = {}
    for e in e_cat.objects:
        over.setdefault(p.obj_map[e], []).append(e)
    lifts, failures = {}, []
    for f in sort_labels(b_cat.morphisms):
        b = b_cat.tgt[f]
        for e in over.get(b, ()):
            if b_cat.is_identity(f):
                lifts[(e, f)] = e_cat.id_of[e]
                continue
            candidates = [
                m for m in e_cat.into(e) if p.mor_map[m] == f and is_cartesian(p, m, f)
            ]
            if not candidates:
                failures.append((e, f))
            else:
                lifts[(e, f)] = min(candidates, key=canon_key)
    return lifts, failures


def check_fibration(p: Functor, variant: str = "fibration") -> FibrationReport:
    """Exhaustively decide whether p is a Grothendieck (op)fibration."""
    if variant == "opfibration":
        lifts, failures = _fibration_core(opposite_functor(p))
    elif variant == "fibration":
        lifts, failures = _fibration_core(p)
    else:
        raise InputParse(f"unknown fibration variant {variant!r}")
    verdict = not failures
    split = False
    if verdict:
        split = _is_split(p, variant, lifts)
    return FibrationReport(p, variant, verdict, lifts, split, min(failures, key=canon_key) if failures else None)


def fiber(p: Functor, b) -> FinCat:
    """The strict fiber of p over a base object: everything mapping to b, id_b."""
    e_cat, b_cat = p.source, p.target
    if b not in set(b_cat.objects):
        raise UnknownObject(b)
    id_b = b_cat.id_of[b]
    objects = tuple(e for e in e_cat.objects if p.obj_map[e] == b)
    morphisms = tuple(m for m in e_cat.morphisms if p.mor_map[m] == id_b)
    morset = set(morphisms)
    return FinCat.build(
        objects,
        morphisms,
        {m: e_cat.src[m] for m in morphisms},
        {m: e_cat.tgt[m] for m in morphisms},
        {e: e_cat.id_of[e] for e in objects},
        {k: v for k, v in e_cat.comp.items() if k[0] in morset and k[1] in morset},
    )


def _transition_from_lifts(p: Functor, lifts, f) -> Functor:
    """Fibration-variant transition f^* : fiber(tgt f) → fiber(src f)."""
    e_cat, b_cat = p.source, p.target
    b_prime, b = b_cat.src[f], b_cat.tgt[f]
    src_fiber, tgt_fiber = fiber(p, b), fiber(p, b_prime)
    id_bp = b_cat.id_of[b_prime]
    obj_map, mor_map = {}, {}
    for e in src_fiber.objects:
        obj_map[e] = e_cat.src[lifts[(e, f)]]
    for u in src_fiber.morphisms:
        e1, e2 = e_cat.src[u], e_cat.tgt[u]
        phi1, phi2 = lifts[(e1, f)], lifts[(e2, f)]
        want = e_cat.comp[(u, phi1)]
        found = [
            up
            for up in e_cat.hom(obj_map[e1], obj_map[e2])
            if p.mor_map[up] == id_bp and e_cat.comp[(phi2, up)] == want
        ]
        if len(found) != 1:
            raise NotAFibration(f"lift of {u!r} along {f!r} is not unique")
        mor_map[u] = found[0]
    return Functor(src_fiber, tgt_fiber, obj_map, mor_map)


def transition_functor(p: Functor, f, report: FibrationReport) -> Functor:
    """The functor between strict fibers induced by the chosen lifts.

    Fibration variant: f : B' → B yields f^* : fiber(B) → fiber(B');
    opfibration variant: f : B → B' yields f_! : fiber(B) → fiber(B').
    """
    if not report.verdict:
        raise NotAFibration(f"the report for variant {report.variant!r} is negative")
    if f not in set(p.target.morphisms):
        raise UnknownObject(f)
    if report.variant == "fibration":
        return _transition_from_lifts(p, report.lifts, f)
    t_op = _transition_from_lifts(opposite_functor(p), report.lifts, f)
    # a functor between opposites carries the same object/morphism data
    return Functor(fiber(p, p.target.src[f]), fiber(p, p.target.tgt[f]), dict(t_op.obj_map), dict(t_op.mor_map))


def _is_split(p: Functor, variant: str, lifts) -> bool:
    """Do the chosen transitions compose strictly (and lift identities to identities)?"""
    work = p if variant == "fibration" else opposite_functor(p)
    b_cat = work.target
    transitions = {f: _transition_from_lifts(work, lifts, f) for f in b_cat.morphisms}
    for (g, f), gf in b_cat.comp.items():
        # contravariant: (g∘f)^* = f^* ∘ g^*
        tg, tf, tgf = transitions[g], transitions[f], transitions[gf]
        composed_obj = {e: tf.obj_map[tg.obj_map[e]] for e in tg.source.objects}
        composed_mor = {m: tf.mor_map[tg.mor_map[m]] for m in tg.source.morphisms}
        if composed_obj != tgf.obj_map or composed_mor != tgf.mor_map:
            return False
    return True


# ---------------------------------------------------------------------------
# Category-valued diagrams and the two-sided construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class CatValuedBifunctor:
    """A strict category-valued diagram on a finite base.

    variance "covariant": values keyed by base objects, transitions[m] :
    values[src m] → values[tgt m].  variance "contravariant": transitions[m]
    : values[tgt m] → values[src m].  variance "bi": values keyed by object
    pairs (X, Y), covariant in X and contravariant in Y; transitions keyed
    by morphism pairs (u : X → X', w : Y' → Y) with
    transitions[(u, w)] : values[(X, Y)] → values[(X', Y')].
    """

    base: FinCat
    variance: str
    values: dict
    transitions: dict

    def value(self, key) -> FinCat:
        return self.values[key]

    def transition(self, key) -> Functor:
        return self.transitions[key]

    def check(self):
        if self.variance == "bi":
            return self._check_bi()
        if self.variance not in ("covariant", "contravariant"):
            raise InputParse(f"unknown variance {self.variance!r}")
        b = self.base
        for m in b.morphisms:
            t = self.transitions[m]
            key_src, key_tgt = (b.src[m], b.tgt[m]) if self.variance == "covariant" else (b.tgt[m], b.src[m])
            if t.source != self.values[key_src] or t.target != self.values[key_tgt]:
                raise InputParse(f"transition along {m!r} has wrong endpoints")
            t.check()
        for x in b.objects:
            ident = identity_functor(self.values[x])
            t = self.transitions[b.id_of[x]]
            if t.obj_map != ident.obj_map or t.mor_map != ident.mor_map:
                raise InputParse(f"transition along the identity of {x!r} is not the identity")
        for (g, f), gf in b.comp.items():
            if self.variance == "covariant":
                outer, inner = self.transitions[g], self.transitions[f]
            else:
                outer, inner = self.transitions[f], self.transitions[g]
            t = self.transitions[gf]
            if any(outer.obj_map[inner.obj_map[x]] != t.obj_map[x] for x in inner.source.objects) or any(
                outer.mor_map[inner.mor_map[m]] != t.mor_map[m] for m in inner.source.morphisms
            ):
                raise InputParse(f"transitions do not compose strictly over ({g!r}, {f!r})")
        return True

    def _check_bi(self):
        b = self.base
        for u in b.morphisms:
            for w in b.morphisms:
                t = self.transitions[(u, w)]
                if t.source != self.values[(b.src[u], b.tgt[w])] or t.target != self.values[(b.tgt[u], b.src[w])]:
                    raise InputParse(f"transition along ({u!r}, {w!r}) has wrong endpoints")
                t.check()
        for x in b.objects:
            for y in b.objects:
                t = self.transitions[(b.id_of[x], b.id_of[y])]
                ident = identity_functor(self.values[(x, y)])
                if t.obj_map != ident.obj_map or t.mor_map != ident.mor_map:
                    raise InputParse(f"identity transition at ({x!r}, {y!r}) is not the identity")
        for (u2, u1), u21 in b.comp.items():
            for (w1, w2), w12 in b.comp.items():
                lhs = self.transitions[(u21, w12)]
                outer, inner = self.transitions[(u2, w2)], self.transitions[(u1, w1)]
                if any(outer.obj_map[inner.obj_map[x]] != lhs.obj_map[x] for x in inner.source.objects) or any(
                    outer.mor_map[inner.mor_map[m]] != lhs.mor_map[m] for m in inner.source.morphisms
                ):
                    raise InputParse(f"bifunctor transitions do not compose strictly over ({u2!r}∘{u1!r}, {w1!r}∘{w2!r})")
        return True

    def fix_first(self, x) -> "CatValuedBifunctor":
        """Restrict a bi-variant diagram to a contravariant one in the second slot."""
        if self.variance != "bi":
            raise InputParse("fix_first requires a bi-variant diagram")
        b = self.base
        values = {y: self.values[(x, y)] for y in b.objects}
        transitions = {w: self.transitions[(b.id_of[x], w)] for w in b.morphisms}
        return CatValuedBifunctor(b, "contravariant", values, transitions)


def constant_diagram(base: FinCat, variance: str = "covariant", value: FinCat | None = None) -> CatValuedBifunctor:
    """The diagram constant at a category (default: the terminal category)."""
    value = value if value is not None else terminal_category()
    ident = identity_functor(value)
    return CatValuedBifunctor(
        base,
        variance,
        {x: value for x in base.objects},
        {m: ident for m in base.morphisms},
    )


def two_sided_grothendieck(f_diag: CatValuedBifunctor, g_diag: CatValuedBifunctor):
    """The two-sided Grothendieck construction F ⊗_C G with its projection.

    F is contravariant and G covariant over the same base.  Objects are
    triples (X, C, Y) with X in F(C) and Y in G(C); a morphism
    (X', C', Y') → (X, C, Y) is a triple (f, c, g) with c : C' → C,
    f : X' → F(c)(X) in F(C') and g : G(c)(Y') → Y in G(C).
    """
    if f_diag.variance != "contravariant" or g_diag.variance != "covariant":
        raise InputParse("two-sided construction needs a contravariant and a covariant diagram")
    if f_diag.base != g_diag.base:
        raise InputParse("the two diagrams must share a base")
    base = f_diag.base
    b = budget.current()
    objects = []
    for c_obj in base.objects:
        for x in f_diag.values[c_obj].objects:
            for y in g_diag.values[c_obj].objects:
                objects.append((x, c_obj, y))
    b.check_objects(len(objects), "two-sided construction objects")
    objects = tuple(sort_labels(objects))
    morphisms, src, tgt = [], {}, {}
    for c in base.morphisms:
        c_src, c_tgt = base.src[c], base.tgt[c]
        f_c = f_diag.transitions[c]   # F(C) → F(C')
        g_c = g_diag.transitions[c]   # G(C') → G(C)
        f_src_cat = f_diag.values[c_src]
        g_tgt_cat = g_diag.values[c_tgt]
        for x in f_diag.values[c_tgt].objects:
            for f_mor in f_src_cat.into(f_c.obj_map[x]):
                x_prime = f_src_cat.src[f_mor]
                for y_prime in g_diag.values[c_src].objects:
                    for g_mor in g_tgt_cat.out_of(g_c.obj_map[y_prime]):
                        y = g_tgt_cat.tgt[g_mor]
                        a_src = (x_prime, c_src, y_prime)
                        a_tgt = (x, c_tgt, y)
                        label = (a_src, a_tgt, (f_mor, c, g_mor))
                        morphisms.append(label)
                        src[label], tgt[label] = a_src, a_tgt
    b.check_morphisms(len(morphisms), "two-sided construction morphisms")
    morphisms = sort_labels(morphisms)
    id_of = {
        (x, c_obj, y): (
            (x, c_obj, y),
            (x, c_obj, y),
            (f_diag.values[c_obj].id_of[x], base.id_of[c_obj], g_diag.values[c_obj].id_of[y]),
        )
        for (x, c_obj, y) in objects
    }
    by_src = {}
    for m in morphisms:
        by_src.setdefault(m[0], []).append(m)
    comp = {}
    for m1 in morphisms:
        (x2_, c1_src, y2_), mid, (f1, c1, g1) = m1[0], m1[1], m1[2]
        for m2 in by_src.get(mid, ()):
            _, a_tgt, (f2, c2, g2) = m2
            c21 = base.comp[(c2, c1)]
            f_cat = f_diag.values[c1_src]
            f_part = f_cat.comp[(f_diag.transitions[c1].mor_map[f2], f1)]
            g_cat = g_diag.values[base.tgt[c2]]
            g_part = g_cat.comp[(g2, g_diag.transitions[c2].mor_map[g1])]
            comp[(m2, m1)] = (m1[0], a_tgt, (f_part, c21, g_part))
    cat = FinCat.build(objects, tuple(morphisms), src, tgt, id_of, comp)
    proj = Functor(cat, base, {o: o[1] for o in objects}, {m: m[2][1] for m in morphisms})
    return cat, proj


# ---------------------------------------------------------------------------
# The zigzag bifunctor and the canonical isomorphism
# ---------------------------------------------------------------------------


def _transform_zigzag(c: RelCat, z, u=None, w=None):
    """Act on a pinned zigzag: postcompose the first (leftward) edge by u and
    precompose the last (leftward) edge by w."""
    und = c.und
    nodes, edges = z
    nodes, edges = list(nodes), list(edges)
    if w is not None:
        edges[-1] = und.comp[(edges[-1], w)]
        nodes[-1] = und.src[w]
    if u is not None:
        edges[0] = und.comp[(u, edges[0])]
        nodes[0] = und.tgt[u]
    return (tuple(nodes), tuple(edges))


def _transform_ladder(c: RelCat, m, u=None, w=None):
    top, bottom, verts = m
    und = c.und
    verts = list(verts)
    if u is not None:
        verts[0] = und.id_of[und.tgt[u]]
    if w is not None:
        verts[-1] = und.id_of[und.src[w]]
    return (_transform_zigzag(c, top, u, w), _transform_zigzag(c, bottom, u, w), tuple(verts))


def zigzag_bifunctor(c: RelCat, k) -> CatValuedBifunctor:
    """Zigzag categories as a diagram over the weak equivalences of C.

    The value at (X, Y) is the category of pinned zigzags X ⇝ Y of type k;
    the diagram is covariant in X (postcompose the first leftward edge) and
    contravariant in Y (precompose the last leftward edge).  Both end
    segments of k must point leftward.
    """
    dirs = k.dirs() if isinstance(k, ZigzagType) else dirs_of(k)
    if not dirs or dirs[0] > 0 or dirs[-1] > 0:
        raise BadZigzagType("both end segments must point leftward")
    w_cat = weq_subcategory(c)
    values = {}
    for x in w_cat.objects:
        for y in w_cat.objects:
            values[(x, y)] = zigzag_category(c, k, x, y)
    transitions = {}
    for u in w_cat.morphisms:
        for w in w_cat.morphisms:
            src_cat = values[(w_cat.src[u], w_cat.tgt[w])]
            tgt_cat = values[(w_cat.tgt[u], w_cat.src[w])]
            obj_map = {z: _transform_zigzag(c, z, u, w) for z in src_cat.objects}
            mor_map = {m: _transform_ladder(c, m, u, w) for m in src_cat.morphisms}
            transitions[(u, w)] = Functor(src_cat, tgt_cat, obj_map, mor_map)
    return CatValuedBifunctor(w_cat, "bi", values, transitions)


def verify_canonical_iso(c: RelCat, k) -> bool:
    """Check that gluing the pinned zigzag categories over weq C on both
    sides recovers the category of all zigzags and weq ladders.

    Builds the nested one-sided constructions (first in the contravariant
    slot, then in the covariant one), assembles the explicit comparison
    functor to the directly-enumerated category, and verifies that it is an
    isomorphism commuting with the evaluation projections at both ends.
    """
    from .relcat import weq_relfun_line

    dirs = k.dirs() if isinstance(k, ZigzagType) else dirs_of(k)
    if not dirs or dirs[0] > 0 or dirs[-1] > 0:
        raise BadZigzagType("both end segments must point leftward")
    bif = zigzag_bifunctor(c, k)
    w_cat = bif.base
    point = constant_diagram(w_cat, "covariant")

    inner_totals = {}
    for x in w_cat.objects:
        inner_totals[x] = two_sided_grothendieck(bif.fix_first(x), point)
    # covariant outer diagram X ↦ (pinned zigzags from X) ⊗_W {*}
    outer_values = {x: inner_totals[x][0] for x in w_cat.objects}
    outer_transitions = {}
    for u in w_cat.morphisms:
        x, x2 = w_cat.src[u], w_cat.tgt[u]
        src_cat, tgt_cat = outer_values[x], outer_values[x2]
        obj_map = {(z, y, s): (_transform_zigzag(c, z, u, None), y, s) for (z, y, s) in src_cat.objects}
        mor_map = {}
        for m in src_cat.morphisms:
            a_src, a_tgt, (f_in, w, g_in) = m
            mor_map[m] = (
                obj_map[a_src],
                obj_map[a_tgt],
                (_transform_ladder(c, f_in, u, None), w, g_in),
            )
        outer_transitions[u] = Functor(src_cat, tgt_cat, obj_map, mor_map)
    outer_diag = CatValuedBifunctor(w_cat, "covariant", outer_values, outer_transitions)
    total, proj = two_sided_grothendieck(constant_diagram(w_cat, "contravariant"), outer_diag)

    reference = weq_relfun_line(c, dirs)
    ref_obj, ref_mor = set(reference.objects), set(reference.morphisms)
    obj_map = {}
    for o in total.objects:
        _, x, (z, y, _) = o
        if z not in ref_obj or z[0][0] != x or z[0][-1] != y:
            return False
        obj_map[o] = z
    mor_map = {}
    for m in total.morphisms:
        a_src, a_tgt, (_, u, g_out) = m
        inner_src, inner_tgt, (f_in, w, _) = g_out
        top = obj_map[a_src]
        bottom = obj_map[a_tgt]
        verts = (u,) + f_in[2][1:-1] + (w,)
        label = (top, bottom, verts)
        if label not in ref_mor:
            return False
        mor_map[m] = label
    comparison = Functor(total, reference, obj_map, mor_map)
    comparison.check()
    if not comparison.is_isomorphism():
        return False
    # compatibility with the evaluation projections at both endpoints
    for o in total.objects:
        z = obj_map[o]
        if z[0][0] != o[1] or z[0][-1] != o[2][1]:
            return False
    for m in total.morphisms:
        lbl = mor_map[m]
        if lbl[2][0] != m[2][1] or lbl[2][-1] != m[2][2][2][1]:
            return False
    return True
