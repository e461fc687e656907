"""Homotopy-pullback certificates for commutative squares of categories.

A certificate never asserts a homotopy pullback by fiat: each evidence kind
records exactly the hypotheses of a sound inference (a fibration theorem
with weak-homotopy-equivalent fiber transitions, a product over the point,
pasting of certified squares, transport across a cube of equivalences, or a
square of parallel equivalences), and recheck() re-verifies those
hypotheses from the stored data.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import CubeNotCommutative, EdgeMismatch, InputParse
from .fincat import FinCat, Functor, compose_functors, is_terminal_category, sort_labels
from .groth import check_fibration, transition_functor
from .homology import WheCert, whe_certificate
from . import budget


def functors_equal(f: Functor, g: Functor) -> bool:
    return (
        f.source == g.source
        and f.target == g.target
        and f.obj_map == g.obj_map
        and f.mor_map == g.mor_map
    )


@dataclass(frozen=True, eq=True)
class Square:
    """A commutative square: right ∘ top = bottom ∘ left."""

    top: Functor      # top-left → top-right
    left: Functor     # top-left → bottom-left
    right: Functor    # top-right → bottom-right
    bottom: Functor   # bottom-left → bottom-right

    @property
    def top_left(self):
        return self.top.source

    @property
    def top_right(self):
        return self.top.target

    @property
    def bottom_left(self):
        return self.bottom.source

    @property
    def bottom_right(self):
        return self.bottom.target

    def check(self):
        if self.left.source != self.top.source:
            raise InputParse("top and left legs start at different categories")
        if self.right.source != self.top.target:
            raise InputParse("right leg does not start at the top-right corner")
        if self.bottom.source != self.left.target:
            raise InputParse("bottom leg does not start at the bottom-left corner")
        if self.right.target != self.bottom.target:
            raise InputParse("right and bottom legs end at different categories")
        via_right = compose_functors(self.right, self.top)
        via_bottom = compose_functors(self.bottom, self.left)
        if via_right.obj_map != via_bottom.obj_map or via_right.mor_map != via_bottom.mor_map:
            raise InputParse("square does not commute exactly")
        return True


def strict_pullback(u: Functor, q: Functor):
    """The strict pullback of u : A → B and q : E → B.

    Objects are pairs (a, e) with u(a) = q(e); returns the category and the
    projections to A and to E.
    """
    if u.target != q.target:
        raise InputParse("pullback legs must share a codomain")
    a_cat, e_cat = u.source, q.source
    b = budget.current()
    objects = [
        (a, e) for a in a_cat.objects for e in e_cat.objects if u.obj_map[a] == q.obj_map[e]
    ]
    b.check_objects(len(objects), "strict pullback objects")
    objects = tuple(sort_labels(objects))
    morphisms = [
        (f, h)
        for f in a_cat.morphisms
        for h in e_cat.morphisms
        if u.mor_map[f] == q.mor_map[h]
    ]
    b.check_morphisms(len(morphisms), "strict pullback morphisms")
    morphisms = tuple(sort_labels(morphisms))
    src = {(f, h): (a_cat.src[f], e_cat.src[h]) for f, h in morphisms}
    tgt = {(f, h): (a_cat.tgt[f], e_cat.tgt[h]) for f, h in morphisms}
    id_of = {(a, e): (a_cat.id_of[a], e_cat.id_of[e]) for a, e in objects}
    morset = set(morphisms)
    comp = {}
    for (f1, h1) in morphisms:
        for f2 in a_cat.out_of(a_cat.tgt[f1]):
            for h2 in e_cat.out_of(e_cat.tgt[h1]):
                if ((f2, h2)) in morset:
                    comp[((f2, h2), (f1, h1))] = (a_cat.comp[(f2, f1)], e_cat.comp[(h2, h1)])
    cat = FinCat.build(objects, morphisms, src, tgt, id_of, comp)
    pr_a = Functor(cat, a_cat, {o: o[0] for o in objects}, {m: m[0] for m in morphisms})
    pr_e = Functor(cat, e_cat, {o: o[1] for o in objects}, {m: m[1] for m in morphisms})
    return cat, pr_a, pr_e


def pullback_square(u: Functor, q: Functor) -> Square:
    """The canonical strict-pullback square over u (bottom) and q (right)."""
    _, pr_a, pr_e = strict_pullback(u, q)
    return Square(top=pr_e, left=pr_a, right=q, bottom=u)


def is_strict_pullback(sq: Square) -> bool:
    """Does the top-left corner satisfy the universal property on the nose?

    Checked by comparing against the canonical pullback of the bottom and
    right legs: the comparison functor must be bijective on objects and on
    morphisms.
    """
    sq.check()
    cat, _, _ = strict_pullback(sq.bottom, sq.right)
    tl = sq.top_left
    obj_images = {(sq.left.obj_map[a], sq.top.obj_map[a]) for a in tl.objects}
    mor_images = {(sq.left.mor_map[m], sq.top.mor_map[m]) for m in tl.morphisms}
    return (
        len(obj_images) == len(tl.objects) == len(cat.objects)
        and obj_images == set(cat.objects)
        and len(mor_images) == len(tl.morphisms) == len(cat.morphisms)
        and mor_images == set(cat.morphisms)
    )


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class HpbCert:
    """Evidence that a commutative square is a homotopy pullback.

    kind is one of "theorem-b", "product", "pasted", "converse-pasted",
    "transported", "parallel-whe", "refused"; a verdict of False records a
    refusal (the evidence then carries a "failure" entry naming the failed
    check, and for "refused" the failing prerequisite certificate).
    """

    square: Square
    degree: int
    kind: str
    verdict: bool
    evidence: dict

    def recheck(self) -> bool:
        self.square.check()
        if self.kind == "theorem-b":
            return self._recheck_theorem_b()
        if self.kind == "product":
            ok = is_terminal_category(self.square.bottom_right) and is_strict_pullback(self.square)
            return self.verdict == ok
        if self.kind in ("pasted", "converse-pasted"):
            return self._recheck_pasted()
        if self.kind == "transported":
            return self._recheck_transported()
        if self.kind == "parallel-whe":
            return self._recheck_parallel()
        if self.kind == "refused":
            if self.verdict:
                return False
            pre = self.evidence.get("prerequisite")
            if pre is None:
                return True
            return bool(pre.recheck()) and not pre.verdict
        raise InputParse(f"unknown homotopy-pullback evidence kind {self.kind!r}")

    def _recheck_theorem_b(self) -> bool:
        ev = self.evidence
        if "failure" in ev:
            if self.verdict:
                return False
            return theorem_b_certificate(self.square, ev["variant"], self.degree).verdict is False
        if not is_strict_pullback(self.square):
            return False
        report = ev["report"]
        if not functors_equal(report.functor, self.square.right):
            return False
        if not (report.variant == ev["variant"] and report.recheck() and report.verdict):
            return False
        base = self.square.right.target
        ok = True
        for f in base.morphisms:
            if base.is_identity(f):
                continue
            cert = ev["fiber_certs"][f]
            expected = transition_functor(self.square.right, f, report)
            if not functors_equal(cert.functor, expected):
                return False
            ok = ok and cert.recheck() and cert.verdict
        return self.verdict == ok

    def _recheck_pasted(self) -> bool:
        ev = self.evidence
        axis = ev["axis"]
        if self.kind == "pasted":
            first, second = ev["first"], ev["second"]
            composite = _paste_squares(first.square, second.square, axis)
            if composite != self.square:
                return False
            ok = first.recheck() and first.verdict and second.recheck() and second.verdict
            return self.verdict == ok
        rectangle, other = ev["rectangle"], ev["other"]
        composite = _paste_squares(self.square, other.square, axis)
        if composite != rectangle.square:
            return False
        ok = rectangle.recheck() and rectangle.verdict and other.recheck() and other.verdict
        return self.verdict == ok

    def _recheck_transported(self) -> bool:
        ev = self.evidence
        front = ev["front"]
        corners = ev["corners"]  # (top_left, top_right, bottom_left, bottom_right) WheCerts
        back, fr = self.square, front.square
        w_tl, w_tr, w_bl, w_br = corners
        _require_edge(w_tl.functor, back.top_left, fr.top_left)
        _require_edge(w_tr.functor, back.top_right, fr.top_right)
        _require_edge(w_bl.functor, back.bottom_left, fr.bottom_left)
        _require_edge(w_br.functor, back.bottom_right, fr.bottom_right)
        faces = (
            (fr.top, w_tl.functor, w_tr.functor, back.top),
            (fr.left, w_tl.functor, w_bl.functor, back.left),
            (fr.right, w_tr.functor, w_br.functor, back.right),
            (fr.bottom, w_bl.functor, w_br.functor, back.bottom),
        )
        for front_leg, at_src, at_tgt, back_leg in faces:
            lhs = compose_functors(front_leg, at_src)
            rhs = compose_functors(at_tgt, back_leg)
            if lhs.obj_map != rhs.obj_map or lhs.mor_map != rhs.mor_map:
                raise CubeNotCommutative("a side face of the transport cube does not commute")
        ok = front.recheck() and front.verdict
        for cert in corners:
            ok = ok and cert.recheck() and cert.verdict
        return self.verdict == ok

    def _recheck_parallel(self) -> bool:
        ev = self.evidence
        pair = ev["pair"]
        c1, c2 = ev["certs"]
        if pair == "vertical":
            legs = (self.square.left, self.square.right)
        elif pair == "horizontal":
            legs = (self.square.top, self.square.bottom)
        else:
            raise InputParse(f"unknown parallel pair {pair!r}")
        if not (functors_equal(c1.functor, legs[0]) and functors_equal(c2.functor, legs[1])):
            return False
        ok = c1.recheck() and c1.verdict and c2.recheck() and c2.verdict
        return self.verdict == ok


def _require_edge(f: Functor, src_cat: FinCat, tgt_cat: FinCat):
    if f.source != src_cat or f.target != tgt_cat:
        raise CubeNotCommutative("a connecting arrow joins the wrong corners")


def _paste_squares(first: Square, second: Square, axis: str) -> Square:
    """The composite rectangle of two squares sharing an edge.

    Horizontal: first is the left square, shared edge first.right ==
    second.left.  Vertical: first is the top square, shared edge
    first.bottom == second.top.
    """
    if axis == "horizontal":
        if not functors_equal(first.right, second.left):
            raise EdgeMismatch("shared vertical edge differs between the squares")
        return Square(
            top=compose_functors(second.top, first.top),
            left=first.left,
            right=second.right,
            bottom=compose_functors(second.bottom, first.bottom),
        )
    if axis == "vertical":
        if not functors_equal(first.bottom, second.top):
            raise EdgeMismatch("shared horizontal edge differs between the squares")
        return Square(
            top=first.top,
            left=compose_functors(second.left, first.left),
            right=compose_functors(second.right, first.right),
            bottom=second.bottom,
        )
    raise InputParse(f"unknown pasting axis {axis!r}")


def theorem_b_certificate(square: Square, variant: str, d: int = 2, fiber_hints=None, jobs: int = 1) -> HpbCert:
    """Certify a square via the fibration theorem.

    Checks, in order: the square commutes and is a strict pullback; the
    right leg is a Grothendieck (op)fibration; every base morphism's
    transition functor between strict fibers is a certified weak homotopy
    equivalence at degree d.  A failed check yields a refusal certificate
    carrying the failing stage.
    """
    fiber_hints = fiber_hints or {}
    square.check()
    if not is_strict_pullback(square):
        return HpbCert(square, d, "theorem-b", False, {"variant": variant, "failure": "not-a-strict-pullback"})
    report = check_fibration(square.right, variant)
    if not report.verdict:
        return HpbCert(
            square,
            d,
            "theorem-b",
            False,
            {"variant": variant, "failure": "right-leg-not-a-fibration", "counterexample": report.counterexample},
        )
    base = square.right.target
    todo = [f for f in base.morphisms if not base.is_identity(f)]

    def run(f):
        t = transition_functor(square.right, f, report)
        return whe_certificate(t, d=d, hints=fiber_hints.get(f))

    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, todo))
    else:
        results = [run(f) for f in todo]
    fiber_certs = dict(zip(todo, results))
    verdict = all(c.verdict for c in results)
    return HpbCert(
        square,
        d,
        "theorem-b",
        verdict,
        {"variant": variant, "report": report, "fiber_certs": fiber_certs},
    )


def product_certificate(square: Square, d: int = 2) -> HpbCert:
    """Certify a product square: a strict pullback over the terminal category."""
    square.check()
    ok = is_terminal_category(square.bottom_right) and is_strict_pullback(square)
    return HpbCert(square, d, "product", ok, {} if ok else {"failure": "not-a-product-square"})


def paste_certificates(left: HpbCert, right: HpbCert, direction: str, remaining: Square | None = None) -> HpbCert:
    """Paste two certified squares, or run the pasting lemma in reverse.

    direction "horizontal"/"vertical": left and right (or top and bottom)
    certified squares give a certificate for the composite rectangle.
    direction "converse-horizontal"/"converse-vertical": left is a
    certified *rectangle* and right the certified second square; the result
    certifies the remaining first square, which is either supplied as
    ``remaining`` or recovered from the two inputs (possible only when the
    shared legs are injective).  Either way it is validated by re-pasting.
    """
    if direction in ("horizontal", "vertical"):
        composite = _paste_squares(left.square, right.square, direction)
        d = max(left.degree, right.degree)
        verdict = left.verdict and right.verdict
        return HpbCert(composite, d, "pasted", verdict, {"first": left, "second": right, "axis": direction})
    if direction in ("converse-horizontal", "converse-vertical"):
        axis = direction.split("-", 1)[1]
        rectangle, other = left, right
        if remaining is None and axis == "horizontal":
            remaining = Square(
                top=_factor_through(rectangle.square.top, other.square.top),
                left=rectangle.square.left,
                right=other.square.left,
                bottom=_factor_through(rectangle.square.bottom, other.square.bottom),
            )
        elif remaining is None:
            remaining = Square(
                top=rectangle.square.top,
                left=_factor_through(rectangle.square.left, other.square.left),
                right=_factor_through(rectangle.square.right, other.square.right),
                bottom=other.square.top,
            )
        d = max(rectangle.degree, other.degree)
        verdict = rectangle.verdict and other.verdict
        cert = HpbCert(remaining, d, "converse-pasted", verdict, {"rectangle": rectangle, "other": other, "axis": axis})
        if _paste_squares(remaining, other.square, axis) != rectangle.square:
            raise EdgeMismatch("the rectangle does not factor through the given square")
        return cert
    raise InputParse(f"unknown pasting direction {direction!r}")


def _factor_through(whole: Functor, second: Functor) -> Functor:
    """The unique functor with second ∘ result = whole, when second is injective."""
    if whole.target != second.target:
        raise EdgeMismatch("legs do not share a codomain")
    obj_inv = {}
    for x, y in second.obj_map.items():
        if y in obj_inv:
            raise EdgeMismatch("cannot factor: the second leg is not injective on objects")
        obj_inv[y] = x
    mor_inv = {}
    for m, n in second.mor_map.items():
        if n in mor_inv:
            raise EdgeMismatch("cannot factor: the second leg is not injective on morphisms")
        mor_inv[n] = m
    try:
        return Functor(
            whole.source,
            second.source,
            {x: obj_inv[y] for x, y in whole.obj_map.items()},
            {m: mor_inv[n] for m, n in whole.mor_map.items()},
        )
    except KeyError as exc:
        raise EdgeMismatch("the rectangle leg does not factor through the square leg") from exc


def transport_certificate(front: HpbCert, back_square: Square, corner_certs) -> HpbCert:
    """Transport a certificate across a cube of weak homotopy equivalences.

    corner_certs are WheCerts for the connecting arrows back → front at the
    four corners, in the order (top-left, top-right, bottom-left,
    bottom-right).  The cube's side faces must commute exactly.
    """
    verdict = front.verdict and all(c.verdict for c in corner_certs)
    cert = HpbCert(
        back_square,
        front.degree,
        "transported",
        verdict,
        {"front": front, "corners": tuple(corner_certs)},
    )
    cert.recheck()  # raises CubeNotCommutative on a malformed cube
    return cert


def parallel_whe_certificate(square: Square, pair: str, d: int = 2, certs=None) -> HpbCert:
    """Certify a square whose two parallel legs are weak homotopy equivalences.

    pair "vertical" uses the left and right legs, "horizontal" the top and
    bottom ones; certificates are searched automatically when not supplied.
    """
    square.check()
    legs = (square.left, square.right) if pair == "vertical" else (square.top, square.bottom)
    if certs is None:
        certs = tuple(whe_certificate(leg, d=d) for leg in legs)
    verdict = all(c.verdict for c in certs)
    return HpbCert(square, d, "parallel-whe", verdict, {"pair": pair, "certs": tuple(certs)})
