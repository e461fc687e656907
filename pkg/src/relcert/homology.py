"""Truncated normalized nerve chain complexes and exact integral homology.

The n-chains of the nerve are composable chains of n non-identity
morphisms (the nondegenerate simplices of the normalized complex); a face
that produces an identity is degenerate and contributes zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import budget
from .errors import InputParse
from .fincat import (
    FinCat,
    Functor,
    canon_key,
    compose_functors,
    constant_functor,
    enumerate_functors,
    functor_label,
    identity_functor,
    is_terminal_category,
    nat_trans_zigzag,
)
from .snf import integer_rank, torsion_of


@dataclass(frozen=True, eq=True)
class ChainComplex:
    """Integer chain complex truncated at degree d, with bases through d+1."""

    truncation: int
    bases: tuple          # bases[n] = tuple of basis labels, 0 <= n <= d+1
    boundaries: tuple     # boundaries[n] : C_{n+1} -> C_n as a row-major matrix

    def basis(self, n):
        return self.bases[n] if 0 <= n < len(self.bases) else ()

    def boundary(self, n):
        """Matrix of ∂_n : C_n → C_{n-1} (rows: C_{n-1}, cols: C_n)."""
        if 1 <= n < len(self.bases):
            return self.boundaries[n - 1]
        return [[] for _ in self.basis(max(n - 1, 0))]

    def check_dd_zero(self):
        for n in range(1, len(self.bases) - 1):
            a = self.boundary(n)
            b = self.boundary(n + 1)
            rows = len(self.basis(n - 1))
            for i in range(rows):
                for j in range(len(self.basis(n + 1))):
                    s = sum(a[i][k] * b[k][j] for k in range(len(self.basis(n))))
                    if s != 0:
                        raise InputParse(f"∂∂ != 0 at degree {n + 1}, entry ({i}, {j})")
        return True


@dataclass(frozen=True, eq=True)
class HomologySummary:
    """Per-degree free rank and torsion divisor chain, degrees 0..d."""

    degree: int
    betti: tuple
    torsion: tuple  # tuple of tuples, each a divisor chain

    def is_trivial_above_zero(self):
        return all(b == 0 for b in self.betti[1:]) and all(not t for t in self.torsion)

    def vanishes_everywhere(self):
        return all(b == 0 for b in self.betti) and all(not t for t in self.torsion)


def nerve_complex(c: FinCat, d: int) -> ChainComplex:
    """Normalized nerve chains of C through degree d+1."""
    b = budget.current()
    bases = [tuple(sorted(c.objects, key=canon_key))]
    non_id = [m for m in c.morphisms if not c.is_identity(m)]
    chains = [(m,) for m in non_id]
    for n in range(1, d + 2):
        chains = sorted(chains, key=canon_key)
        b.check_morphisms(len(chains), f"nerve {n}-simplices")
        bases.append(tuple(chains))
        nxt = []
        for ch in chains:
            last = ch[-1]
            for m in non_id:
                if c.src[m] == c.tgt[last]:
                    nxt.append(ch + (m,))
        chains = nxt
    boundaries = []
    for n in range(1, d + 2):
        index = {lbl: i for i, lbl in enumerate(bases[n - 1])}
        mat = [[0] * len(bases[n]) for _ in bases[n - 1]]
        for j, ch in enumerate(bases[n]):
            for i_face in range(n + 1):
                face = _face(c, ch, i_face)
                if face is None:
                    continue
                mat[index[face]][j] += -1 if i_face % 2 else 1
        boundaries.append(mat)
    return ChainComplex(d, tuple(bases), tuple(boundaries))


def _face(c: FinCat, chain, i):
    """The i-th face of a composable chain, or None when degenerate."""
    n = len(chain)
    if n == 1:
        return c.tgt[chain[0]] if i == 0 else c.src[chain[0]]
    if i == 0:
        return chain[1:]
    if i == n:
        return chain[:-1]
    composite = c.comp[(chain[i], chain[i - 1])]
    if c.is_identity(composite):
        return None
    return chain[: i - 1] + (composite,) + chain[i + 1 :]


def homology(k: ChainComplex, d: int) -> HomologySummary:
    """Exact integral homology through degree d (requires d ≤ truncation)."""
    if d > k.truncation:
        raise InputParse(f"homology degree {d} exceeds truncation {k.truncation}")
    betti, torsion = [], []
    for n in range(d + 1):
        dim = len(k.basis(n))
        r_n = integer_rank(k.boundary(n)) if n >= 1 and dim else 0
        bnd_up = k.boundary(n + 1)
        r_up = integer_rank(bnd_up) if dim and len(k.basis(n + 1)) else 0
        betti.append(dim - r_n - r_up)
        tor = torsion_of(bnd_up) if dim and len(k.basis(n + 1)) else []
        torsion.append(tuple(tor))
    return HomologySummary(d, tuple(betti), tuple(torsion))


# ---------------------------------------------------------------------------
# Chain maps and mapping cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    matrices: tuple  # matrices[n] : source C_n -> target C_n

    def check_commutes(self):
        for n in range(1, min(len(self.source.bases), len(self.target.bases))):
            lhs = _mat_mul(self.matrices[n - 1], self.source.boundary(n))
            rhs = _mat_mul(self.target.boundary(n), self.matrices[n])
            if lhs != rhs:
                raise InputParse(f"chain map does not commute with ∂ at degree {n}")
        return True


def _mat_mul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(len(a))
    ]


def chain_map(f: Functor, d: int) -> ChainMap:
    """Induced map of normalized nerve complexes through degree d+1."""
    src = nerve_complex(f.source, d)
    tgt = nerve_complex(f.target, d)
    mats = []
    for n in range(d + 2):
        index = {lbl: i for i, lbl in enumerate(tgt.basis(n))}
        mat = [[0] * len(src.basis(n)) for _ in tgt.basis(n)]
        for j, lbl in enumerate(src.basis(n)):
            if n == 0:
                img = f.obj_map[lbl]
            else:
                img = tuple(f.mor_map[m] for m in lbl)
                if any(f.target.is_identity(m) for m in img):
                    continue
            mat[index[img]][j] = 1
        mats.append(mat)
    return ChainMap(src, tgt, tuple(mats))


def mapping_cone(cm: ChainMap) -> ChainComplex:
    """Cone of a chain map; truncated one degree below its inputs."""
    k, l = cm.source, cm.target
    d = min(k.truncation, l.truncation)
    bases = []
    for n in range(d + 2):
        shifted = tuple(("s", lbl) for lbl in k.basis(n - 1)) if n >= 1 else ()
        bases.append(shifted + tuple(("t", lbl) for lbl in l.basis(n)))
    boundaries = []
    for n in range(1, d + 2):
        rows_k = len(k.basis(n - 2)) if n >= 2 else 0
        rows_l = len(l.basis(n - 1))
        cols_k = len(k.basis(n - 1))
        cols_l = len(l.basis(n))
        mat = [[0] * (cols_k + cols_l) for _ in range(rows_k + rows_l)]
        if n >= 2:
            dk = k.boundary(n - 1)
            for i in range(rows_k):
                for j in range(cols_k):
                    mat[i][j] = -dk[i][j]
        phi = cm.matrices[n - 1]
        for i in range(rows_l):
            for j in range(cols_k):
                mat[rows_k + i][j] = phi[i][j]
        dl = l.boundary(n)
        for i in range(rows_l):
            for j in range(cols_l):
                mat[rows_k + i][cols_k + j] = dl[i][j]
        boundaries.append(mat)
    return ChainComplex(d, tuple(bases), tuple(boundaries))


# ---------------------------------------------------------------------------
# Connected components
# ---------------------------------------------------------------------------


def pi0(c: FinCat):
    """Connected components of a category as frozensets of objects."""
    parent = {x: x for x in c.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in c.morphisms:
        a, b = find(c.src[m]), find(c.tgt[m])
        if a != b:
            parent[a] = b
    groups = {}
    for x in c.objects:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=lambda s: canon_key(min(s, key=canon_key)))


def pi0_bijective(f: Functor) -> bool:
    src_comps = pi0(f.source)
    tgt_comps = pi0(f.target)
    image = set()
    for comp in src_comps:
        rep = f.obj_map[min(comp, key=canon_key)]
        for i, tc in enumerate(tgt_comps):
            if rep in tc:
                image.add(i)
                break
    if len(image) != len(src_comps):
        return False  # two source components merge
    return len(image) == len(tgt_comps)


# ---------------------------------------------------------------------------
# Weak-homotopy-equivalence certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class WheCert:
    """Machine-checkable witness that a functor is a weak homotopy equivalence.

    Strata, cheapest first:
      * "exact-iso"      — the functor is an isomorphism of categories;
      * "nat-zigzag"     — an inverse-up-to-homotopy with zigzags of natural
                           transformations connecting both composites to
                           identities;
      * "contraction"    — source and target are both contractible (the target
                           may be the one-object one-morphism category);
      * "homology-d-equivalence" — the mapping cone of the induced map of
                           normalized nerve complexes has trivial homology
                           through degree d and the functor is a bijection on
                           connected components (evidence relative to d only);
      * "composite"      — a composite of certified equivalences.

    A cert with verdict False records why the final stratum failed; refusal
    is an answer, not an error.
    """

    functor: Functor
    kind: str
    verdict: bool
    degree: object  # int for homology evidence, None otherwise
    evidence: dict

    def recheck(self) -> bool:
        """Re-validate the evidence from scratch; raises on malformed data."""
        f = self.functor
        f.check()
        if self.kind == "exact-iso":
            return self.verdict == f.is_isomorphism()
        if self.kind == "nat-zigzag":
            g = self.evidence["inverse"]
            g.check()
            if g.source != f.target or g.target != f.source:
                raise InputParse("claimed inverse has wrong endpoints")
            ok = _check_nat_path(
                self.evidence["round_trip_source"], identity_functor(f.source), compose_functors(g, f)
            ) and _check_nat_path(
                self.evidence["round_trip_target"], compose_functors(f, g), identity_functor(f.target)
            )
            return self.verdict == ok
        if self.kind == "contraction":
            ok = _check_contraction(f.source, self.evidence["source_contraction"])
            tgt_witness = self.evidence.get("target_contraction")
            if tgt_witness is None:
                ok = ok and is_terminal_category(f.target)
            else:
                ok = ok and _check_contraction(f.target, tgt_witness)
            return self.verdict == ok
        if self.kind == "homology-d-equivalence":
            p = pi0_bijective(f)
            cone = mapping_cone(chain_map(f, self.degree))
            summary = homology(cone, self.degree)
            if summary != self.evidence["cone_homology"] or p != self.evidence["pi0_bijective"]:
                return False
            return self.verdict == (p and summary.vanishes_everywhere())
        if self.kind == "composite":
            factors = self.evidence["factors"]
            if not factors:
                raise InputParse("composite certificate with no factors")
            composed = factors[0].functor
            for part in factors[1:]:
                composed = compose_functors(part.functor, composed)
            if composed.obj_map != f.obj_map or composed.mor_map != f.mor_map:
                raise InputParse("factors do not compose to the certified functor")
            return self.verdict == all(part.recheck() and part.verdict for part in factors)
        raise InputParse(f"unknown certificate kind {self.kind!r}")


def _check_nat_path(path, f: Functor, g: Functor) -> bool:
    """Check a zigzag of natural transformations connecting f to g."""
    cur = functor_label(f)
    for nt, direction in path:
        nt.check()
        if direction == "fwd":
            a, b = functor_label(nt.source), functor_label(nt.target)
        else:
            b, a = functor_label(nt.source), functor_label(nt.target)
        if a != cur:
            return False
        cur = b
    return cur == functor_label(g)


def _check_contraction(c: FinCat, witness) -> bool:
    kind = witness[0]
    if kind == "terminal-object":
        t = witness[1]
        return all(len(c.hom(x, t)) == 1 for x in c.objects)
    if kind == "initial-object":
        t = witness[1]
        return all(len(c.hom(t, x)) == 1 for x in c.objects)
    if kind == "zigzag-to-constant":
        obj, path = witness[1], witness[2]
        return _check_nat_path(path, identity_functor(c), constant_functor(c, c, obj))
    raise InputParse(f"unknown contraction witness {kind!r}")


def terminal_object(c: FinCat):
    """An object receiving exactly one morphism from everywhere, or None."""
    for t in c.objects:
        if all(len(c.hom(x, t)) == 1 for x in c.objects):
            return t
    return None


def initial_object(c: FinCat):
    for t in c.objects:
        if all(len(c.hom(t, x)) == 1 for x in c.objects):
            return t
    return None


def find_contraction(c: FinCat, max_zigzag=0):
    """A contractibility witness for C, or None.

    Tries a terminal object, then an initial object; with max_zigzag > 0 and
    a small category, also searches for a zigzag of natural transformations
    from the identity to a constant functor.
    """
    t = terminal_object(c)
    if t is not None:
        return ("terminal-object", t)
    t = initial_object(c)
    if t is not None:
        return ("initial-object", t)
    if max_zigzag > 0 and _small_enough(c, c):
        ident = identity_functor(c)
        for obj in c.objects:
            path = nat_trans_zigzag(ident, constant_functor(c, c, obj), max_zigzag)
            if path is not None:
                return ("zigzag-to-constant", obj, path)
    return None


def _small_enough(c: FinCat, d: FinCat, max_objects=6, max_morphisms=24) -> bool:
    return (
        len(c.objects) <= max_objects
        and len(d.objects) <= max_objects
        and len(c.morphisms) <= max_morphisms
        and len(d.morphisms) <= max_morphisms
    )


def homology_equivalence_evidence(f: Functor, d: int):
    """Mapping-cone evidence for f at truncation degree d."""
    p = pi0_bijective(f)
    cone = mapping_cone(chain_map(f, d))
    summary = homology(cone, d)
    return {"pi0_bijective": p, "cone_homology": summary}


def whe_certificate(f: Functor, d: int = 2, max_zigzag: int = 3, hints=None) -> WheCert:
    """Certify (or refuse to certify) that f is a weak homotopy equivalence.

    Strata are tried cheapest-first; ``hints`` can supply explicit evidence
    for the nat-zigzag stratum ({"inverse", "round_trip_source",
    "round_trip_target"}) or contraction witnesses ({"source_contraction",
    "target_contraction"}), which are verified rather than trusted.
    """
    hints = hints or {}
    if f.is_isomorphism():
        return WheCert(f, "exact-iso", True, None, {})

    if "inverse" in hints:
        cert = WheCert(
            f,
            "nat-zigzag",
            True,
            None,
            {
                "inverse": hints["inverse"],
                "round_trip_source": hints["round_trip_source"],
                "round_trip_target": hints["round_trip_target"],
            },
        )
        if cert.recheck():
            return cert
        raise InputParse("supplied inverse hint does not verify")
    if _small_enough(f.source, f.target):
        found = _search_homotopy_inverse(f, max_zigzag)
        if found is not None:
            return WheCert(f, "nat-zigzag", True, None, found)

    if "source_contraction" in hints:
        cert = WheCert(
            f,
            "contraction",
            True,
            None,
            {
                "source_contraction": hints["source_contraction"],
                "target_contraction": hints.get("target_contraction"),
            },
        )
        if cert.recheck():
            return cert
        raise InputParse("supplied contraction hint does not verify")
    src_witness = find_contraction(f.source, max_zigzag)
    if src_witness is not None:
        if is_terminal_category(f.target):
            return WheCert(f, "contraction", True, None, {"source_contraction": src_witness, "target_contraction": None})
        tgt_witness = find_contraction(f.target, max_zigzag)
        if tgt_witness is not None:
            return WheCert(
                f,
                "contraction",
                True,
                None,
                {"source_contraction": src_witness, "target_contraction": tgt_witness},
            )

    evidence = homology_equivalence_evidence(f, d)
    verdict = evidence["pi0_bijective"] and evidence["cone_homology"].vanishes_everywhere()
    return WheCert(f, "homology-d-equivalence", verdict, d, evidence)


def _search_homotopy_inverse(f: Functor, max_zigzag: int):
    """Search all functors target → source for an inverse up to zigzags."""
    ident_src = identity_functor(f.source)
    ident_tgt = identity_functor(f.target)
    for g in enumerate_functors(f.target, f.source):
        back = nat_trans_zigzag(ident_src, compose_functors(g, f), max_zigzag)
        if back is None:
            continue
        fro = nat_trans_zigzag(compose_functors(f, g), ident_tgt, max_zigzag)
        if fro is not None:
            return {"inverse": g, "round_trip_source": back, "round_trip_target": fro}
    return None


def composite_whe_certificate(f: Functor, factors) -> WheCert:
    """Bundle certificates for a factorization of f (first factor applied first)."""
    verdict = all(part.verdict for part in factors)
    cert = WheCert(f, "composite", verdict, None, {"factors": tuple(factors)})
    cert.recheck()
    return cert
