"""Byte-stable JSON serialization for categories, reports, and certificates.

Structured values are encoded as tagged objects {"t": ...}; bare arrays
always denote tuples, so labels (strings, integers, and nested tuples)
round-trip without escaping.  Categories, functors, transformations, and
certificates are interned in a shared definition table and referenced by
index, and their tables are stored as index arrays against the canonical
object/morphism order, which keeps deeply nested evidence trees compact.
Documents carry a schema version, and `loads(dumps(x)) == x` holds for
every supported type, so a verifier can recheck a certificate from its
serialization alone.
"""

from __future__ import annotations

import json

from .classify import (
    CompletenessReport,
    HoHomReport,
    HtacCert,
    SaturationReport,
    SegalCert,
)
from .errors import InputParse
from .fincat import FinCat, Functor, NatTrans, canon_key, sort_labels, validate_category
from .groth import FibrationReport
from .homology import ChainComplex, HomologySummary, WheCert
from .hpb import HpbCert, Square
from .relcat import RelCat, ShapeMap, make_relative

SCHEMA = "relcert/1"


# ---------------------------------------------------------------------------
# Interchange format for relative-category inputs
# ---------------------------------------------------------------------------


def relcat_to_input_data(c: RelCat) -> dict:
    """The human-editable input form: explicit tables plus weq generators."""
    und = c.und
    if all(isinstance(o, str) for o in und.objects):
        identities = {o: und.id_of[o] for o in und.objects}
    else:
        identities = [[o, und.id_of[o]] for o in und.objects]
    return {
        "objects": list(und.objects),
        "morphisms": [{"id": m, "src": und.src[m], "tgt": und.tgt[m]} for m in und.morphisms],
        "identities": identities,
        "composition": [
            {"g": g, "f": f, "gf": gf}
            for (g, f), gf in sorted(und.comp.items(), key=lambda kv: canon_key(kv[0]))
            if not (und.is_identity(g) or und.is_identity(f))
        ],
        "weq_generators": sort_labels(m for m in c.weq if not und.is_identity(m)),
    }


def _labels(value):
    """Decode nested arrays in an input file into tuple labels."""
    if isinstance(value, list):
        return tuple(_labels(v) for v in value)
    return value


def relcat_from_input_data(raw: dict) -> RelCat:
    """Parse the interchange format: category tables plus `weq_generators`."""
    try:
        raw_ids = raw["identities"]
        if isinstance(raw_ids, dict):
            identities = {_labels(k): _labels(v) for k, v in raw_ids.items()}
        else:
            identities = {_labels(k): _labels(v) for k, v in raw_ids}
        data = {
            "objects": [_labels(o) for o in raw["objects"]],
            "morphisms": [
                {"id": _labels(m["id"]), "src": _labels(m["src"]), "tgt": _labels(m["tgt"])}
                for m in raw["morphisms"]
            ],
            "identities": identities,
            "composition": [
                {"g": _labels(e["g"]), "f": _labels(e["f"]), "gf": _labels(e["gf"])}
                for e in raw.get("composition", [])
            ],
        }
    except (KeyError, TypeError) as exc:
        raise InputParse(f"malformed relative category description: {exc}") from None
    und = validate_category(data)
    return make_relative(und, [_labels(m) for m in raw.get("weq_generators", [])])


# ---------------------------------------------------------------------------
# Tagged encoding with a shared definition table
# ---------------------------------------------------------------------------

_SHARED = (
    FinCat,
    RelCat,
    Functor,
    NatTrans,
    Square,
    FibrationReport,
    WheCert,
    HpbCert,
    HtacCert,
    SegalCert,
    HoHomReport,
    SaturationReport,
    CompletenessReport,
)


class _Encoder:
    def __init__(self):
        self.defs = []
        self._memo = {}
        self._keep = []  # pin ids for the lifetime of the encoder

    def enc(self, obj):
        if obj is None or isinstance(obj, (bool, int, str)):
            return obj
        if isinstance(obj, (tuple, list)):
            return [self.enc(x) for x in obj]
        if isinstance(obj, frozenset):
            return {"t": "set", "v": [self.enc(x) for x in sort_labels(obj)]}
        if isinstance(obj, dict):
            pairs = sorted(obj.items(), key=lambda kv: canon_key(kv[0]))
            return {"t": "map", "v": [[self.enc(k), self.enc(v)] for k, v in pairs]}
        if isinstance(obj, _SHARED):
            key = id(obj)
            if key not in self._memo:
                index = len(self.defs)
                self._memo[key] = index
                self._keep.append(obj)
                self.defs.append(None)
                self.defs[index] = self._enc_def(obj)
            return {"t": "ref", "i": self._memo[key]}
        if isinstance(obj, ShapeMap):
            return self._tag(
                "ShapeMap", src_dirs=obj.src_dirs, tgt_dirs=obj.tgt_dirs, node_images=obj.node_images
            )
        if isinstance(obj, HomologySummary):
            return self._tag("HomologySummary", degree=obj.degree, betti=obj.betti, torsion=obj.torsion)
        if isinstance(obj, ChainComplex):
            return self._tag(
                "ChainComplex", truncation=obj.truncation, bases=obj.bases, boundaries=obj.boundaries
            )
        raise InputParse(f"cannot serialize value of type {type(obj).__name__}")

    def _tag(self, name, **fields):
        out = {"t": name}
        for k, v in fields.items():
            out[k] = self.enc(v)
        return out

    def _enc_def(self, obj):
        if isinstance(obj, FinCat):
            obj_index = {o: i for i, o in enumerate(obj.objects)}
            mor_index = {m: i for i, m in enumerate(obj.morphisms)}
            return {
                "t": "FinCat",
                "objects": [self.enc(o) for o in obj.objects],
                "morphisms": [self.enc(m) for m in obj.morphisms],
                "src": [obj_index[obj.src[m]] for m in obj.morphisms],
                "tgt": [obj_index[obj.tgt[m]] for m in obj.morphisms],
                "id_of": [mor_index[obj.id_of[o]] for o in obj.objects],
                "comp": sorted(
                    [mor_index[g], mor_index[f], mor_index[gf]] for (g, f), gf in obj.comp.items()
                ),
            }
        if isinstance(obj, RelCat):
            mor_index = {m: i for i, m in enumerate(obj.und.morphisms)}
            return {
                "t": "RelCat",
                "und": self.enc(obj.und),
                "weq": sorted(mor_index[m] for m in obj.weq),
                "line_dirs": self.enc(obj.line_dirs),
            }
        if isinstance(obj, Functor):
            tgt_obj = {o: i for i, o in enumerate(obj.target.objects)}
            tgt_mor = {m: i for i, m in enumerate(obj.target.morphisms)}
            return {
                "t": "Functor",
                "source": self.enc(obj.source),
                "target": self.enc(obj.target),
                "obj_map": [tgt_obj[obj.obj_map[o]] for o in obj.source.objects],
                "mor_map": [tgt_mor[obj.mor_map[m]] for m in obj.source.morphisms],
            }
        if isinstance(obj, NatTrans):
            cod_mor = {m: i for i, m in enumerate(obj.source.target.morphisms)}
            return {
                "t": "NatTrans",
                "source": self.enc(obj.source),
                "target": self.enc(obj.target),
                "components": [cod_mor[obj.components[o]] for o in obj.source.source.objects],
            }
        if isinstance(obj, Square):
            return self._tag("Square", top=obj.top, left=obj.left, right=obj.right, bottom=obj.bottom)
        if isinstance(obj, FibrationReport):
            return self._tag(
                "FibrationReport",
                functor=obj.functor,
                variant=obj.variant,
                verdict=obj.verdict,
                lifts=obj.lifts,
                split=obj.split,
                counterexample=obj.counterexample,
            )
        if isinstance(obj, WheCert):
            return self._tag(
                "WheCert",
                functor=obj.functor,
                kind=obj.kind,
                verdict=obj.verdict,
                degree=obj.degree,
                evidence=obj.evidence,
            )
        if isinstance(obj, HpbCert):
            return self._tag(
                "HpbCert",
                square=obj.square,
                degree=obj.degree,
                kind=obj.kind,
                verdict=obj.verdict,
                evidence=obj.evidence,
            )
        if isinstance(obj, HtacCert):
            return self._tag(
                "HtacCert",
                bound=obj.bound,
                degree=obj.degree,
                cells=obj.cells,
                verdict=obj.verdict,
                weakest_stratum=obj.weakest_stratum,
                relcat=getattr(obj, "_relcat", None),
            )
        if isinstance(obj, SegalCert):
            return self._tag(
                "SegalCert",
                n=obj.n,
                degree=obj.degree,
                front=obj.front,
                back=obj.back,
                front_strict=obj.front_strict,
                back_strict=obj.back_strict,
                verdict=obj.verdict,
            )
        if isinstance(obj, HoHomReport):
            return self._tag(
                "HoHomReport",
                x=obj.x,
                y=obj.y,
                bound=obj.bound,
                classes=obj.classes,
                stabilized=obj.stabilized,
                pair_verdicts=obj.pair_verdicts,
                relcat=getattr(obj, "_relcat", None),
            )
        if isinstance(obj, SaturationReport):
            return self._tag(
                "SaturationReport",
                bound=obj.bound,
                verdicts=obj.verdicts,
                witnesses=obj.witnesses,
                relcat=getattr(obj, "_relcat", None),
            )
        if isinstance(obj, CompletenessReport):
            return self._tag(
                "CompletenessReport",
                bound=obj.bound,
                degree=obj.degree,
                invertible=obj.invertible,
                weq=obj.weq,
                complete=obj.complete,
                discrepancy=obj.discrepancy,
                degeneracy_cert=obj.degeneracy_cert,
                relcat=getattr(obj, "_relcat", None),
            )
        raise InputParse(f"cannot serialize value of type {type(obj).__name__}")


class _Decoder:
    def __init__(self, defs):
        self.defs = defs
        self._memo = {}

    def dec(self, data):
        if data is None or isinstance(data, (bool, int, str)):
            return data
        if isinstance(data, list):
            return tuple(self.dec(x) for x in data)
        tag = data.get("t")
        if tag == "ref":
            return self.ref(data["i"])
        if tag == "map":
            return {self.dec(k): self.dec(v) for k, v in data["v"]}
        if tag == "set":
            return frozenset(self.dec(x) for x in data["v"])
        if tag == "ShapeMap":
            return ShapeMap(self.dec(data["src_dirs"]), self.dec(data["tgt_dirs"]), self.dec(data["node_images"]))
        if tag == "HomologySummary":
            return HomologySummary(data["degree"], self.dec(data["betti"]), self.dec(data["torsion"]))
        if tag == "ChainComplex":
            return ChainComplex(data["truncation"], self.dec(data["bases"]), self.dec(data["boundaries"]))
        raise InputParse(f"unknown serialized tag {tag!r}")

    def ref(self, index: int):
        if index in self._memo:
            return self._memo[index]
        try:
            data = self.defs[index]
        except (IndexError, TypeError) as exc:
            raise InputParse(f"dangling definition reference {index}") from exc
        value = self._dec_def(data)
        self._memo[index] = value
        return value

    def _dec_def(self, data):
        tag = data.get("t")
        if tag == "FinCat":
            objects = tuple(self.dec(o) for o in data["objects"])
            morphisms = tuple(self.dec(m) for m in data["morphisms"])
            src = {m: objects[i] for m, i in zip(morphisms, data["src"])}
            tgt = {m: objects[i] for m, i in zip(morphisms, data["tgt"])}
            id_of = {o: morphisms[i] for o, i in zip(objects, data["id_of"])}
            comp = {(morphisms[g], morphisms[f]): morphisms[gf] for g, f, gf in data["comp"]}
            return FinCat.build(objects, morphisms, src, tgt, id_of, comp, check="none")
        if tag == "RelCat":
            und = self.dec(data["und"])
            return RelCat(und, frozenset(und.morphisms[i] for i in data["weq"]), self.dec(data["line_dirs"]))
        if tag == "Functor":
            source, target = self.dec(data["source"]), self.dec(data["target"])
            return Functor(
                source,
                target,
                {o: target.objects[i] for o, i in zip(source.objects, data["obj_map"])},
                {m: target.morphisms[i] for m, i in zip(source.morphisms, data["mor_map"])},
            )
        if tag == "NatTrans":
            source, target = self.dec(data["source"]), self.dec(data["target"])
            codomain = source.target
            return NatTrans(
                source,
                target,
                {o: codomain.morphisms[i] for o, i in zip(source.source.objects, data["components"])},
            )
        if tag == "Square":
            return Square(self.dec(data["top"]), self.dec(data["left"]), self.dec(data["right"]), self.dec(data["bottom"]))
        if tag == "FibrationReport":
            return FibrationReport(
                self.dec(data["functor"]),
                data["variant"],
                data["verdict"],
                self.dec(data["lifts"]),
                data["split"],
                self.dec(data["counterexample"]),
            )
        if tag == "WheCert":
            return WheCert(
                self.dec(data["functor"]), data["kind"], data["verdict"], data["degree"], self.dec(data["evidence"])
            )
        if tag == "HpbCert":
            return HpbCert(
                self.dec(data["square"]), data["degree"], data["kind"], data["verdict"], self.dec(data["evidence"])
            )
        if tag == "HtacCert":
            return _attach(
                HtacCert(
                    data["bound"], data["degree"], self.dec(data["cells"]), data["verdict"], data["weakest_stratum"]
                ),
                self.dec(data["relcat"]),
            )
        if tag == "SegalCert":
            return SegalCert(
                data["n"],
                data["degree"],
                self.dec(data["front"]),
                self.dec(data["back"]),
                data["front_strict"],
                data["back_strict"],
                data["verdict"],
            )
        if tag == "HoHomReport":
            return _attach(
                HoHomReport(
                    self.dec(data["x"]),
                    self.dec(data["y"]),
                    data["bound"],
                    self.dec(data["classes"]),
                    data["stabilized"],
                    self.dec(data["pair_verdicts"]),
                ),
                self.dec(data["relcat"]),
            )
        if tag == "SaturationReport":
            return _attach(
                SaturationReport(data["bound"], self.dec(data["verdicts"]), self.dec(data["witnesses"])),
                self.dec(data["relcat"]),
            )
        if tag == "CompletenessReport":
            return _attach(
                CompletenessReport(
                    data["bound"],
                    data["degree"],
                    self.dec(data["invertible"]),
                    self.dec(data["weq"]),
                    data["complete"],
                    self.dec(data["discrepancy"]),
                    self.dec(data["degeneracy_cert"]),
                ),
                self.dec(data["relcat"]),
            )
        raise InputParse(f"unknown serialized tag {tag!r}")


def _attach(obj, rel):
    if rel is not None:
        object.__setattr__(obj, "_relcat", rel)
    return obj


def dumps(obj) -> str:
    """Deterministic document text: schema-tagged, key-sorted, newline-terminated."""
    enc = _Encoder()
    payload = enc.enc(obj)
    doc = {"schema": SCHEMA, "defs": enc.defs, "payload": payload}
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParse(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise InputParse(f"expected a document with schema {SCHEMA!r}")
    return _Decoder(doc.get("defs", [])).dec(doc["payload"])


# ---------------------------------------------------------------------------
# Verification of serialized certificates and reports
# ---------------------------------------------------------------------------


def verify_certificate(obj):
    """Recheck a deserialized certificate or report.

    Returns (consistent, verdict): consistent means the stored evidence
    re-validates exactly; verdict is the claim the object makes (None for
    plain reports without one).
    """
    if isinstance(obj, (WheCert, HpbCert, HtacCert, SegalCert, FibrationReport)):
        return bool(obj.recheck()), obj.verdict
    if isinstance(obj, CompletenessReport):
        return bool(obj.recheck()), obj.complete
    if isinstance(obj, (HoHomReport, SaturationReport)):
        return bool(obj.recheck()), None
    if isinstance(obj, HomologySummary):
        return True, None
    raise InputParse(f"cannot verify value of type {type(obj).__name__}")
