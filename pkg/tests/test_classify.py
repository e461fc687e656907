import pytest

from relcert.classify import (
    classification_homology_table,
    classification_level,
    completeness_report,
    ho_homset,
    hom_space_certificate,
    htac_certificate,
    identity_insertion_functors,
    pad_functors,
    saturation_report,
    segal_certificate,
)
from relcert.fincat import compose_functors, identity_functor
from relcert.relcat import enumerate_zigzags


def test_classification_levels(c2of3):
    lvl0 = classification_level(c2of3, 0)
    assert len(lvl0.objects) == len(c2of3.und.objects)
    lvl1 = classification_level(c2of3, 1)
    assert len(lvl1.objects) == len(c2of3.und.morphisms)
    lvl1.validate()


def test_classification_homology_table(c2of3):
    table = classification_homology_table(c2of3, 2, 2)
    assert len(table) == 3
    for n, summary in table:
        # each level of this contractible-weq example is a disjoint union of
        # contractible pieces: free H_0, nothing above
        assert summary.is_trivial_above_zero()


def test_pad_functors_strong_certificates(c2of3):
    pair = pad_functors(c2of3, (1,))
    assert pair.pad_cert.verdict and pair.pad_cert.recheck()
    assert pair.restrict_cert.verdict and pair.restrict_cert.recheck()
    rt = compose_functors(pair.restrict, pair.pad)
    assert rt.obj_map == identity_functor(rt.source).obj_map


def test_identity_insertion_strong_certificates(c2of3):
    pair = identity_insertion_functors(c2of3, (-1, 1, -1), 0)
    assert pair.insert_cert.verdict and pair.insert_cert.recheck()
    assert pair.merge_cert.verdict and pair.merge_cert.recheck()
    rt = compose_functors(pair.merge, pair.insert)
    assert rt.obj_map == identity_functor(rt.source).obj_map
    assert rt.mor_map == identity_functor(rt.source).mor_map


def test_htac_certificate_passes_on_max_poset(c2of3):
    cert = htac_certificate(c2of3, bound=1, d=2)
    assert cert.verdict
    assert cert.weakest_stratum in ("exact-iso", "nat-zigzag", "contraction")
    assert cert.recheck()


def test_htac_certificate_refuses(htac_fail):
    cert = htac_certificate(htac_fail, bound=2, d=2)
    assert not cert.verdict
    assert cert.weakest_stratum == "homology-d-equivalence"
    assert cert.recheck()
    failing = [key for key, cell in cert.cells.items() if not cell.verdict]
    assert failing
    assert all(k >= 1 and l >= 1 for (k, l, _x, _y) in failing)


def test_hom_space_certificate(c2of3):
    cert = hom_space_certificate(c2of3, 0, 1, d=2)
    assert cert.kind == "pasted" and cert.verdict
    corner = cert.square.top_left
    zigzags = enumerate_zigzags(c2of3, (-1, 1, -1), 0, 1)
    assert len(corner.objects) == len(zigzags)
    assert cert.recheck()


def test_hom_space_refusal_cites_prerequisite(htac_fail):
    bad = htac_certificate(htac_fail, bound=1, d=2)
    cert = hom_space_certificate(htac_fail, "X", "Y", d=2, htac=bad)
    assert cert.kind == "refused" and not cert.verdict
    assert cert.evidence["failure"] == "homotopical-three-arrow-calculus"
    assert cert.evidence["prerequisite"] is bad
    assert cert.recheck()


def test_segal_certificate(c2of3):
    cert = segal_certificate(c2of3, 1, d=2)
    assert cert.verdict
    assert cert.front_strict and cert.back_strict
    assert cert.back.kind == "transported"
    assert cert.recheck()


def test_ho_homset_walking_isomorphism(walkiso):
    report = ho_homset(walkiso, "a", "b", bound=2)
    # every word between the two objects collapses to a single class
    assert len(report.classes) == 1
    assert report.stabilized
    w1 = (("fwd", "f"),)
    assert report.verdict(w1, w1) == "equal"


def test_ho_homset_distinct_classes(c2of3):
    report = ho_homset(c2of3, 0, 0, bound=2)
    assert report.class_of(()) is not None
    assert report.verdict((), ()) == "equal"


def test_saturation_walkiso_not_saturated(walkiso):
    report = saturation_report(walkiso, bound=1)
    assert set(report.violations) == {"f", "g"}
    assert report.witnesses["f"] == (("fwd", "g"),)
    assert report.witnesses["g"] == (("fwd", "f"),)
    assert report.recheck()


def test_saturation_c2of3_is_quiet(c2of3):
    report = saturation_report(c2of3, bound=4)
    assert report.violations == ()
    assert report.verdicts[(0, 1)] == "inconclusive-at-bound"
    assert report.verdicts[(0, 2)] == "weq"


def test_completeness_c2of3(c2of3):
    report = completeness_report(c2of3, bound=4, d=2)
    assert report.complete
    assert report.invertible == report.weq
    assert report.degeneracy_cert is not None and report.degeneracy_cert.verdict
    assert report.recheck()


def test_completeness_walkiso_discrepancy(walkiso):
    report = completeness_report(walkiso, bound=2, d=2)
    assert not report.complete
    assert set(report.discrepancy) == {"f", "g"}
    assert report.degeneracy_cert is None
    assert report.recheck()
