import pytest

from relcert.errors import NotAFibration
from relcert.fincat import arrow_category, enumerate_functors, ordinal, slice_category
from relcert.groth import (
    check_fibration,
    constant_diagram,
    fiber,
    transition_functor,
    two_sided_grothendieck,
    verify_canonical_iso,
    zigzag_bifunctor,
)
from relcert.relcat import node_functor, weq_relfun_line


def _isomorphic(a, b):
    """Exhaustive isomorphism search between two small categories."""
    if len(a.objects) != len(b.objects) or len(a.morphisms) != len(b.morphisms):
        return False
    return any(f.is_isomorphism() for f in enumerate_functors(a, b))


def test_dom_on_arrow_category_is_split_fibration(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    report = check_fibration(dom, "fibration")
    assert report.verdict and report.split
    assert report.counterexample is None
    assert report.recheck()
    # strict fibers of dom are the coslices
    for b in c2of3.und.objects:
        under, _ = slice_category(c2of3.und, b, "under")
        assert _isomorphic(fiber(dom, b), under)


def test_cod_on_arrow_category_is_split_opfibration(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    report = check_fibration(cod, "opfibration")
    assert report.verdict and report.split
    for b in c2of3.und.objects:
        over, _ = slice_category(c2of3.und, b, "over")
        assert _isomorphic(fiber(cod, b), over)


def test_dom_on_arrow_category_is_not_opfibration(shape_m1_2):
    # pushing an arrow forward along its source needs pushouts the poset lacks
    aw, dom, cod = arrow_category(shape_m1_2.und)
    report = check_fibration(dom, "opfibration")
    assert not report.verdict
    assert report.counterexample is not None
    assert report.recheck()


def test_transition_functors_compose_on_ordinal():
    aw, dom, _ = arrow_category(ordinal(2))
    report = check_fibration(dom, "fibration")
    assert report.verdict and report.split
    t = transition_functor(dom, (0, 1), report)
    t.check()
    assert t.source == fiber(dom, 1) and t.target == fiber(dom, 0)
def test_transition_functor_refuses_negative_report(shape_m1_2):
    aw, dom, _ = arrow_category(shape_m1_2.und)
    bad = check_fibration(dom, "opfibration")
    assert not bad.verdict
    with pytest.raises(NotAFibration):
        transition_functor(dom, "w", bad)


def test_two_sided_with_constant_diagrams_recovers_base():
    base = ordinal(1)
    total, proj = two_sided_grothendieck(
        constant_diagram(base, "contravariant"), constant_diagram(base, "covariant")
    )
    proj.check()
    assert len(total.objects) == len(base.objects)
    assert len(total.morphisms) == len(base.morphisms)
    assert _isomorphic(total, base)


def test_zigzag_bifunctor_is_strict(c2of3):
    bif = zigzag_bifunctor(c2of3, [-1, 1, -1])
    bif.check()
    # value at (x, y) is the pinned zigzag category
    assert set(bif.values) == {(x, y) for x in c2of3.und.objects for y in c2of3.und.objects}


def test_canonical_iso_two_sided_gluing(c2of3):
    assert verify_canonical_iso(c2of3, [-1, 1, -1])


def test_node_evaluation_is_opfibration_on_weq_line(c2of3):
    lvl = weq_relfun_line(c2of3, (-1, 1, -1))
    dom = node_functor(lvl, c2of3, 0)
    report = check_fibration(dom, "opfibration")
    assert report.verdict and report.split
    cod = node_functor(lvl, c2of3, 3)
    report_c = check_fibration(cod, "fibration")
    assert report_c.verdict and report_c.split
