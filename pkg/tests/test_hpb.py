import pytest

from relcert.errors import EdgeMismatch
from relcert.fincat import (
    Functor,
    arrow_category,
    constant_functor,
    identity_functor,
    ordinal,
    product,
    terminal_category,
)
from relcert.homology import whe_certificate
from relcert.hpb import (
    Square,
    is_strict_pullback,
    parallel_whe_certificate,
    paste_certificates,
    product_certificate,
    pullback_square,
    strict_pullback,
    theorem_b_certificate,
    transport_certificate,
)


def _bang(c):
    return constant_functor(c, terminal_category(), "*")


def test_strict_pullback_of_product():
    c, d = ordinal(1), ordinal(2)
    t = terminal_category()
    cat, pr1, pr2 = strict_pullback(_bang(c), _bang(d))
    assert len(cat.objects) == len(c.objects) * len(d.objects)
    sq = pullback_square(_bang(c), _bang(d))
    sq.check()
    assert is_strict_pullback(sq)


def test_is_strict_pullback_rejects_shrunk_corner():
    c = ordinal(1)
    t = terminal_category()
    # replace the pullback corner with just the diagonal: not a pullback
    diag = Square(
        top=identity_functor(c),
        left=identity_functor(c),
        right=_bang(c),
        bottom=_bang(c),
    )
    diag.check()
    assert not is_strict_pullback(diag)


def test_product_certificate(c2of3):
    pcat, pr1, pr2 = product(c2of3.und, ordinal(1))
    sq = Square(top=pr2, left=pr1, right=_bang(ordinal(1)), bottom=_bang(c2of3.und))
    cert = product_certificate(sq)
    assert cert.kind == "product" and cert.verdict
    assert cert.recheck()


def test_theorem_b_on_arrow_category(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    sq = pullback_square(identity_functor(c2of3.und), dom)
    cert = theorem_b_certificate(sq, "fibration")
    assert cert.verdict
    assert cert.evidence["report"].split
    assert all(fc.verdict for fc in cert.evidence["fiber_certs"].values())
    assert cert.recheck()


def test_theorem_b_refuses_non_fibration(shape_m1_2):
    aw, dom, cod = arrow_category(shape_m1_2.und)
    sq = pullback_square(identity_functor(shape_m1_2.und), dom)
    cert = theorem_b_certificate(sq, "opfibration")
    assert not cert.verdict
    assert cert.evidence["failure"] == "right-leg-not-a-fibration"
    assert cert.recheck()


def test_paste_and_converse_paste_round_trip(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    base = c2of3.und
    inner = pullback_square(identity_functor(base), dom)
    outer = Square(
        top=identity_functor(inner.top_left),
        left=identity_functor(inner.top_left),
        right=inner.top,
        bottom=inner.top,
    )
    c_inner = theorem_b_certificate(inner, "fibration")
    c_outer = parallel_whe_certificate(
        outer, "vertical", certs=(whe_certificate(outer.left), whe_certificate(outer.right))
    )
    rect = paste_certificates(c_outer, c_inner, "vertical")
    assert rect.kind == "pasted" and rect.verdict
    assert rect.recheck()
    back = paste_certificates(rect, c_inner, "converse-vertical", remaining=outer.__class__(
        top=outer.top, left=outer.left, right=outer.right, bottom=outer.bottom
    ))
    assert back.kind == "converse-pasted" and back.verdict
    assert back.recheck()


def test_converse_paste_rejects_wrong_remaining(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    base = c2of3.und
    inner = pullback_square(identity_functor(base), dom)
    c_inner = theorem_b_certificate(inner, "fibration")
    # a remaining square that does not re-paste to the rectangle is refused
    ident_sq = Square(
        top=identity_functor(base),
        left=identity_functor(base),
        right=identity_functor(base),
        bottom=identity_functor(base),
    )
    ident_cert = parallel_whe_certificate(ident_sq, "vertical")
    with pytest.raises(EdgeMismatch):
        paste_certificates(c_inner, ident_cert, "converse-vertical", remaining=ident_sq)


def test_transport_across_identity_cube():
    c = ordinal(1)
    t = terminal_category()
    sq = Square(
        top=identity_functor(c), left=identity_functor(c), right=identity_functor(c), bottom=identity_functor(c)
    )
    front = parallel_whe_certificate(sq, "vertical")
    ident = whe_certificate(identity_functor(c))
    cert = transport_certificate(front, sq, (ident, ident, ident, ident))
    assert cert.kind == "transported" and cert.verdict
    assert cert.recheck()
