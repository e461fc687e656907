import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcert.errors import InputParse, MissingComposite
from relcert.fincat import (
    FinCat,
    Functor,
    NatTrans,
    arrow_category,
    compose_functors,
    discrete_category,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    nat_trans_zigzag,
    opposite,
    ordinal,
    product,
    slice_category,
    terminal_category,
    validate_category,
)


def test_ordinal_composition_is_total():
    c = ordinal(3)
    c.validate()
    assert c.comp[((1, 3), (0, 1))] == (0, 3)
    assert len(c.objects) == 4
    assert len(c.morphisms) == 10


def test_validate_category_interchange_roundtrip():
    raw = {
        "objects": ["a", "b"],
        "morphisms": [
            {"id": "ida", "src": "a", "tgt": "a"},
            {"id": "idb", "src": "b", "tgt": "b"},
            {"id": "f", "src": "a", "tgt": "b"},
        ],
        "identities": {"a": "ida", "b": "idb"},
        "composition": [],
    }
    c = validate_category(raw)
    assert c.hom("a", "b") == ["f"]


def test_validate_category_missing_composite():
    raw = {
        "objects": [0, 1, 2],
        "morphisms": [
            {"id": "i0", "src": 0, "tgt": 0},
            {"id": "i1", "src": 1, "tgt": 1},
            {"id": "i2", "src": 2, "tgt": 2},
            {"id": "f", "src": 0, "tgt": 1},
            {"id": "g", "src": 1, "tgt": 2},
        ],
        "identities": {0: "i0", 1: "i1", 2: "i2"},
        "composition": [],
    }
    with pytest.raises(MissingComposite):
        validate_category(raw)


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3))
@settings(max_examples=16, deadline=None)
def test_product_size_formula(n, m):
    c, d = ordinal(n), ordinal(m)
    p, pr1, pr2 = product(c, d)
    assert len(p.objects) == len(c.objects) * len(d.objects)
    assert len(p.morphisms) == len(c.morphisms) * len(d.morphisms)
    pr1.check()
    pr2.check()


def test_opposite_involution():
    c = ordinal(2)
    assert opposite(opposite(c)) == c


def test_slice_and_coslice_of_ordinal():
    c = ordinal(2)
    over, proj = slice_category(c, 2, "over")
    # every object of [2] maps to 2, so the slice has three objects and a terminal one
    assert len(over.objects) == 3
    proj.check()
    under, proj_u = slice_category(c, 0, "under")
    assert len(under.objects) == 3
    proj_u.check()


def test_arrow_category_counts(c2of3):
    aw, dom, cod = arrow_category(c2of3.und)
    assert len(aw.objects) == len(c2of3.und.morphisms)
    dom.check()
    cod.check()


def test_functor_check_rejects_non_functorial():
    c = ordinal(1)
    d = discrete_category(("x", "y"))
    bad = Functor(
        c,
        d,
        {0: "x", 1: "y"},
        {(0, 0): ("id", "x"), (1, 1): ("id", "y"), (0, 1): ("id", "x")},
    )
    with pytest.raises(InputParse):
        bad.check()


def test_enumerate_functors_to_terminal():
    c = ordinal(2)
    t = terminal_category()
    assert len(enumerate_functors(c, t)) == 1
    # empty target: no functors from a nonempty source
    empty = FinCat.build((), (), {}, {}, {}, {})
    assert enumerate_functors(c, empty) == []


def test_nat_trans_zigzag_identity_path():
    c = ordinal(1)
    f = identity_functor(c)
    assert nat_trans_zigzag(f, f, 2) == ()


def test_nat_trans_between_constant_functors():
    c = ordinal(1)
    lo = Functor(c, c, {0: 0, 1: 0}, {m: (0, 0) for m in c.morphisms})
    hi = Functor(c, c, {0: 1, 1: 1}, {m: (1, 1) for m in c.morphisms})
    nts = enumerate_nat_trans(lo, hi)
    assert len(nts) == 1
    nts[0].check()
    assert enumerate_nat_trans(hi, lo) == []


def test_compose_functors_order():
    c = ordinal(1)
    shift = Functor(c, c, {0: 1, 1: 1}, {m: (1, 1) for m in c.morphisms})
    comp = compose_functors(shift, identity_functor(c))
    assert comp.obj_map == shift.obj_map
