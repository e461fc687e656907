import pytest

from relcert.errors import ShapeMismatch
from relcert.fincat import compose_functors
from relcert.relcat import (
    ShapeMap,
    ZigzagType,
    dirs_of,
    enumerate_zigzags,
    identities_only,
    insertion_functor,
    make_relative,
    node_functor,
    normalize_zigzag_type,
    two_out_of_three,
    weq_relfun_line,
    weq_subcategory,
    zigzag_category,
    zigzag_shape,
)


def test_make_relative_closes_under_composition(c2of3):
    # generators (0,2) and (1,2) plus identities; nothing else composes to new weqs
    assert c2of3.weq == frozenset({(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)})
    c2of3.check()


def test_weq_subcategory_is_wide(c2of3):
    w = weq_subcategory(c2of3)
    assert w.objects == c2of3.und.objects
    assert len(w.morphisms) == 5
    w.validate()


def test_zigzag_type_normalization():
    assert normalize_zigzag_type([1, 2, 0, -1]).signs == (3, -1)
    assert dirs_of([-1, 2]) == (-1, 1, 1)
    with pytest.raises(Exception):
        ZigzagType((1, 2))  # signs must alternate


def test_zigzag_shape_weqs_point_leftward():
    shp = zigzag_shape([-1, 2])
    assert shp.line_dirs == (-1, 1, 1)
    assert (1, 0) in shp.weq and (1, 3) not in shp.weq
    shp.check()


def test_enumerate_zigzags_single_edge(c2of3):
    # a rightward edge is an arbitrary morphism: one zigzag per morphism
    zs = enumerate_zigzags(c2of3, (1,))
    assert len(zs) == len(c2of3.und.morphisms)
    # a leftward edge must be a weak equivalence
    zs_w = enumerate_zigzags(c2of3, (-1,))
    assert len(zs_w) == len(c2of3.weq)


def test_zigzag_category_endpoints(c2of3):
    cat = zigzag_category(c2of3, [-1, 1, -1], 0, 1)
    for (nodes, _edges) in cat.objects:
        assert nodes[0] == 0 and nodes[-1] == 1
    cat.validate()


def test_node_functor_evaluates(c2of3):
    lvl = weq_relfun_line(c2of3, (1,))
    dom = node_functor(lvl, c2of3, 0)
    cod = node_functor(lvl, c2of3, 1)
    dom.check()
    cod.check()
    for z in lvl.objects:
        assert dom.on_obj(z) == z[0][0]
        assert cod.on_obj(z) == z[0][1]


def test_shape_map_rejects_bad_leftward_image():
    with pytest.raises(ShapeMismatch):
        # leftward source edge mapped onto a rightward target edge
        ShapeMap((-1,), (1,), (1, 0))


def test_insert_then_compose_is_identity(c2of3):
    # inserting an identity edge and then merging it back is the identity functor
    before = [-1, 1, -1]
    for t, p in ((0, 1), (0, 0)):
        ins = insertion_functor(c2of3, before, ("insert-identity", p), [-1, -1, 1, -1], 0, 1)
        mid = [-1, -1, 1, -1]
        merge = insertion_functor(c2of3, mid, ("compose", t), before, 0, 1)
        comp = compose_functors(merge, ins)
        assert comp.obj_map == {z: z for z in comp.source.objects}
        assert comp.mor_map == {m: m for m in comp.source.morphisms}


def test_restrict_then_pad_is_identity(c2of3):
    pad = insertion_functor(c2of3, [1], ("pad",), [-1, 1, -1])
    restrict = insertion_functor(c2of3, [-1, 1, -1], ("restrict",), [1])
    comp = compose_functors(restrict, pad)
    assert comp.obj_map == {z: z for z in comp.source.objects}
    assert comp.mor_map == {m: m for m in comp.source.morphisms}


def test_pad_refuses_pinned_endpoints(c2of3):
    with pytest.raises(ShapeMismatch):
        insertion_functor(c2of3, [1], ("pad",), [-1, 1, -1], 0, 1)


def test_two_out_of_three(c2of3, walkiso):
    holds, witness = two_out_of_three(c2of3)
    assert not holds
    f, g, gf = witness
    flags = (f in c2of3.weq, g in c2of3.weq, gf in c2of3.weq)
    assert sum(flags) == 2
    assert two_out_of_three(identities_only(walkiso.und))[0]


def test_make_relative_saturates_generated_composites():
    from relcert.fincat import ordinal

    c = make_relative(ordinal(2), [(0, 1), (1, 2)])
    assert (0, 2) in c.weq
