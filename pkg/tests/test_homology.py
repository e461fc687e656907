import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from relcert.fincat import (
    constant_functor,
    discrete_category,
    identity_functor,
    ordinal,
    terminal_category,
)
from relcert.homology import (
    chain_map,
    composite_whe_certificate,
    find_contraction,
    homology,
    mapping_cone,
    nerve_complex,
    pi0,
    pi0_bijective,
    whe_certificate,
)


def oracle_homology(complex_, d):
    """Homology through degree d computed entirely inside sympy."""
    betti, torsion = [], []
    for n in range(d + 1):
        dim = len(complex_.basis(n))

        def rk(mat, rows, cols):
            if rows == 0 or cols == 0:
                return 0
            return sympy.Matrix(mat).rank()

        r_n = rk(complex_.boundary(n), len(complex_.basis(n - 1)) if n else 0, dim) if n else 0
        up = complex_.boundary(n + 1)
        r_up = rk(up, dim, len(complex_.basis(n + 1)))
        betti.append(dim - r_n - r_up)
        if dim and len(complex_.basis(n + 1)):
            s = sympy_snf(sympy.Matrix(up), domain=sympy.ZZ)
            diag = [abs(int(s[i, i])) for i in range(min(s.rows, s.cols))]
            torsion.append(tuple(e for e in diag if e > 1))
        else:
            torsion.append(())
    return tuple(betti), tuple(torsion)


def test_nerve_dd_zero_on_corpus(pt, arrow, walkiso, bz2cat, c2of3, shape_m1_2, htac_fail):
    for c in (pt, arrow, walkiso, bz2cat, c2of3, shape_m1_2, htac_fail):
        nerve_complex(c.und, 2).check_dd_zero()


def test_contractible_nerves(walkiso, c2of3):
    for und in (terminal_category(), ordinal(2), walkiso.und, c2of3.und):
        h = homology(nerve_complex(und, 3), 3)
        assert h.betti == (1, 0, 0, 0)
        assert h.torsion == ((), (), (), ())


def test_two_torsion_in_odd_degrees(bz2cat):
    h = homology(nerve_complex(bz2cat.und, 3), 3)
    assert h.betti == (1, 0, 0, 0)
    assert h.torsion == ((), (2,), (), (2,))


def test_homology_matches_sympy_oracle(pt, arrow, walkiso, bz2cat, c2of3, shape_m1_2, htac_fail):
    for c in (pt, arrow, walkiso, bz2cat, c2of3, shape_m1_2, htac_fail):
        k = nerve_complex(c.und, 2)
        h = homology(k, 2)
        assert (h.betti, h.torsion) == oracle_homology(k, 2)


def test_pi0_counts_components(htac_fail):
    assert len(pi0(discrete_category(("a", "b", "c")))) == 3
    assert len(pi0(ordinal(3))) == 1
    assert len(pi0(htac_fail.und)) == 1


def test_pi0_bijective_detects_merge():
    d2 = discrete_category((0, 1))
    t = terminal_category()
    merge = constant_functor(d2, t, "*")
    assert not pi0_bijective(merge)
    assert pi0_bijective(identity_functor(d2))


def test_cone_of_identity_is_acyclic(bz2cat):
    cm = chain_map(identity_functor(bz2cat.und), 2)
    cm.check_commutes()
    cone = mapping_cone(cm)
    cone.check_dd_zero()
    assert homology(cone, 2).vanishes_everywhere()


def test_find_contraction_terminal_object():
    witness = find_contraction(ordinal(2))
    assert witness == ("terminal-object", 2)


def test_whe_certificate_strata():
    c = ordinal(2)
    ident = whe_certificate(identity_functor(c))
    assert ident.kind == "exact-iso" and ident.verdict
    assert ident.recheck()

    collapse = constant_functor(c, terminal_category(), "*")
    cert = whe_certificate(collapse)
    assert cert.verdict
    assert cert.kind in ("nat-zigzag", "contraction")
    assert cert.recheck()


def test_whe_certificate_refusal(bz2cat):
    # collapsing the two-torsion example to the point is not a homology equivalence
    collapse = constant_functor(bz2cat.und, terminal_category(), "*")
    cert = whe_certificate(collapse, d=2, max_zigzag=0)
    assert not cert.verdict
    assert cert.kind == "homology-d-equivalence"
    assert cert.recheck()


def test_composite_certificate_round_trip():
    c = ordinal(1)
    ident = identity_functor(c)
    part = whe_certificate(ident)
    cert = composite_whe_certificate(ident, (part, part))
    assert cert.kind == "composite" and cert.verdict
    assert cert.recheck()
