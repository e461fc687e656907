"""Acceptance gate: one pass/fail line per criterion (run with -s to see them).

Each test checks one externally-stated guarantee of the package against
independent oracles or exhaustively-verified witnesses and prints a single
summary line.
"""

import json

import sympy
from click.testing import CliRunner
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from relcert import corpus, serialize
from relcert.classify import (
    completeness_report,
    hom_space_certificate,
    htac_certificate,
    saturation_report,
    segal_certificate,
)
from relcert.cli import main as cli_main
from relcert.fincat import (
    arrow_category,
    compose_functors,
    constant_functor,
    enumerate_functors,
    identity_functor,
    product,
    slice_category,
    terminal_category,
)
from relcert.groth import check_fibration, fiber, verify_canonical_iso
from relcert.homology import homology, nerve_complex
from relcert.hpb import Square, product_certificate
from relcert.relcat import (
    enumerate_zigzags,
    insertion_functor,
    node_functor,
    two_out_of_three,
    weq_relfun_line,
)


def _report(num, label, ok):
    print(f"criterion {num:2d} [{label}]: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} failed: {label}"


def _is_identity(f):
    return f.obj_map == {x: x for x in f.source.objects} and f.mor_map == {
        m: m for m in f.source.morphisms
    }


def _isomorphic(a, b):
    if len(a.objects) != len(b.objects) or len(a.morphisms) != len(b.morphisms):
        return False
    return any(f.is_isomorphism() for f in enumerate_functors(a, b))


def test_criterion_1_exact_rewrite_identities():
    ok = True
    for name in corpus.names():
        c = corpus.load(name)
        merge = insertion_functor(c, (-1, -1), ("compose", 0), (-1,))
        for p in (0, 1):
            ins = insertion_functor(c, (-1,), ("insert-identity", p), (-1, -1))
            ok = ok and _is_identity(compose_functors(merge, ins))
        pad = insertion_functor(c, (1,), ("pad",), (-1, 1, -1))
        restrict = insertion_functor(c, (-1, 1, -1), ("restrict",), (1,))
        ok = ok and _is_identity(compose_functors(restrict, pad))
    _report(1, "identity-insertion and pad/restrict round trips are exact", ok)


def test_criterion_2_homology_oracle():
    expected = {
        "pt": ((1, 0, 0, 0), ((), (), (), ())),
        "walkiso": ((1, 0, 0, 0), ((), (), (), ())),
        "bz2": ((1, 0, 0, 0), ((), (2,), (), (2,))),
    }
    ok = True
    for name, (betti, torsion) in expected.items():
        k = nerve_complex(corpus.load(name).und, 3)
        h = homology(k, 3)
        ok = ok and h.betti == betti and h.torsion == torsion
        # independent oracle: recompute every rank and divisor chain in sympy
        for n in range(4):
            dim = len(k.basis(n))
            up = sympy.Matrix(k.boundary(n + 1)) if dim and k.basis(n + 1) else None
            r_n = sympy.Matrix(k.boundary(n)).rank() if n and dim else 0
            r_up = up.rank() if up is not None else 0
            ok = ok and betti[n] == dim - r_n - r_up
            if up is not None:
                s = sympy_snf(up, domain=sympy.ZZ)
                diag = [abs(int(s[i, i])) for i in range(min(s.rows, s.cols))]
                ok = ok and tuple(e for e in diag if e > 1) == torsion[n]
            else:
                ok = ok and torsion[n] == ()
    _report(2, "nerve homology matches the Smith-normal-form oracle", ok)


def test_criterion_3_arrow_category_fibrations():
    c = corpus.load("c2of3")
    aw, dom, cod = arrow_category(c.und)
    rd = check_fibration(dom, "fibration")
    rc = check_fibration(cod, "opfibration")
    ok = rd.verdict and rd.split and rc.verdict and rc.split
    for b in c.und.objects:
        under, _ = slice_category(c.und, b, "under")
        over, _ = slice_category(c.und, b, "over")
        ok = ok and _isomorphic(fiber(dom, b), under) and _isomorphic(fiber(cod, b), over)
    _report(3, "arrow-category endpoint evaluations are split with (co)slice fibers", ok)


def test_criterion_4_two_sided_gluing_and_endpoint_fibrations():
    c = corpus.load("c2of3")
    ok = verify_canonical_iso(c, (-1, 1, -1))
    lvl = weq_relfun_line(c, (-1, 1, -1))
    rd = check_fibration(node_functor(lvl, c, 0), "opfibration")
    rc = check_fibration(node_functor(lvl, c, 3), "fibration")
    ok = ok and rd.verdict and rd.split and rc.verdict and rc.split
    _report(4, "two-sided gluing iso and endpoint split (op)fibrations", ok)


def test_criterion_5_counterexample_and_htac():
    c = corpus.load("c2of3")
    holds, witness = two_out_of_three(c)
    ok = not holds and witness == ((0, 1), (1, 2), (0, 2))
    cert = htac_certificate(c, bound=2, d=2)
    ok = ok and cert.verdict and cert.recheck()
    for cell in cert.cells.values():
        ok = ok and cell.verdict
        if cell.kind == "contraction":
            ok = ok and cell.evidence["source_contraction"][0] == "terminal-object"
    _report(5, "2-of-3 counterexample plus three-arrow calculus via maxima", ok)


def test_criterion_6_product_square_certificate():
    c = corpus.load("walkiso")
    pcat, pr1, pr2 = product(c.und, c.und)
    t = terminal_category()
    sq = Square(
        top=pr2,
        left=pr1,
        right=constant_functor(c.und, t, "*"),
        bottom=constant_functor(c.und, t, "*"),
    )
    cert = product_certificate(sq)
    ok = cert.kind == "product" and cert.verdict and cert.recheck()
    _report(6, "product square over the point receives a certificate", ok)


def test_criterion_7_segal_certificate():
    cert = segal_certificate(corpus.load("c2of3"), 1, d=2)
    ok = cert.verdict and cert.front_strict and cert.back_strict and cert.recheck()
    corners = cert.back.evidence["corners"]
    strong = ("exact-iso", "nat-zigzag", "contraction")
    # the three lemma-backed connecting arrows are strong; the composite's
    # outer factors (pad and identity insertion) are strong as well
    ok = ok and corners[1].kind in strong and corners[2].kind in strong and corners[3].kind in strong
    ok = ok and corners[0].kind == "composite"
    factors = corners[0].evidence["factors"]
    ok = ok and factors[0].kind in strong and factors[-1].kind in strong
    _report(7, "level gluing certified with strict faces and strong obliques", ok)


def test_criterion_8_hom_space_certificate():
    c = corpus.load("c2of3")
    cert = hom_space_certificate(c, 0, 1, d=2)
    ok = cert.verdict and cert.kind == "pasted" and cert.recheck()
    corner = cert.square.top_left
    zigzags = enumerate_zigzags(c, (-1, 1, -1), 0, 1)
    ok = ok and len(corner.objects) == len(zigzags) == 2 and len(corner.morphisms) == 3
    # the corner is a poset: at most one ladder between any two zigzags
    for a in corner.objects:
        for b in corner.objects:
            ok = ok and len(corner.hom(a, b)) <= 1
    _report(8, "pinned hom-space certified as a homotopy pullback", ok)


def test_criterion_9_saturation_and_completeness():
    walkiso = corpus.load("walkiso")
    sat = saturation_report(walkiso, bound=1)
    ok = set(sat.violations) == {"f", "g"}
    ok = ok and sat.witnesses["f"] == (("fwd", "g"),) and sat.witnesses["g"] == (("fwd", "f"),)
    comp = completeness_report(corpus.load("c2of3"), bound=4, d=2)
    ok = ok and comp.complete and comp.degeneracy_cert is not None and comp.recheck()
    _report(9, "non-saturation witnessed at L=1 and completeness at (4,2)", ok)


def test_criterion_10_deterministic_json(tmp_path):
    runner = CliRunner()
    path = str(corpus.path("c2of3"))
    commands = [
        ["nerve-homology", path, "--d", "2"],
        ["check-fibration", path, "--leg", "dom"],
        ["saturation", path, "--L", "4"],
        ["htac", path, "--K", "1", "--jobs", "JOBS"],
        ["hom-space", path, "--src", "0", "--tgt", "1", "--jobs", "JOBS"],
    ]
    ok = True
    for i, cmd in enumerate(commands):
        outputs = []
        for run, jobs in enumerate(("1", "4", "1")):
            out = tmp_path / f"r{i}-{run}.json"
            args = [jobs if a == "JOBS" else a for a in cmd] + ["--format", "json", "--out", str(out)]
            result = runner.invoke(cli_main, args)
            ok = ok and result.exit_code == 0
            outputs.append(out.read_bytes())
        ok = ok and outputs[0] == outputs[1] == outputs[2]
    _report(10, "JSON reports byte-identical across runs and --jobs widths", ok)


def test_criterion_11_goldens_self_contained():
    runner = CliRunner()
    ok = True
    for name in corpus.names():
        consistent, _verdict = serialize.verify_certificate(corpus.load_golden(name))
        ok = ok and consistent
        result = runner.invoke(cli_main, ["verify", str(corpus.golden_path(name))])
        ok = ok and result.exit_code == 0
    _report(11, "every golden certificate re-validates from its evidence", ok)
