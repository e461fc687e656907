"""Batch front end: load relative categories, run constructions and
certificates, and emit deterministic text or JSON reports.

Exit codes: 0 on pass/success, 1 on a refusal or failed verdict, 2 on
input or size-budget errors.  JSON output is byte-stable for a fixed
input and configuration, including across --jobs widths.
"""

from __future__ import annotations

import json
import sys

import click

from . import budget, classify, serialize
from .errors import RelcertError
from .fincat import arrow_category
from .groth import check_fibration, verify_canonical_iso
from .homology import homology, nerve_complex
from .relcat import (
    dirs_of,
    enumerate_zigzags,
    node_functor,
    two_out_of_three,
    weq_relfun_line,
)


class _Failure(Exception):
    """A computed refusal or failed verdict (exit code 1)."""


def _parse_label(text: str):
    """A CLI object label: JSON when it parses (arrays become tuples),
    otherwise the raw string."""

    def fix(v):
        if isinstance(v, list):
            return tuple(fix(x) for x in v)
        return v

    try:
        return fix(json.loads(text))
    except json.JSONDecodeError:
        return text


def _parse_shape(text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raise click.BadParameter(f"zigzag type must be a JSON integer array, got {text!r}")
    if not isinstance(raw, list) or not all(isinstance(v, int) for v in raw):
        raise click.BadParameter("zigzag type must be a JSON integer array")
    return tuple(raw)


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise RelcertError(f"{path} is not valid JSON: {exc}")
    return serialize.relcat_from_input_data(raw)


def _emit(payload, fmt: str, out: str | None, text_lines):
    if fmt == "json":
        body = serialize.dumps(payload)
    else:
        body = "".join(line + "\n" for line in text_lines)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _run(workload):
    """Run a subcommand body with the contract's exit-code mapping."""
    try:
        workload()
    except _Failure as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    except RelcertError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


_FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
_OUT = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report to a file.")
_JOBS = click.option("--jobs", type=int, default=1, show_default=True, help="Parallel workers.")
_DEGREE = click.option("--d", "d", type=int, default=2, show_default=True, help="Homological truncation degree.")


@click.group()
def main():
    """Certified homotopy-theoretic constructions on finite relative categories."""


def _with_budget(budget_value, work):
    if budget_value is not None:
        def wrapped():
            with budget.limit(budget_value):
                work()

        _run(wrapped)
    else:
        _run(work)


def _budget_cmd(fn):
    """Decorator stack shared by all report-producing subcommands."""
    fn = click.option("--budget", "budget_", type=int, default=None, help="Size budget (objects; morphisms get 10x).")(fn)
    fn = _OUT(fn)
    fn = _FORMAT(fn)
    return fn


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_budget_cmd
def validate(path, fmt, out, budget_):
    """Parse and fully validate a relative-category input file."""

    def work():
        c = _load(path)
        c.und.validate()
        c.check()
        holds, witness = two_out_of_three(c)
        _emit(
            c,
            fmt,
            out,
            [
                f"valid: {len(c.und.objects)} objects, {len(c.und.morphisms)} morphisms, "
                f"{len(c.weq)} weak equivalences",
                f"two-out-of-three: {holds}" + (f" (witness {witness})" if witness else ""),
            ],
        )

    _with_budget(budget_, work)


@main.command("nerve-homology")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_DEGREE
@_budget_cmd
def nerve_homology(path, d, fmt, out, budget_):
    """Nerve homology of the underlying category through degree --d."""

    def work():
        c = _load(path)
        summary = homology(nerve_complex(c.und, d), d)
        _emit(summary, fmt, out, [f"H_{n}: {_h_text(summary, n)}" for n in range(d + 1)])

    _with_budget(budget_, work)


def _h_text(summary, n):
    parts = ["Z"] * summary.betti[n] + [f"Z/{t}" for t in summary.torsion[n]]
    return " + ".join(parts) if parts else "0"


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--shape", required=True, help="Zigzag type as a JSON integer array, e.g. [-1,1,-1].")
@click.option("--src", "src_label", default=None, help="Pin the first node object.")
@click.option("--tgt", "tgt_label", default=None, help="Pin the last node object.")
@_budget_cmd
def zigzag(path, shape, src_label, tgt_label, fmt, out, budget_):
    """Enumerate zigzags of a given type, optionally pinned at the ends."""

    def work():
        c = _load(path)
        dirs = dirs_of(_parse_shape(shape))
        x = _parse_label(src_label) if src_label is not None else None
        y = _parse_label(tgt_label) if tgt_label is not None else None
        zigzags = enumerate_zigzags(c, dirs, x, y)
        _emit(tuple(zigzags), fmt, out, [f"{len(zigzags)} zigzags"] + [f"  {z}" for z in zigzags])

    _with_budget(budget_, work)


@main.command("check-fibration")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--leg", type=click.Choice(["dom", "codom"]), required=True)
@click.option("--shape", default=None, help="Check the evaluation leg on zigzags of this type instead.")
@_budget_cmd
def check_fibration_cmd(path, leg, shape, fmt, out, budget_):
    """Check a source/target evaluation functor for the (op)fibration property.

    Without --shape, evaluates the arrow category of the underlying
    category (dom is checked as a fibration, codom as an opfibration).
    With --shape, evaluates the endpoint of the category of zigzags and
    weq ladders (dom as an opfibration, codom as a fibration).
    """

    def work():
        c = _load(path)
        if shape is None:
            aw, a_dom, a_codom = arrow_category(c.und)
            functor = a_dom if leg == "dom" else a_codom
            variant = "fibration" if leg == "dom" else "opfibration"
        else:
            dirs = dirs_of(_parse_shape(shape))
            cat = weq_relfun_line(c, dirs)
            node = 0 if leg == "dom" else len(dirs)
            functor = node_functor(cat, c, node)
            variant = "opfibration" if leg == "dom" else "fibration"
        report = check_fibration(functor, variant)
        _emit(
            report,
            fmt,
            out,
            [
                f"{leg}: {variant} verdict={report.verdict} split={report.split}"
                + (f" counterexample={report.counterexample}" if report.counterexample else "")
            ],
        )
        if not report.verdict:
            raise _Failure(f"{leg} is not a {variant}")

    _with_budget(budget_, work)


@main.command("two-sided")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--shape", required=True, help="Zigzag type as a JSON integer array.")
@_budget_cmd
def two_sided(path, shape, fmt, out, budget_):
    """Verify the canonical isomorphism between the two-sided gluing of
    pinned zigzag categories and the directly-enumerated category."""

    def work():
        c = _load(path)
        dirs = _parse_shape(shape)
        ok = verify_canonical_iso(c, dirs)
        _emit(ok, fmt, out, [f"canonical-iso: {ok}"])
        if not ok:
            raise _Failure("the canonical comparison functor is not an isomorphism")

    _with_budget(budget_, work)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--K", "bound", type=int, default=2, show_default=True, help="Cell bound for (k, l).")
@_DEGREE
@_JOBS
@_budget_cmd
def htac(path, bound, d, jobs, fmt, out, budget_):
    """Certify the homotopical three-arrow calculus up to the cell bound."""

    def work():
        c = _load(path)
        cert = classify.htac_certificate(c, bound, d, jobs=jobs)
        failing = tuple(k for k, v in sorted(cert.cells.items()) if not v.verdict)
        _emit(
            cert,
            fmt,
            out,
            [
                f"htac(K={bound}, d={d}): verdict={cert.verdict} weakest-stratum={cert.weakest_stratum}",
            ]
            + [f"  failing cell {k}" for k in failing],
        )
        if not cert.verdict:
            raise _Failure(f"three-arrow calculus refused at cells {failing}")

    _with_budget(budget_, work)


@main.command("hom-space")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--src", "src_label", required=True)
@click.option("--tgt", "tgt_label", required=True)
@_DEGREE
@_JOBS
@_budget_cmd
def hom_space(path, src_label, tgt_label, d, jobs, fmt, out, budget_):
    """Certify the homotopy-pullback description of a pinned hom-space."""

    def work():
        c = _load(path)
        cert = classify.hom_space_certificate(c, _parse_label(src_label), _parse_label(tgt_label), d, jobs=jobs)
        _emit(cert, fmt, out, [f"hom-space(d={d}): kind={cert.kind} verdict={cert.verdict}"])
        if not cert.verdict:
            raise _Failure(f"hom-space certificate refused: {cert.evidence.get('failure')}")

    _with_budget(budget_, work)


@main.command("classify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=int, default=2, show_default=True, help="Highest level.")
@_DEGREE
@_budget_cmd
def classify_cmd(path, n, d, fmt, out, budget_):
    """Homology of the classification levels 0..n at degree d."""

    def work():
        c = _load(path)
        table = classify.classification_homology_table(c, n, d)
        _emit(
            tuple(table),
            fmt,
            out,
            [f"level {lvl}: " + ", ".join(f"H_{k}={_h_text(s, k)}" for k in range(d + 1)) for lvl, s in table],
        )

    _with_budget(budget_, work)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=int, default=1, show_default=True, help="Gluing level.")
@_DEGREE
@_JOBS
@_budget_cmd
def segal(path, n, d, jobs, fmt, out, budget_):
    """Certify that level n+1 is the homotopy pullback of levels n and 1."""

    def work():
        c = _load(path)
        cert = classify.segal_certificate(c, n, d, jobs=jobs)
        _emit(
            cert,
            fmt,
            out,
            [
                f"segal(n={n}, d={d}): verdict={cert.verdict} "
                f"front-strict={cert.front_strict} back-strict={cert.back_strict}"
            ],
        )
        if not cert.verdict:
            raise _Failure("level-gluing certificate refused")

    _with_budget(budget_, work)


@main.command("ho-hom")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--src", "src_label", required=True)
@click.option("--tgt", "tgt_label", required=True)
@click.option("--L", "bound", type=int, default=4, show_default=True, help="Word-length bound.")
@_budget_cmd
def ho_hom(path, src_label, tgt_label, bound, fmt, out, budget_):
    """Bounded congruence classes of zigzag words between two objects."""

    def work():
        c = _load(path)
        report = classify.ho_homset(c, _parse_label(src_label), _parse_label(tgt_label), bound)
        _emit(
            report,
            fmt,
            out,
            [f"ho-hom(L={bound}): {len(report.classes)} classes, stabilized={report.stabilized}"]
            + [f"  class {i}: {cls[0]} ({len(cls)} words)" for i, cls in enumerate(report.classes)],
        )

    _with_budget(budget_, work)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--L", "bound", type=int, default=4, show_default=True, help="Word-length bound.")
@_budget_cmd
def saturation(path, bound, fmt, out, budget_):
    """Tri-state saturation verdicts for every morphism at the bound."""

    def work():
        c = _load(path)
        report = classify.saturation_report(c, bound)
        lines = [f"saturation(L={bound}): {len(report.violations)} violations"]
        for m, v in sorted(report.verdicts.items(), key=lambda kv: str(kv[0])):
            suffix = f" witness={report.witnesses[m]}" if m in report.witnesses else ""
            lines.append(f"  {m}: {v}{suffix}")
        _emit(report, fmt, out, lines)

    _with_budget(budget_, work)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--L", "bound", type=int, default=4, show_default=True, help="Word-length bound.")
@_DEGREE
@_budget_cmd
def completeness(path, bound, d, fmt, out, budget_):
    """Compare bounded-invertible level-1 vertices with the weq vertices."""

    def work():
        c = _load(path)
        report = classify.completeness_report(c, bound, d)
        lines = [
            f"completeness: complete-at-({bound},{d})"
            if report.complete
            else f"completeness: discrepancy {report.discrepancy}"
        ]
        _emit(report, fmt, out, lines)
        if not report.complete:
            raise _Failure(f"not complete at ({bound},{d}): discrepancy {report.discrepancy}")

    _with_budget(budget_, work)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_budget_cmd
def verify(path, fmt, out, budget_):
    """Recheck a serialized certificate or report from its evidence alone."""

    def work():
        try:
            with open(path, "r", encoding="utf-8") as fh:
                obj = serialize.loads(fh.read())
        except OSError as exc:
            raise click.ClickException(f"cannot read {path}: {exc}")
        consistent, verdict = serialize.verify_certificate(obj)
        _emit(
            {"consistent": consistent, "verdict": verdict},
            fmt,
            out,
            [f"consistent={consistent} verdict={verdict}"],
        )
        if not consistent:
            raise _Failure("stored evidence does not re-validate")

    _with_budget(budget_, work)


if __name__ == "__main__":
    main()
