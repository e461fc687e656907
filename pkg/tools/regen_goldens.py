"""Regenerate the expected-report golden files for the bundled corpus.

Run from the repository root:  python3 tools/regen_goldens.py
Each golden is the serialized report named below; the test suite and the
`verify` subcommand recheck them from the files alone.
"""

import pathlib

from relcert import corpus, serialize
from relcert.classify import (
    hom_space_certificate,
    htac_certificate,
    saturation_report,
    completeness_report,
)
from relcert.fincat import arrow_category
from relcert.groth import check_fibration
from relcert.homology import homology, nerve_complex

GOLDEN_DIR = pathlib.Path(__file__).resolve().parent.parent / "src" / "relcert" / "corpus" / "golden"


def build(name: str):
    c = corpus.load(name)
    if name in ("pt", "bz2", "shape_-1_2"):
        return homology(nerve_complex(c.und, 3), 3)
    if name == "arrow":
        _, a_dom, _ = arrow_category(c.und)
        return check_fibration(a_dom, "fibration")
    if name == "walkiso":
        return saturation_report(c, 1)
    if name == "c2of3":
        return hom_space_certificate(c, 0, 1, 2)
    if name == "htac_fail":
        return htac_certificate(c, 2, 2)
    raise ValueError(name)


def main():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name in corpus.names():
        report = build(name)
        text = serialize.dumps(report)
        target = GOLDEN_DIR / f"{name}.json"
        target.write_text(text, encoding="utf-8")
        consistent, verdict = serialize.verify_certificate(serialize.loads(text))
        print(f"{name}: {len(text)} bytes, consistent={consistent}, verdict={verdict}")
        assert consistent


if __name__ == "__main__":
    main()
