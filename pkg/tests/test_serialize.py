import json

import pytest

from relcert import corpus, serialize
from relcert.classify import ho_homset, htac_certificate, saturation_report
from relcert.fincat import arrow_category, identity_functor, ordinal
from relcert.groth import check_fibration
from relcert.homology import homology, nerve_complex, whe_certificate
from relcert.relcat import make_relative


def _round_trip(obj):
    text = serialize.dumps(obj)
    back = serialize.loads(text)
    assert back == obj
    assert serialize.dumps(back) == text
    return back


def test_relcat_round_trip(c2of3, htac_fail):
    for c in (c2of3, htac_fail):
        data = serialize.relcat_to_input_data(c)
        back = serialize.relcat_from_input_data(json.loads(json.dumps(data)))
        assert back == c


def test_homology_summary_round_trip(bz2cat):
    _round_trip(homology(nerve_complex(bz2cat.und, 3), 3))


def test_fibration_report_round_trip(c2of3):
    _, dom, _ = arrow_category(c2of3.und)
    _round_trip(check_fibration(dom, "fibration"))


def test_whe_certificate_round_trip():
    _round_trip(whe_certificate(identity_functor(ordinal(2))))


def test_htac_certificate_round_trip_keeps_recheckability(c2of3):
    cert = htac_certificate(c2of3, bound=1, d=2)
    back = _round_trip(cert)
    # the decoder re-attaches the input category so recheck stays meaningful
    assert back.recheck()


def test_report_round_trips(walkiso, c2of3):
    _round_trip(saturation_report(walkiso, 1))
    _round_trip(ho_homset(c2of3, 0, 1, 2))


def test_interning_shares_repeated_categories(c2of3):
    cert = htac_certificate(c2of3, bound=1, d=2)
    doc = json.loads(serialize.dumps(cert))
    assert doc["schema"] == serialize.SCHEMA
    # the same zigzag categories appear in many cells; interning must keep
    # the definition table far smaller than the raw cell count
    assert isinstance(doc["defs"], list) and doc["defs"]


def test_corpus_accessors():
    assert set(corpus.names()) == {
        "pt",
        "arrow",
        "walkiso",
        "bz2",
        "c2of3",
        "shape_-1_2",
        "htac_fail",
    }
    for name in corpus.names():
        c = corpus.load(name)
        c.und.validate()
        c.check()
        assert corpus.path(name).is_file()


def test_all_goldens_verify():
    for name in corpus.names():
        obj = corpus.load_golden(name)
        consistent, _verdict = serialize.verify_certificate(obj)
        assert consistent, name


def test_golden_bytes_are_canonical():
    # re-serializing a loaded golden reproduces the file byte-for-byte
    for name in ("pt", "arrow", "walkiso"):
        text = corpus.golden_path(name).read_text(encoding="utf-8")
        assert serialize.dumps(serialize.loads(text)) == text


def test_loads_rejects_wrong_schema():
    with pytest.raises(Exception):
        serialize.loads(json.dumps({"schema": "bogus/9", "defs": [], "payload": None}))
