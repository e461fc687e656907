"""
Serializing and re-verifying certificates
=========================================

Every report and certificate serializes to deterministic JSON with its
full evidence tree, and re-verifies from the file alone — no recomputation
of the original derivation, just exhaustive validation of the evidence.
"""

import tempfile
from pathlib import Path

from relcert import corpus, serialize
from relcert.classify import htac_certificate

c = corpus.load("c2of3")
cert = htac_certificate(c, bound=1, d=2)

# dumps is canonical: the same object always produces the same bytes, and
# shared structures (the zigzag categories appearing in many cells) are
# interned in a definition table instead of being repeated.
text = serialize.dumps(cert)
print(f"serialized certificate: {len(text)} bytes, {len(cert.cells)} cells")
assert serialize.dumps(serialize.loads(text)) == text
print("round trip is byte-stable")

with tempfile.TemporaryDirectory() as tmp:
    target = Path(tmp) / "htac.json"
    target.write_text(text, encoding="utf-8")
    back = serialize.loads(target.read_text(encoding="utf-8"))
    consistent, verdict = serialize.verify_certificate(back)
    print(f"re-verified from disk: consistent={consistent}, verdict={verdict}")

# The bundled golden files are exactly such certificates; each one
# re-validates, including the deliberately failing one, whose refusal is
# itself consistent evidence.
for name in corpus.names():
    consistent, verdict = serialize.verify_certificate(corpus.load_golden(name))
    print(f"golden {name}: consistent={consistent}, verdict={verdict}")
