"""
Nerve homology with exact integer arithmetic
============================================

The nerve of a category is the simplicial set of composable chains; its
normalized chain complex has exact integral homology computed by Smith
normal form.  Torsion is detected exactly — no floating point anywhere.
"""

from relcert import corpus, homology, nerve_complex
from relcert.snf import smith_normal_form


def describe(summary):
    parts = []
    for n in range(summary.degree + 1):
        gens = ["Z"] * summary.betti[n] + [f"Z/{t}" for t in summary.torsion[n]]
        parts.append(f"H_{n} = " + (" + ".join(gens) if gens else "0"))
    return ", ".join(parts)


# A contractible example: the walking isomorphism has the homology of a
# point even though it has two objects.
walkiso = corpus.load("walkiso")
print("walking isomorphism:", describe(homology(nerve_complex(walkiso.und, 3), 3)))

# The one-object category whose endomorphism is an involution has the
# homology of infinite real projective space through any truncation:
# 2-torsion in every odd degree.
bz2 = corpus.load("bz2")
print("involution monoid:  ", describe(homology(nerve_complex(bz2.und, 3), 3)))

# The Smith normal form kernel behind the computation, on its own:
print("snf of [[2,0],[0,3]] =", smith_normal_form([[2, 0], [0, 3]]))
print("snf of [[2,4],[4,8]] =", smith_normal_form([[2, 4], [4, 8]]))
