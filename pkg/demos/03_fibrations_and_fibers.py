"""
Grothendieck fibrations, decided exhaustively
=============================================

For finite categories the (co)cartesian lifting property is decidable by
checking the defining universal bijection on every test object.  The
source evaluation on an arrow category is the standard example: always a
split fibration, with coslices as strict fibers.
"""

from relcert import (
    arrow_category,
    check_fibration,
    corpus,
    fiber,
    slice_category,
    transition_functor,
)

c = corpus.load("c2of3")
aw, dom, cod = arrow_category(c.und)
print(f"arrow category: {len(aw.objects)} objects, {len(aw.morphisms)} morphisms")

# dom is a split fibration: pulling an arrow back along a morphism into
# its source is just precomposition, and the chosen lifts compose strictly.
report = check_fibration(dom, "fibration")
print(f"dom as a fibration: verdict={report.verdict}, split={report.split}")

# The strict fiber over an object b is the coslice b\C.
for b in c.und.objects:
    fib = fiber(dom, b)
    under, _ = slice_category(c.und, b, "under")
    print(f"  fiber over {b}: {len(fib.objects)} objects (coslice has {len(under.objects)})")

# Transition functors move between fibers along base morphisms; on a
# split fibration they compose on the nose.
t = transition_functor(dom, (0, 1), report)
t.check()
print(f"transition along (0, 1): fiber({1}) -> fiber({0}), {len(t.obj_map)} objects moved")

# codom is dually a split opfibration with slices as fibers.
print(f"cod as an opfibration: verdict={check_fibration(cod, 'opfibration').verdict}")

# Not everything is a fibration: on a poset without pushouts the same
# evaluation fails in the opfibration direction, with a counterexample.
shape = corpus.load("shape_-1_2")
_, s_dom, _ = arrow_category(shape.und)
bad = check_fibration(s_dom, "opfibration")
print(f"dom as an opfibration elsewhere: verdict={bad.verdict}, counterexample={bad.counterexample}")
