# Ordering-property witnesses: every admissible order on B sits inside every
# linear extension of the witness.
#
#   python3 demos/ordering_property.py

from ramsey_posets.arrows import NotFoundWithinBound, copies_of
from ramsey_posets.census import ordered_posets_up_to_iso
from ramsey_posets.ordering_property import (
    build_b1,
    op_witness_via_arrow,
    sierpinski_coloring,
    verify_op_witness,
)
from ramsey_posets.powerset_pi import pi
from ramsey_posets.structures import FinitePoset, LinearlyOrderedPoset, iter_linear_extensions

anti2 = LinearlyOrderedPoset.antichain(2)

# antichains are their own witnesses
r = op_witness_via_arrow(LinearlyOrderedPoset.antichain(3))
print("3-antichain:", "self-witness" if r.arrow_n is None else r.arrow_n, "verified:", r.verified)

# the 2-chain: add a free point between its ends, then ask Π_n to arrow that
chain = LinearlyOrderedPoset.chain(2)
b1 = build_b1(chain, 0, 1)
print("b1 for the 2-chain: up rows", b1.poset.up, "order", b1.order)
r = op_witness_via_arrow(chain, n_max=5)
print(f"2-chain: witness Π_{r.arrow_n}, verified {r.verified} over {r.checked_pairs} order pairs")

# why the colour 'disagree' is impossible on the triangle
tri = b1
pairs = copies_of(anti2, tri)
print("\ntriangle colourings from each extension:")
for o in iter_linear_extensions(tri.poset):
    print("  ", o, sierpinski_coloring(tri, o, pairs))

# size-3 bases: the arrow needs bigger Π_n than a desk allows
print("\nsize-3 bases, arrow search up to Π_5:")
for b in ordered_posets_up_to_iso(3):
    try:
        r = op_witness_via_arrow(b, n_max=5, arrow_node_limit=200_000)
        print("  ", b.poset.up, "witness", "self" if r.arrow_n is None else f"Π_{r.arrow_n}", r.verified)
    except NotFoundWithinBound as e:
        print("  ", b.poset.up, "no Π_n with n <= 5;", "last verdict", e.last.outcome.value)

# a witness certified directly, without the arrow: Π_4 already works for this base
vee = LinearlyOrderedPoset(FinitePoset(3, (5, 6, 4)), (0, 1, 2))
print("\nΠ_4 as a witness for", vee.poset.up, ":", verify_op_witness(vee, pi(4).poset).verified)
