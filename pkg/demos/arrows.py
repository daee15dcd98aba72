# Ramsey arrows C → (B)^A_k on small hosts.
#
#   python3 demos/arrows.py

from ramsey_posets.arrows import check_arrow, find_min_pi_arrow, verify_refutation
from ramsey_posets.structures import LinearlyOrderedPoset

point = LinearlyOrderedPoset.chain(1)

# pigeonhole: 2 colours, looking for a monochromatic m-antichain
for m in (2, 3, 4):
    b = LinearlyOrderedPoset.antichain(m)
    n = 2 * (m - 1)
    short = check_arrow(LinearlyOrderedPoset.antichain(n), point, b, 2)
    enough = check_arrow(LinearlyOrderedPoset.antichain(n + 1), point, b, 2)
    print(f"m={m}: antichain of {n} {short.outcome.value} (refutation {short.refutation},"
          f" checks out: {verify_refutation(short)}); {n + 1} {enough.outcome.value}")

# the smallest Π_n in which every 2-colouring of points has a monochromatic 2-chain
chain = LinearlyOrderedPoset.chain(2)
found = find_min_pi_arrow(point, chain, 2, n_max=4)
print("\nΠ_n → (2-chain)^point_2 first holds at n =", found.n, found.tried)

# pairs instead of points: colour incomparable pairs, look for a monochromatic 3-antichain
anti2, anti3 = LinearlyOrderedPoset.antichain(2), LinearlyOrderedPoset.antichain(3)
for backend in ("backtrack", "sat"):
    try:
        found = find_min_pi_arrow(anti2, anti3, 2, n_max=5, backend=backend)
        print(f"[{backend}] Π_n → (3-antichain)^(2-antichain)_2 first at n = {found.n}, "
              f"{found.verdict.stats['a_copies']} pairs coloured")
    except ImportError:
        print(f"[{backend}] python-sat not installed")
