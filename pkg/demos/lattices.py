# Lattice identities, bounded amalgam search, and counting embeddings.
#
#   python3 demos/lattices.py

from ramsey_posets.structures import chain_lattice, enumerate_embeddings, m3, n5, rel
from ramsey_posets.varieties import (
    DISTRIBUTIVE,
    MODULAR,
    check_ap,
    lattices_up_to_iso,
    parse_identity,
    powerset_lattice,
    satisfies_identity,
)

for name, lat in (("M3", m3()), ("N5", n5()), ("B3", powerset_lattice(3))):
    d = satisfies_identity(lat, *DISTRIBUTIVE)
    m = satisfies_identity(lat, *MODULAR)
    print(f"{name}: distributive {d.holds} {d.countermodel or ''}  modular {m.holds} {m.countermodel or ''}")

# how many small lattices are distributive
for n in range(1, 7):
    lats = list(lattices_up_to_iso(n))
    dist = sum(satisfies_identity(x, *DISTRIBUTIVE).holds for x in lats)
    print(f"  {n} elements: {len(lats)} lattices, {dist} distributive")

# glue two 3-chains along their ends, staying distributive
a, c3 = chain_lattice(2), chain_lattice(3)
r = check_ap(a, c3, c3, (0, 2), (0, 2), DISTRIBUTIVE, size_bound=5)
print("\namalgam of two 3-chains:", r.d.n, "elements, maps", r.g1, r.g2)

# identities can also be typed in
ident = parse_identity("x ∧ (x ∨ y) = x")
print("absorption in N5:", satisfies_identity(n5(), *ident).holds)

# B2 into B3: plenty of order embeddings, fewer that keep meets and joins
b2, b3 = powerset_lattice(2), powerset_lattice(3)
print("\nB2 → B3: order embeddings", len(enumerate_embeddings(rel(b2), rel(b3), "order")),
      " lattice embeddings", len(enumerate_embeddings(b2, b3, "lattice")))
