# Π_n, parameter words and the maps Φ between them.
#
#   python3 demos/powerset_words.py

from ramsey_posets.param_words import ParamWord, compose, factor, iter_words, phi
from ramsey_posets.powerset_pi import mask_items, pi, pi_labels
from ramsey_posets.structures import LinearlyOrderedPoset, StructureMap, embedding_violation

# Π_3: subsets of {1,2,3}, bigger sets lower down, listed in the linear order
p = pi(3)
print("Π_3 in its linear order:")
print("  ", "  ".join("{" + ",".join(map(str, s)) + "}" for s in (pi_labels(3)[i] for i in p.order)))

# a 2-chain sent into Π_4 by a 2-parameter word
chain = LinearlyOrderedPoset.chain(2)
u = ParamWord.parse("x1 0 x2 x1")
f = phi(chain, u)
print(f"\nΦ(chain, {u}):", [mask_items(x) for x in f.map])
print("ordered embedding into Π_4?", embedding_violation(chain, pi(4), f.map, "ordered-order") is None)

# how many words of length 5 with 2 parameters, and a few of them
words = list(iter_words(5, 2))
print(f"\n|W^5_2| = {len(words)}; first few:", ", ".join(str(w) for w in words[:4]))

# factoring: the point sent to the top of the 2-chain comes from a shorter word
point = LinearlyOrderedPoset.chain(1)
g = StructureMap(point, chain, (1,), "ordered-order")
v = ParamWord.parse("x1 x2 0")
h = factor(g, v)
print(f"\nfactor of the top inclusion through {v}: h = {h}")
print("  Φ(point, v·h) =", [mask_items(x) for x in phi(point, compose(v, h)).map],
      " Φ(chain, v)[top] =", mask_items(phi(chain, v).map[1]))
