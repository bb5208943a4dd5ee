"""Temperley-Lieb diagrams, the Kauffman braid representation and commuting squares."""

from schemespinlab import catalog
from schemespinlab.exactalg import Cyclo, Mat, cyclo_sqrt_int
from schemespinlab.tlbraid import (braid_representation, catalan, commuting_square_check, enumerate_diagrams,
                                   jones_index_values, markov_trace, tl_generators, verify_tl_relations)

for n in range(1, 6):
    print(f"n={n}: {len(enumerate_diagrams(n))} diagrams, Catalan {catalan(n)}")

phi = (1 + cyclo_sqrt_int(5)) / 2
print("TL relations at delta = phi:", verify_tl_relations(4, phi).passed)
print("tr(e_1) =", complex(markov_trace(tl_generators(4, phi)[0])))

print("braid residual at A = zeta_20:", braid_representation(4, Cyclo.root(20)).residual)
print("index values:", [complex(jones_index_values(n)).real for n in range(3, 8)])

for name in ("W1", "W2", "W3"):
    print(name, "commuting square:", commuting_square_check(catalog.build(catalog.get(name))).passed)
print("identity:", commuting_square_check(Mat.identity(3)).witness)
