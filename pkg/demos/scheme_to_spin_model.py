"""From a self-dual scheme to a spin model and its knot-side identities.

Run with ``python3 demos/scheme_to_spin_model.py``.
"""

from schemespinlab import catalog
from schemespinlab.exactalg import cyclo_sqrt_int
from schemespinlab.knotstat import invariance_check, r2_pair_graph, star_triangle_check
from schemespinlab.scheme import intersection_numbers, self_duality_check
from schemespinlab.spinmodel import potts_spin_model, scheme_modular_check

s16 = catalog.build(catalog.get("scheme16"))
print("16-vertex scheme valencies:", s16.valencies)
print("p^1 =", intersection_numbers(s16)[1].tolist())
print("self-dual:", self_duality_check(s16).is_self_dual)

# the 3-state Potts model lives on the trivial scheme
potts = potts_spin_model(3)
print("Potts 3 type III sign:", potts.type_iii.sign)
mod = scheme_modular_check(potts)
print("(PT)^3 proportional to I:", mod.proportional, "scalar", complex(mod.mu))

# Reidemeister II and III on the smallest graphs
print("R2:", invariance_check(r2_pair_graph(), [(0, 1)], potts.Wplus, potts.Wminus).passed)
print("star-triangle:", star_triangle_check(potts.Wminus, potts.Wplus, cyclo_sqrt_int(3)).holds)
