"""sl(2) ladders, the Krawtchouk algebra and q-data at roots of unity."""

from fractions import Fraction

from schemespinlab.ifs import sl2_check, sl2_ladder
from schemespinlab.qleonard import (anyon_qdata, is_admissible, is_leonard_pair, krawtchouk_relations,
                                    ksl2_substitution, leonard_from_qdata)

f = sl2_ladder(5)
print("sl2 relations exact for d=5:", sl2_check(f).passed)

omega = Fraction(1, 3)
sub = ksl2_substitution(f, omega)
print("K_omega relations:", krawtchouk_relations(sub.A, sub.B, omega).passed)

print("admissible (k, d) with k <= 6, d <= 7:")
print([(k, d) for k in range(7) for d in range(8) if is_admissible(k, d)])

qd = anyon_qdata(3, 3)
for partner in ("sl2", "parameter_array"):
    A, B = leonard_from_qdata(qd, partner=partner)
    print(f"(3, 3) with {partner} partner:", is_leonard_pair(A, B).status)
