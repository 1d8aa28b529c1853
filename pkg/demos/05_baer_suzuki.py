"""Pairs of p-element classes: the two-class Baer-Suzuki scan, why equal
normal closures are needed, and the almost simple probes.
"""

from cforge import verify as V
from cforge.cache import get_classes
from cforge.zoo import make_group

r = V.verify_bs_theorem({"family": "PSL", "d": 2, "q": 11}, 5)
print("PSL2(11), p = 5:", r.verdict, f"over {len(r.cases)} class pairs")

m = make_group(V.WREATH_A5)
c, d = V.wreath_classes(get_classes(m))
demo = V.bs_hypothesis_demo(m, c, d, 2)
print("A5 wr C2, p = 2:", demo)

r = V.verify_bsas({"family": "Explicit", "name": "M11"}, 11)
print("M11, p = 11 probes:", r.verdict, f"({len(r.cases)} pairs)")
