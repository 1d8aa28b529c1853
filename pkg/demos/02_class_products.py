"""Products of conjugacy classes: supports, structure constants, and the
no-single-class property in small simple groups.
"""

from cforge import verify as V
from cforge.algebra import character_constant, product_support
from cforge.cache import get_chartab
from cforge.zoo import make_group

meta = make_group({"family": "Alt", "n": 5})
ct = get_chartab(meta)
t = ct.classes
print("A5 class orders:", t.element_orders)
for i in range(1, len(t)):
    for j in range(i, len(t)):
        sup = product_support(t, i, j)
        counted = dict(sup.entries)
        via_chars = {k: character_constant(ct, i, j, k) for k in range(len(t))}
        assert all(via_chars[k] == counted.get(k, 0) for k in range(len(t)))
        print(f"  C{i} * C{j} meets classes {sup.classes}")

for spec in ({"family": "Alt", "n": 5}, {"family": "PSL", "d": 2, "q": 7}, {"family": "Alt", "n": 4}):
    r = V.verify_arad_herzog(spec)
    name = f"A{spec['n']}" if "n" in spec else f"PSL{spec['d']}({spec['q']})"
    print(f"{name}: {r.verdict}, smallest support {r.summary['min_support']}")
