"""Conjugacy classes and exact character tables of a few small groups.

Run with ``python3 demos/01_classes_and_characters.py``.
"""

from cforge.cache import get_chartab
from cforge.zoo import make_group

for spec in ({"family": "Alt", "n": 5}, {"family": "PSL", "d": 2, "q": 7}, {"family": "Explicit", "name": "M11"}):
    meta = make_group(spec)
    ct = get_chartab(meta)
    t = ct.classes
    print(f"{spec}: order {meta.order}, {len(t)} classes")
    print("  element orders :", t.element_orders)
    print("  class sizes    :", t.sizes)
    print("  degrees        :", ct.degrees, " sum of squares =", sum(d * d for d in ct.degrees))
    print("  orthogonality at primes", ct.primes, "->", ct.check_orthogonality())

# a character value is an exact cyclotomic integer; complex() gives a numeric view
ct = get_chartab(make_group({"family": "PSL", "d": 2, "q": 7}))
row = ct.degrees.index(3)
print("\nA degree-3 character of PSL2(7):")
for k, v in enumerate(ct.values[row]):
    print(f"  class {k} (order {ct.classes.element_orders[k]}): {v!r:30s} ~ {complex(v):.4f}")
