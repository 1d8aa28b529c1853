"""Class functions that are not constant on a product of classes:
fixed points in S_n, the Steinberg character, and SL2(q) trace sets.
"""

from cforge import verify as V

r = V.verify_fixed_point_nonconstancy({"family": "Sym", "n": 6})
print("S6 / A6 fixed points:", r.verdict, f"({len(r.cases)} orbit pairs)")
c = r.cases[5]
print("  e.g. pair", (c["A"], c["B"]), "gives fixed-point counts", c["values"])

r = V.verify_fixed_point_nonconstancy({"family": "PSL", "d": 3, "q": 2})
print("PSL3(2) fixed lines:", r.verdict)

r = V.verify_steinberg_nonconstancy({"family": "PSL", "d": 2, "q": 11})
print("PSL2(11) Steinberg:", r.verdict, "on", len(r.summary["semisimple_classes"]), "semisimple classes")

for q in (5, 7):
    r = V.verify_trace_sets(q)
    print(f"SL2({q}) trace sets have sizes {r.summary['sizes']}")

r = V.verify_unipotent_products({"family": "Sp", "d": 4, "q": 2})
print("Sp4(2) unipotent pairs:", r.verdict, "witness classes", [(w["i"], w["j"]) for w in r.witnesses])
