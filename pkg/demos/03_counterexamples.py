"""Non-simple groups where a product of two classes is again a class, or
where a group is the product of two centralizers.
"""

from cforge import verify as V

for item in V.demo_counterexamples():
    flag = "ok " if item["matches"] else "MISMATCH"
    print(f"[{flag}] {item['name']}: expected {item['expected']}, observed {item['observed']}, "
          f"witness rechecked = {item['witness_rechecked']}")
