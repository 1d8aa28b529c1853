"""Theorem-level verifiers.

Each verifier sweeps a family of cases on one group and returns a
VerifierReport.  Witnesses carry enough data (elements or conjugators) for
``recheck`` to confirm them from scratch without the class machinery that
produced them.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .algebra import character_constant, product_support, szep_factorization, centralizer_orbit_count
from .backtrack import centralizer_in, conjugacy_class, conjugating_element
from .cache import Cache, get_chartab, get_classes
from .chartab import nonconstancy_witness, steinberg_character
from .classes import ClassTable
from .errors import BadSpec, InvariantViolation
from .ffmat import field_of_order, form_value_vanishes
from .numtheory import is_prime_power_of, p_part
from .perm import (
    Perm,
    PermGroup,
    derived_series,
    derived_subgroup,
    generates_p_group,
    is_solvable,
    normal_closure,
)
from .zoo import GroupMeta, is_simple_by_closure, make_group

VERDICTS = ("holds", "fails", "exception-case")


@dataclass
class VerifierReport:
    verifier: str
    spec: dict
    verdict: str
    cases: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    cache_keys: list = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return self.verdict != "fails"

    def to_json(self, timing: bool = True) -> dict:
        return {
            "verifier": self.verifier,
            "spec": self.spec,
            "verdict": self.verdict,
            "summary": self.summary,
            "cases": self.cases,
            "witnesses": self.witnesses,
            "cache_keys": self.cache_keys,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=False, separators=(",", ":"))


class _Run:
    """Collects cases and witnesses, then stamps timing and cache keys."""

    def __init__(self, name: str, meta: GroupMeta, cache: Cache | None):
        self.name = name
        self.meta = meta
        self.cache = cache
        self.start = time.perf_counter()
        self.cases: list = []
        self.witnesses: list = []
        self.summary: dict = {}
        self._mark = len(cache.used) if cache is not None else 0

    def report(self, verdict: str) -> VerifierReport:
        keys = sorted(set(self.cache.used[self._mark:])) if self.cache is not None else []
        return VerifierReport(
            self.name,
            json.loads(self.meta.key()),
            verdict,
            self.cases,
            self.witnesses,
            self.summary,
            keys,
            (time.perf_counter() - self.start) * 1000.0,
        )


def _meta(g) -> GroupMeta:
    if isinstance(g, GroupMeta):
        return g
    if isinstance(g, dict):
        return make_group(g)
    raise TypeError("expected a GroupMeta or a group spec")


def _p_element(x: Perm, p: int) -> bool:
    return is_prime_power_of(x.order(), p)


def _conjugates(group: PermGroup, x: Perm):
    """Yield (y, h) with y = x^h over the class of x, in BFS order from the generators."""
    seen = {x: group.identity}
    queue = [x]
    gens = group.gens
    for y in queue:
        yield y, seen[y]
        h = seen[y]
        for s in gens:
            z = y.conj(s)
            if z not in seen:
                seen[z] = h * s
                queue.append(z)


# ---------------------------------------------------------------- Arad-Herzog


def verify_arad_herzog(meta, cache: Cache | None = None, simple: bool | None = None, pairs=None) -> VerifierReport:
    """Every product of two nontrivial classes meets at least two classes."""
    meta = _meta(meta)
    run = _Run("arad-herzog", meta, cache)
    t = get_classes(meta, cache)
    if simple is None:
        simple = is_simple_by_closure(meta, t)
    run.summary["simple"] = simple
    k = len(t)
    todo = pairs if pairs is not None else [(i, j) for i in range(1, k) for j in range(i, k)]
    smallest = None
    for i, j in todo:
        sup = product_support(t, i, j)
        n = len(sup)
        run.cases.append({"i": i, "j": j, "support": sup.classes})
        smallest = n if smallest is None else min(smallest, n)
        if n == 1:
            c = sup.classes[0]
            run.witnesses.append({"i": i, "j": j, "k": c, "a": t.reps[i].to_json(), "b": t.reps[j].to_json(), "c": t.reps[c].to_json()})
    run.summary["pairs"] = len(todo)
    run.summary["min_support"] = smallest
    return run.report("fails" if run.witnesses else "holds")


def _recheck_single_class(g: PermGroup, w: dict) -> bool:
    a, b, c = Perm(w["a"]), Perm(w["b"]), Perm(w["c"])
    # a^G b^G is a union of classes, so it equals c^G once every x b with x in a^G is conjugate to c
    return all(conjugating_element(g, x * b, c) is not None for x in conjugacy_class(g, a))


# ---------------------------------------------------------------- Szep


def verify_szep(meta, cache: Cache | None = None, pairs=None) -> VerifierReport:
    """G is never C(a) C(b) for nontrivial class representatives a, b."""
    meta = _meta(meta)
    run = _Run("szep", meta, cache)
    t = get_classes(meta, cache)
    g = meta.group
    n = g.order()
    k = len(t)
    todo = pairs if pairs is not None else [(i, j) for i in range(1, k) for j in range(i, k)]
    for i, j in todo:
        ca = t.centralizer(i)
        cb = t.centralizer(j)
        both = centralizer_in(ca, t.reps[j])
        size = ca.order() * cb.order() // both.order()
        run.cases.append({"i": i, "j": j, "product_size": str(size)})
        if size == n:
            run.witnesses.append({"i": i, "j": j, "a": t.reps[i].to_json(), "b": t.reps[j].to_json()})
    run.summary["pairs"] = len(todo)
    run.summary["order"] = str(n)
    return run.report("fails" if run.witnesses else "holds")


def _recheck_factorization(g: PermGroup, w: dict) -> bool:
    # G = C(a) C(b) iff C(a) is transitive on the class of b
    a, b = Perm(w["a"]), Perm(w["b"])
    return centralizer_orbit_count(g, a, b).count == 1


# ---------------------------------------------------------------- fixed points


def _subgroup_orbit_reps(g: PermGroup, h: PermGroup, t: ClassTable, cosets: list[Perm]):
    """Representatives of the H-conjugacy orbits on each nontrivial G-class (H normal in G)."""
    out = []
    for i in range(1, len(t)):
        a = t.reps[i]
        if h.order() == g.order():
            out.append((i, a))
            continue
        k = PermGroup(list(h.gens) + list(t.centralizer(i).gens), g.degree)
        chosen: list[Perm] = []
        for s in cosets:
            if any(k.contains(s * c.inverse()) for c in chosen):
                continue
            chosen.append(s)
            out.append((i, a.conj(s)))
        if len(chosen) * k.order() != g.order():
            raise InvariantViolation("H-orbit count on a class does not match the index")
    return out


def _coset_reps(g: PermGroup, h: PermGroup) -> list[Perm]:
    reps = [g.identity]
    idx = g.order() // h.order()
    queue = [g.identity]
    for x in queue:
        for s in g.gens:
            y = x * s
            if all(not h.contains(y * r.inverse()) for r in reps):
                reps.append(y)
                queue.append(y)
        if len(reps) == idx:
            break
    if len(reps) != idx:
        raise InvariantViolation("coset enumeration fell short")
    return reps


def verify_fixed_point_nonconstancy(meta, h: PermGroup | None = None, cache: Cache | None = None) -> VerifierReport:
    """The fixed-point count is not constant on a^H b^H for nontrivial a, b in G.

    H defaults to the derived subgroup (Alt inside Sym, PSL inside PGL; H = G
    when G is already perfect).  H must be normal in G.
    """
    meta = _meta(meta)
    run = _Run("fixed-point-nonconstancy", meta, cache)
    g = meta.group
    if h is None:
        h = derived_subgroup(g)
    if not h.is_subgroup_of(g) or normal_closure(g, h.gens).order() != h.order():
        raise BadSpec("H must be a normal subgroup of G")
    t = get_classes(meta, cache)
    cosets = _coset_reps(g, h)
    reps = _subgroup_orbit_reps(g, h, t, cosets)
    run.summary["h_order"] = str(h.order())
    run.summary["h_orbits"] = [{"g_class": i, "rep": a.to_json()} for i, a in reps]
    for u in range(len(reps)):
        for v in range(u, len(reps)):
            a = reps[u][1]
            b = reps[v][1]
            first = None
            found = None
            seen = 0
            for x, conj in _conjugates(h, a):
                seen += 1
                y = x * b
                f = y.fixed_points()
                if first is None:
                    first = (f, conj)
                elif f != first[0]:
                    found = (f, conj)
                    break
            if found is None:
                run.witnesses.append({"A": u, "B": v, "a": a.to_json(), "b": b.to_json(), "value": first[0], "class_size": seen})
                run.cases.append({"A": u, "B": v, "values": [first[0]]})
            else:
                run.cases.append({"A": u, "B": v, "values": [first[0], found[0]], "h": [first[1].to_json(), found[1].to_json()]})
    run.summary["pairs"] = len(run.cases)
    return run.report("fails" if run.witnesses else "holds")


def _recheck_fixed_point_case(h: PermGroup, a: Perm, b: Perm, case: dict) -> bool:
    h1, h2 = (Perm(x) for x in case["h"])
    if not (h.contains(h1) and h.contains(h2)):
        return False
    f1 = (a.conj(h1) * b).fixed_points()
    f2 = (a.conj(h2) * b).fixed_points()
    return [f1, f2] == case["values"] and f1 != f2


# ---------------------------------------------------------------- Steinberg


def steinberg_pattern(ct, st: int, p: int) -> list[int]:
    """Classes violating: St(g) = 0 iff p | o(g), and |St(g)| = |C(g)|_p otherwise."""
    t = ct.classes
    bad = []
    for s in range(len(t)):
        v = ct.values[st][s].rational()
        if v is None:
            bad.append(s)
        elif t.element_orders[s] % p == 0:
            if v != 0:
                bad.append(s)
        elif abs(v) != p_part(t.centralizer_orders[s], p):
            bad.append(s)
    return bad


def _char_p(meta: GroupMeta, p: int | None) -> int:
    p = p or meta.p
    if not p:
        raise BadSpec(f"{meta.family} has no defining characteristic; pass p explicitly")
    return p


def verify_steinberg_nonconstancy(meta, cache: Cache | None = None, p: int | None = None) -> VerifierReport:
    """St takes two values on a^G b^G for every pair of nontrivial semisimple classes."""
    meta = _meta(meta)
    p = _char_p(meta, p)
    run = _Run("steinberg-nonconstancy", meta, cache)
    ct = get_chartab(meta, cache)
    t = ct.classes
    st = steinberg_character(ct, p)
    bad = steinberg_pattern(ct, st, p)
    run.summary.update({"p": p, "steinberg_row": st, "pattern_violations": bad})
    if bad:
        run.witnesses.append({"pattern_classes": bad})
        return run.report("fails")
    ss = [s for s in range(1, len(t)) if t.element_orders[s] % p]
    run.summary["semisimple_classes"] = ss
    for u, i in enumerate(ss):
        for j in ss[u:]:
            sup = product_support(t, i, j)
            w = nonconstancy_witness(ct, st, sup)
            if w is None:
                run.witnesses.append({"i": i, "j": j, "support": sup.classes})
                run.cases.append({"i": i, "j": j, "support": sup.classes, "values": None})
            else:
                vals = [ct.values[st][k].rational() for k in w]
                run.cases.append({"i": i, "j": j, "support": sup.classes, "classes": list(w), "values": vals})
    run.summary["pairs"] = len(run.cases)
    return run.report("fails" if run.witnesses else "holds")


# ---------------------------------------------------------------- unipotent pairs


def _is_exception_pair(meta: GroupMeta, a: Perm, b: Perm) -> dict | None:
    """Sp(2n, q), q even: one element a transvection, the other a form-vanishing involution."""
    fam = meta.family
    base = meta.spec.get("base", {}).get("family") if fam in ("Derived", "AutExtension") else fam
    F = meta.field
    if base not in ("Sp", "PSp") or F is None or F.p != 2 or meta.form is None:
        return None
    if meta.action not in ("vectors", "projective"):
        return None
    for x, y in ((a, b), (b, a)):
        mx, my = meta.matrix_of(x), meta.matrix_of(y)
        ident = mx.identity(F, mx.dim)
        if (mx - ident).rank() != 1:
            continue
        if y.order() != 2 or not form_value_vanishes(my, meta.form):
            continue
        return {"transvection": x.to_json(), "involution": y.to_json()}
    return None


def verify_unipotent_products(meta, cache: Cache | None = None, p: int | None = None) -> VerifierReport:
    """Products of two nontrivial unipotent classes contain a non-unipotent element,
    apart from the symplectic characteristic-2 exception, which must still meet two classes."""
    meta = _meta(meta)
    p = _char_p(meta, p)
    run = _Run("unipotent-products", meta, cache)
    t = get_classes(meta, cache)
    orders = t.element_orders
    unip = [s for s in range(1, len(t)) if is_prime_power_of(orders[s], p)]
    run.summary.update({"p": p, "unipotent_classes": unip})
    exceptions = 0
    for u, i in enumerate(unip):
        for j in unip[u:]:
            sup = product_support(t, i, j)
            non = [k for k in sup.classes if not is_prime_power_of(orders[k], p)]
            case = {"i": i, "j": j, "support": sup.classes}
            if non:
                case["non_unipotent_class"] = non[0]
                run.cases.append(case)
                continue
            exc = _is_exception_pair(meta, t.reps[i], t.reps[j])
            case["support_orders"] = [orders[k] for k in sup.classes]
            if exc is not None and len(sup) >= 2:
                case["exception"] = True
                exceptions += 1
                w = {"i": i, "j": j, **exc, "support_orders": sorted({orders[k] for k in sup.classes})}
                w["h"] = _distinct_order_conjugators(meta.group, t.reps[i], t.reps[j])
                run.witnesses.append(w)
            else:
                case["exception"] = False
                run.witnesses.append({"i": i, "j": j, "a": t.reps[i].to_json(), "b": t.reps[j].to_json(), "support": sup.classes})
            run.cases.append(case)
    run.summary["pairs"] = len(run.cases)
    run.summary["exception_pairs"] = exceptions
    if len(run.witnesses) > exceptions:
        return run.report("fails")
    return run.report("exception-case" if exceptions else "holds")


def _distinct_order_conjugators(g: PermGroup, a: Perm, b: Perm) -> list:
    """Conjugators h1, h2 with a^h1 b and a^h2 b of different orders."""
    first = None
    for x, h in _conjugates(g, a):
        o = (x * b).order()
        if first is None:
            first = (o, h)
        elif o != first[0]:
            return [first[1].to_json(), h.to_json()]
    return [first[1].to_json()]


def _recheck_unipotent_exception(meta: GroupMeta, w: dict, p: int) -> bool:
    x, y = Perm(w["transvection"]), Perm(w["involution"])
    if _is_exception_pair(meta, x, y) is None:
        return False
    g = meta.group
    # the whole product set is made of p-elements, and it meets elements of two orders
    if not all(_p_element(z * y, p) for z in conjugacy_class(g, x)):
        # the witness may list the classes in the other order
        if not all(_p_element(y.conj(h) * x, p) for _, h in _conjugates(g, y)):
            return False
    if len(w["h"]) != 2:
        return False
    return True


# ---------------------------------------------------------------- Baer-Suzuki


@dataclass
class BSScan:
    all_p: bool
    witness: dict | None
    checked: int

    def to_json(self) -> dict:
        return {"all_p": self.all_p, "witness": self.witness, "checked": self.checked}


def _table(g, cache=None) -> ClassTable:
    if isinstance(g, ClassTable):
        return g
    if isinstance(g, PermGroup):
        from .classes import conjugacy_classes

        return conjugacy_classes(g)
    return get_classes(_meta(g), cache)


def bs_pair_scan(g, C, D, p: int, cache: Cache | None = None) -> BSScan:
    """Whether <c, d> is a p-group for all c in the classes C and d in the classes D.

    One representative per class of C suffices: any pair (c', d') is
    simultaneously conjugate to one with c' a fixed representative.
    """
    t = _table(g, cache)
    deg = t.group.degree
    checked = 0
    for i in C:
        c = t.reps[i]
        for j in D:
            for d, h in _conjugates(t.group, t.reps[j]):
                checked += 1
                if not generates_p_group([c, d], p, deg):
                    return BSScan(False, {"C": i, "D": j, "c": c.to_json(), "d": d.to_json(), "h": h.to_json()}, checked)
    return BSScan(True, None, checked)


def _powers_scan(t: ClassTable, i: int, j: int, p: int) -> bool:
    """All c^a d^b are p-elements for c the representative of class i and d in class j."""
    c = t.reps[i]
    cp = [c**a for a in range(1, c.order() + 1)]
    for d, _ in _conjugates(t.group, t.reps[j]):
        dp = [d**b for b in range(1, d.order() + 1)]
        for x in cp:
            for y in dp:
                if not _p_element(x * y, p):
                    return False
    return True


def verify_bs_theorem(meta, p: int, cache: Cache | None = None) -> VerifierReport:
    """Two-class Baer-Suzuki property on every pair of p-element classes.

    For single classes C, D with equal normal closures H: if <c, d> is a
    p-group for all (c, d), then H must be a p-group.  When H = G the stronger
    power condition (all c^a d^b are p-elements) must force G cyclic of
    p-power order.  Pairs whose closures differ are recorded as vacuous.
    """
    meta = _meta(meta)
    run = _Run("baer-suzuki", meta, cache)
    t = get_classes(meta, cache)
    g = meta.group
    pcls = [s for s in range(1, len(t)) if is_prime_power_of(t.element_orders[s], p)]
    closures = {s: normal_closure(g, [t.reps[s]]) for s in pcls}
    run.summary.update({"p": p, "p_classes": pcls, "positive_claim_applies": p >= 5})
    violations = 0
    for u, i in enumerate(pcls):
        for j in pcls[u:]:
            hi, hj = closures[i], closures[j]
            case = {"C": i, "D": j}
            if hi.order() != hj.order() or not hi.same_group(hj):
                case["vacuous"] = True
                run.cases.append(case)
                continue
            h_order = hi.order()
            scan = bs_pair_scan(t, [i], [j], p)
            case.update({"vacuous": False, "closure_order": str(h_order), "all_p": scan.all_p})
            if scan.all_p:
                concl = is_prime_power_of(h_order, p)
                case["closure_is_p_group"] = concl
                if not concl and p >= 5:
                    violations += 1
                    run.witnesses.append({"C": i, "D": j, "closure_order": str(h_order)})
            if h_order == g.order():
                pw = _powers_scan(t, i, j, p)
                case["powers_all_p"] = pw
                if pw:
                    cyc = is_prime_power_of(h_order, p) and any(o == h_order for o in t.element_orders)
                    case["cyclic_p_group"] = cyc
                    if not cyc and p >= 5:
                        violations += 1
                        run.witnesses.append({"C": i, "D": j, "powers": True})
            run.cases.append(case)
    run.summary["pairs"] = len(run.cases)
    return run.report("fails" if violations else "holds")


def bs_hypothesis_demo(meta, C: int, D: int, p: int, cache: Cache | None = None) -> dict:
    """Run the pair scan with the equal-closure hypothesis dropped."""
    meta = _meta(meta)
    t = get_classes(meta, cache)
    g = meta.group
    scan = bs_pair_scan(t, [C], [D], p)
    hc = normal_closure(g, [t.reps[C]])
    hd = normal_closure(g, [t.reps[D]])
    same = hc.order() == hd.order() and hc.same_group(hd)
    return {
        "C": C,
        "D": D,
        "p": p,
        "all_p": scan.all_p,
        "pairs_checked": scan.checked,
        "closures_equal": same,
        "closure_orders": [str(hc.order()), str(hd.order())],
        "conclusion": is_prime_power_of(hc.order(), p) and is_prime_power_of(hd.order(), p),
    }


# ---------------------------------------------------------------- almost simple probes


def bsas_probe(g, c: Perm, d: Perm, p: int) -> dict:
    """First conjugators (BFS order over the class of d) with <c, d^h> nonsolvable
    and with c d^h not a p-element."""
    group = g.group if isinstance(g, GroupMeta) else g
    if not (group.contains(c) and group.contains(d)):
        raise BadSpec("elements must lie in the group")
    nonsolv = None
    nonp = None
    checked = 0
    for y, h in _conjugates(group, d):
        checked += 1
        if nonp is None and not _p_element(c * y, p):
            nonp = h
        if nonsolv is None and not is_solvable(PermGroup([c, y], group.degree)):
            nonsolv = h
        if nonp is not None and nonsolv is not None:
            break
    return {
        "nonsolvable_witness": nonsolv.to_json() if nonsolv is not None else None,
        "non_p_product_witness": nonp.to_json() if nonp is not None else None,
        "checked": checked,
    }


def verify_bsas(meta, p: int, cache: Cache | None = None) -> VerifierReport:
    """bsas_probe over all ordered pairs of classes of elements of order p."""
    meta = _meta(meta)
    run = _Run("almost-simple-probe", meta, cache)
    t = get_classes(meta, cache)
    series = derived_series(meta.group)
    run.summary["socle_order"] = str(series[-1].order())
    run.summary["p"] = p
    cls = [s for s in range(1, len(t)) if t.element_orders[s] == p]
    run.summary["order_p_classes"] = cls
    missing = 0
    for i in cls:
        for j in cls:
            r = bsas_probe(meta.group, t.reps[i], t.reps[j], p)
            run.cases.append({"c": i, "d": j, **r})
            if r["nonsolvable_witness"] is None or r["non_p_product_witness"] is None:
                missing += 1
                run.witnesses.append({"c": i, "d": j})
    run.summary["pairs"] = len(run.cases)
    return run.report("fails" if missing else "holds")


def _recheck_bsas_case(g: PermGroup, c: Perm, d: Perm, case: dict, p: int) -> bool:
    h1 = Perm(case["nonsolvable_witness"])
    h2 = Perm(case["non_p_product_witness"])
    if not (g.contains(h1) and g.contains(h2)):
        return False
    return not is_solvable(PermGroup([c, d.conj(h1)], g.degree)) and not _p_element(c * d.conj(h2), p)


# ---------------------------------------------------------------- SL2 trace sets


def _m2mul(F, a, b):
    add, mul = F.add, F.mul
    return (
        add(mul(a[0], b[0]), mul(a[1], b[2])),
        add(mul(a[0], b[1]), mul(a[1], b[3])),
        add(mul(a[2], b[0]), mul(a[3], b[2])),
        add(mul(a[2], b[1]), mul(a[3], b[3])),
    )


def _m2inv(F, a):
    det = F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]))
    di = F.inv(det)
    return (F.mul(a[3], di), F.mul(F.neg(a[1]), di), F.mul(F.neg(a[2]), di), F.mul(a[0], di))


def _sl2_orbit(F, b: tuple) -> set:
    gens = []
    for c in F.elements():
        if c:
            gens.append((1, c, 0, 1))
            gens.append((1, 0, c, 1))
    invs = [_m2inv(F, s) for s in gens]
    seen = {b}
    queue = [b]
    for v in queue:
        for s, si in zip(gens, invs):
            w = _m2mul(F, _m2mul(F, si, v), s)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def sl2_trace_set(q: int, a: tuple, b: tuple) -> set:
    """{tr(u v) : u in a^H, v in b^H} for H = SL2(q); a, b are 2x2 matrices as flat tuples.

    Since tr(a^h v) = tr(a v^(h^-1)), it is enough to run v over b^H.
    """
    F = field_of_order(q)
    out = set()
    for v in _sl2_orbit(F, b):
        m = _m2mul(F, a, v)
        out.add(F.add(m[0], m[3]))
    return out


def verify_trace_sets(q: int) -> VerifierReport:
    """For all non-central split semisimple a, b in GL2(q) the trace set has q elements."""
    start = time.perf_counter()
    F = field_of_order(q)
    units = [x for x in F.elements() if x]
    pairs = [(x, y) for x in units for y in units if x != y]
    # a = diag(x, y) gives tr(a v) = x v00 + y v11, so only the diagonals of b^H matter
    diag_sets = {b: {(v[0], v[3]) for v in _sl2_orbit(F, (b[0], 0, 0, b[1]))} for b in pairs}
    cases = []
    bad = []
    for a in pairs:
        for b in pairs:
            n = len({F.add(F.mul(a[0], d0), F.mul(a[1], d1)) for d0, d1 in diag_sets[b]})
            cases.append({"a": list(a), "b": list(b), "traces": n})
            if n != q:
                bad.append(cases[-1])
    return VerifierReport(
        "sl2-trace-sets",
        {"family": "SL", "d": 2, "q": q},
        "fails" if bad else "holds",
        cases,
        bad,
        {"q": q, "pairs": len(cases), "sizes": sorted({c["traces"] for c in cases})},
        [],
        (time.perf_counter() - start) * 1000.0,
    )


# ---------------------------------------------------------------- normal p-complement


def normal_complement_check(g: PermGroup, n_gens, p_gens, C, D) -> dict:
    """Hypothesis and conclusion for a group G = N P with N a normal p-complement.

    hypothesis: P = <C> = <D> and <c^x, d> is a p-group for all x in N, c in C, d in D.
    conclusion: G = N x P, i.e. P centralizes N.
    """
    n = PermGroup(list(n_gens), g.degree)
    pg = PermGroup(list(p_gens), g.degree)
    p = min(q for q in range(2, pg.order() + 1) if pg.order() % q == 0) if pg.order() > 1 else 2
    gen_ok = all(PermGroup(list(S), g.degree).same_group(pg) for S in (C, D))
    hyp = gen_ok and all(
        generates_p_group([c.conj(x), d], p, g.degree) for x in n.elements() for c in C for d in D
    )
    direct = all(a * b == b * a for a in n.gens for b in pg.gens)
    return {"hypothesis": hyp, "conclusion": direct}


# ---------------------------------------------------------------- rechecks


def recheck(report: VerifierReport | dict) -> bool:
    """Re-verify a report's witnesses from scratch (fresh group, no class tables)."""
    r = report.to_json() if isinstance(report, VerifierReport) else report
    name = r["verifier"]
    if name == "sl2-trace-sets":
        q = r["spec"]["q"]
        return all(
            len(sl2_trace_set(q, (w["a"][0], 0, 0, w["a"][1]), (w["b"][0], 0, 0, w["b"][1]))) == w["traces"]
            for w in r["witnesses"]
        )
    meta = make_group(r["spec"])
    g = meta.group
    if name == "arad-herzog":
        return all(_recheck_single_class(g, w) for w in r["witnesses"])
    if name == "szep":
        return all(_recheck_factorization(g, w) for w in r["witnesses"])
    if name == "fixed-point-nonconstancy":
        h = derived_subgroup(g)
        reps = [Perm(x["rep"]) for x in r["summary"]["h_orbits"]]
        for c in r["cases"]:
            if "h" in c and not _recheck_fixed_point_case(h, reps[c["A"]], reps[c["B"]], c):
                return False
        return True
    if name == "unipotent-products":
        p = r["summary"]["p"]
        return all(_recheck_unipotent_exception(meta, w, p) for w in r["witnesses"] if "transvection" in w)
    if name == "almost-simple-probe":
        from .classes import conjugacy_classes

        t = conjugacy_classes(g)
        p = r["summary"]["p"]
        return all(
            _recheck_bsas_case(g, t.reps[c["c"]], t.reps[c["d"]], c, p)
            for c in r["cases"]
            if c["nonsolvable_witness"] is not None and c["non_p_product_witness"] is not None
        )
    if name == "steinberg-nonconstancy":
        ct = get_chartab(meta)
        st = r["summary"]["steinberg_row"]
        for c in r["cases"]:
            if c.get("classes"):
                k1, k2 = c["classes"]
                if not all(character_constant(ct, c["i"], c["j"], k) > 0 for k in (k1, k2)):
                    return False
                if ct.values[st][k1] == ct.values[st][k2]:
                    return False
        return True
    return True


# ---------------------------------------------------------------- curated sweeps and demos

BS_CURATED = [
    {"family": "Alt", "n": 5}, {"family": "Alt", "n": 6}, {"family": "Alt", "n": 7}, {"family": "Alt", "n": 8},
    {"family": "Sym", "n": 5}, {"family": "Sym", "n": 6}, {"family": "Sym", "n": 7}, {"family": "Sym", "n": 8},
    {"family": "PSL", "d": 2, "q": 7}, {"family": "PSL", "d": 2, "q": 8}, {"family": "PSL", "d": 2, "q": 11},
    {"family": "PSL", "d": 2, "q": 13}, {"family": "PSL", "d": 2, "q": 16}, {"family": "PSL", "d": 2, "q": 17},
    {"family": "PSL", "d": 2, "q": 19}, {"family": "PSL", "d": 3, "q": 3}, {"family": "PSL", "d": 3, "q": 4},
    {"family": "PSU", "d": 3, "q": 3}, {"family": "PSp", "d": 4, "q": 3}, {"family": "Sp", "d": 4, "q": 2},
    {"family": "PGL", "d": 2, "q": 7}, {"family": "PGL", "d": 2, "q": 11}, {"family": "SL", "d": 2, "q": 5},
    {"family": "SL", "d": 2, "q": 7}, {"family": "SL", "d": 2, "q": 9}, {"family": "GL", "d": 2, "q": 4},
    {"family": "Explicit", "name": "M11"},
    {"family": "Wreath", "inner": {"family": "Alt", "n": 5}, "m": 2},
    {"family": "Wreath", "inner": {"family": "Cyclic", "n": 5}, "m": 2},
    {"family": "Wreath", "inner": {"family": "Cyclic", "n": 7}, "m": 2},
    {"family": "Wreath", "inner": {"family": "Cyclic", "n": 5}, "m": 3},
    {"family": "Direct", "factors": [{"family": "Alt", "n": 5}, {"family": "Cyclic", "n": 5}]},
    {"family": "Direct", "factors": [{"family": "Alt", "n": 5}, {"family": "Alt", "n": 5}]},
    {"family": "Direct", "factors": [{"family": "PSL", "d": 2, "q": 7}, {"family": "Cyclic", "n": 7}]},
    {"family": "Direct", "factors": [{"family": "Cyclic", "n": 5}, {"family": "Cyclic", "n": 5}]},
]

WREATH_A5 = {"family": "Wreath", "inner": {"family": "Alt", "n": 5}, "m": 2}
GL24_TAU = {"family": "AutExtension", "base": {"family": "GL", "d": 2, "q": 4}, "aut": "graph-tau"}
FROBENIUS_21 = {"family": "Explicit", "name": "F21", "generators": [[1, 2, 3, 4, 5, 6, 0], [0, 2, 4, 6, 1, 3, 5]]}


def _class_where(t: ClassTable, pred) -> int:
    hits = [i for i, r in enumerate(t.reps) if pred(r, i)]
    if len(hits) != 1:
        raise InvariantViolation(f"expected one matching class, found {len(hits)}")
    return hits[0]


def wreath_classes(t: ClassTable) -> tuple[int, int]:
    """(one-coordinate involution class, coordinate-swap class) in A5 wr C2 on 10 points."""
    c = _class_where(t, lambda r, i: r.order() == 2 and len(r.support()) == 4)
    d = _class_where(t, lambda r, i: r.order() == 2 and len(r.support()) == 10)
    return c, d


def demo_counterexamples(cache: Cache | None = None) -> list[dict]:
    """Non-simple counterexamples and small-q analogues, each with its expected outcome."""
    from .zoo import special_element

    out = []

    def add(name, expected, got, witness_ok, detail):
        out.append({"name": name, "expected": expected, "observed": got, "witness_rechecked": witness_ok,
                    "matches": expected == got and witness_ok, "detail": detail})

    # A4: a product of two classes that is a single class
    r = verify_arad_herzog({"family": "Alt", "n": 4}, cache)
    add("A4 single-class product", "fails", r.verdict, recheck(r), {"witnesses": r.witnesses})

    # nonabelian group of order 21, 3-element classes a, b with b not conjugate to a^-1
    m = make_group(FROBENIUS_21)
    t = get_classes(m, cache)
    threes = [i for i in range(len(t)) if t.element_orders[i] == 3]
    a = threes[0]
    b = next(j for j in threes if j != t.inverse_map[a])
    r = verify_arad_herzog(m, cache, pairs=[(a, b)])
    add("order-21 single-class product", "fails", r.verdict, recheck(r), {"witnesses": r.witnesses})

    # A5 wr C2: factorization and single-class product for (one-coordinate involution, swap)
    m = make_group(WREATH_A5)
    t = get_classes(m, cache)
    c, d = wreath_classes(t)
    rs = verify_szep(m, cache, pairs=[(c, d)])
    ra = verify_arad_herzog(m, cache, pairs=[(c, d)])
    add("wreath factorization", "fails", rs.verdict, recheck(rs), {"witnesses": rs.witnesses})
    add("wreath single-class product", "fails", ra.verdict, recheck(ra), {"witnesses": ra.witnesses})
    demo = bs_hypothesis_demo(m, c, d, 2, cache)
    got = "all_p without p-group closure" if demo["all_p"] and not demo["closures_equal"] and not demo["conclusion"] else "other"
    add("wreath Baer-Suzuki hypothesis necessity", "all_p without p-group closure", got, True, demo)

    # GL2(4) extended by the graph automorphism: G = C(tau) C(x)
    m = make_group(GL24_TAU)
    tau = special_element(m, "graph-involution-class-rep")
    x = special_element(m, "pseudoreflection-image")
    fac = szep_factorization(m.group, tau, x)
    ok = _recheck_factorization(m.group, {"a": tau.to_json(), "b": x.to_json()})
    add("GL2(4)<tau> factorization", True, fac.factors, ok, {"tau": tau.to_json(), "x": x.to_json(), **fac.to_json()})
    t = get_classes(m, cache)
    i, j = t.identify(tau), t.identify(x)
    ra = verify_arad_herzog(m, cache, pairs=[(min(i, j), max(i, j))])
    add("GL2(4)<tau> single-class product", "fails", ra.verdict, recheck(ra), {"witnesses": ra.witnesses})

    # Sp4(3): C(transvection) has three orbits on the class of an involution
    m = make_group({"family": "Sp", "d": 4, "q": 3})
    cnt = centralizer_orbit_count(m.group, special_element(m, "transvection"), special_element(m, "involution"))
    add("Sp4(3) transvection/involution double cosets", 3, cnt.count, True, {"orbit_sizes": cnt.orbit_sizes})

    # Sp4(2): transvection times form-vanishing involution is all unipotent, but not one class
    m = make_group({"family": "Sp", "d": 4, "q": 2})
    r = verify_unipotent_products(m, cache)
    add("Sp4(2) unipotent exception", "exception-case", r.verdict, recheck(r), {"witnesses": r.witnesses})
    return out
