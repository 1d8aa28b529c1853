"""Command-line front end: one JSON document on stdout, summaries on stderr.

Exit status: 0 when the computation finished or the verdict holds (including
an accepted exception case), 1 when a verdict fails, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import verify as V
from .algebra import centralizer_orbit_count, product_support
from .cache import Cache, get_chartab, get_classes
from .errors import CforgeError
from .perm import CAPS
from .zoo import make_group, zsigmondy

COMMANDS = (
    "classes", "chartab", "product", "dcoset", "ah", "szep", "fixchar",
    "steinberg", "unip", "bs", "bsas", "zsig", "demo-counterexamples",
)


class UsageError(CforgeError):
    pass


def _parse_group(text: str | None) -> dict:
    if not text:
        raise UsageError("--group is required for this command")
    src = text
    if not text.lstrip().startswith("{") and os.path.exists(text):
        with open(text) as fh:
            src = fh.read()
    try:
        spec = json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--group is neither a file nor valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise UsageError("group spec must be a JSON object")
    return spec


def _parse_pair(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError("--classes expects two indices, e.g. 1,2") from exc
    return i, j


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cforge", description="Exact class-product computations for small finite groups.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--group", help="group spec: path to a JSON file or inline JSON")
    ap.add_argument("--cache-dir", help="cache directory (default: $CFORGE_CACHE, else no cache)")
    ap.add_argument("--cap-order", type=int, help=f"largest group order accepted (default {CAPS.max_order})")
    ap.add_argument("--cap-class", type=int, help=f"largest class enumerated (default {CAPS.max_class})")
    ap.add_argument("--threads", type=int, default=1, help="accepted for compatibility; all sweeps run serially")
    ap.add_argument("--p", type=int, help="prime for characteristic-dependent commands")
    ap.add_argument("--classes", help="class pair i,j")
    ap.add_argument("--q", type=int, help="zsig: base")
    ap.add_argument("--n", type=int, help="zsig: exponent")
    ap.add_argument("--no-timing", action="store_true", help="emit elapsed_ms as null for byte-stable output")
    return ap


def _check_pair(t, pair):
    k = len(t)
    for x in pair:
        if not 0 <= x < k:
            raise UsageError(f"class index {x} out of range 0..{k - 1}")


def _run(args) -> tuple[dict, int, str]:
    cmd = args.command
    cache = Cache.from_env(args.cache_dir)
    timing = not args.no_timing
    pair = _parse_pair(args.classes)

    if cmd == "zsig":
        if args.q is None or args.n is None:
            raise UsageError("zsig needs --q and --n")
        ell = zsigmondy(args.q, args.n)
        return {"q": args.q, "n": args.n, "prime": ell}, 0, f"zsigmondy({args.q}, {args.n}) = {ell}"

    if cmd == "demo-counterexamples":
        items = V.demo_counterexamples(cache)
        bad = [d["name"] for d in items if not d["matches"]]
        msg = "all examples reproduce" if not bad else "mismatch: " + ", ".join(bad)
        return {"examples": items, "all_match": not bad}, (1 if bad else 0), msg

    meta = make_group(_parse_group(args.group))

    if cmd == "classes":
        t = get_classes(meta, cache)
        return {"spec": json.loads(meta.key()), "classes": t.to_json(), "count": len(t)}, 0, f"{len(t)} classes"
    if cmd == "chartab":
        ct = get_chartab(meta, cache)
        return {"spec": json.loads(meta.key()), "chartab": ct.to_json()}, 0, f"{len(ct)} irreducible characters"
    if cmd in ("product", "dcoset"):
        if pair is None:
            raise UsageError(f"{cmd} needs --classes i,j")
        t = get_classes(meta, cache)
        _check_pair(t, pair)
        i, j = pair
        if cmd == "product":
            sup = product_support(t, i, j)
            return {"spec": json.loads(meta.key()), "support": sup.to_json(),
                    "identity_holds": sup.check_identity(t)}, 0, f"support size {len(sup)}"
        dc = centralizer_orbit_count(meta.group, t.reps[i], t.reps[j])
        return {"spec": json.loads(meta.key()), "i": i, "j": j, **dc.to_json()}, 0, f"{dc.count} orbits"

    if cmd == "bs" and pair is not None:
        if not args.p:
            raise UsageError("bs needs --p")
        t = get_classes(meta, cache)
        _check_pair(t, pair)
        scan = V.bs_pair_scan(t, [pair[0]], [pair[1]], args.p)
        return {"spec": json.loads(meta.key()), "C": pair[0], "D": pair[1], "p": args.p, **scan.to_json()}, 0, f"all_p = {scan.all_p}"
    if cmd == "bsas" and pair is not None:
        if not args.p:
            raise UsageError("bsas needs --p")
        t = get_classes(meta, cache)
        _check_pair(t, pair)
        r = V.bsas_probe(meta.group, t.reps[pair[0]], t.reps[pair[1]], args.p)
        found = r["nonsolvable_witness"] is not None and r["non_p_product_witness"] is not None
        return {"spec": json.loads(meta.key()), "c": pair[0], "d": pair[1], "p": args.p, **r}, (0 if found else 1), f"both witnesses: {found}"

    pairs = [pair] if pair is not None else None
    if cmd == "ah":
        rep = V.verify_arad_herzog(meta, cache, pairs=pairs)
    elif cmd == "szep":
        rep = V.verify_szep(meta, cache, pairs=pairs)
    elif cmd == "fixchar":
        rep = V.verify_fixed_point_nonconstancy(meta, cache=cache)
    elif cmd == "steinberg":
        rep = V.verify_steinberg_nonconstancy(meta, cache, p=args.p)
    elif cmd == "unip":
        rep = V.verify_unipotent_products(meta, cache, p=args.p)
    elif cmd == "bs":
        if not args.p:
            raise UsageError("bs needs --p")
        rep = V.verify_bs_theorem(meta, args.p, cache)
    elif cmd == "bsas":
        if not args.p:
            raise UsageError("bsas needs --p")
        rep = V.verify_bsas(meta, args.p, cache)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {cmd}")
    code = 1 if rep.verdict == "fails" else 0
    return rep.to_json(timing), code, f"{rep.verifier}: {rep.verdict} ({len(rep.cases)} cases)"


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="cforge: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.cap_order is not None:
        CAPS.max_order = args.cap_order
    if args.cap_class is not None:
        CAPS.max_class = args.cap_class
    try:
        doc, code, msg = _run(args)
    except (CforgeError, ValueError, OSError) as exc:
        print(f"cforge: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")
    print(f"cforge {args.command}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
