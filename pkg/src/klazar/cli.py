"""Command-line entry point: ``klazar <subcommand> ...``.

Exit status is 0 on success, 2 for unparsable or invalid input and 3 when a
resource guard refuses the computation.  Nothing is written to stdout
before a guard refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import secrets
import sys
import time
from typing import Optional

from . import enumeration as en
from .cache import SequenceCache, default_cache_dir
from .core import MalformedPartitionError, SetPartition, contains, is_layered, parse_partition, rank
from .correspond import parse_tuple
from .errors import GuardError
from .matrix import (DMatrix, build_perm_matrix, count_avoiding_matrices, find_embedding,
                     max_ones_avoiding)
from .montecarlo import mc_report
from .stats import permutability, thickness

log = logging.getLogger("klazar")

EXIT_OK, EXIT_USAGE, EXIT_GUARD = 0, 2, 3


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------

def _partition(text: str) -> SetPartition:
    try:
        return parse_partition(text)
    except MalformedPartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _tuple(text: str):
    try:
        return parse_tuple(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _matrix(text: str) -> DMatrix:
    """A matrix as inline JSON, ``@path`` to a JSON file, or a permutation tuple."""
    try:
        if text.startswith("@"):
            with open(text[1:]) as fh:
                return DMatrix.from_json(json.load(fh))
        if text.lstrip().startswith("{"):
            return DMatrix.from_json(json.loads(text))
        return build_perm_matrix(parse_tuple(text))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad matrix {text!r}: {exc}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an integer")


def _resolve(flag_value, env_name: str, default: int) -> int:
    # flags beat environment variables beat built-in defaults
    return flag_value if flag_value is not None else _env_int(env_name, default)


def _cache(args) -> Optional[SequenceCache]:
    if getattr(args, "no_cache", False):
        return None
    directory = args.cache_dir or default_cache_dir()
    return SequenceCache(directory, en.ENGINE_VERSION)


# -- subcommands -----------------------------------------------------------

def cmd_contains(args) -> dict:
    w = contains(args.host, args.pattern)
    return {"host": str(args.host), "pattern": str(args.pattern),
            "contains": w is not None, "witness": list(w) if w is not None else None}


def cmd_stats(args) -> dict:
    p = args.partition
    if p.n < 1:
        raise UsageError("stats needs a non-empty partition")
    th, cert = thickness(p)
    pm, split = permutability(p)
    return {"partition": str(p), "n": p.n, "blocks": p.num_blocks, "rank": rank(p),
            "layered": is_layered(p), "thickness": th, "thickness_certificate": list(cert),
            "permutability": pm, "split": split.intervals}


def _cached_count(args, key: str, compute) -> tuple[int, bool]:
    cache = _cache(args)
    if cache is not None:
        rows = cache.lookup(key) or {}
        if str(args.n) in rows:
            return int(rows[str(args.n)]), True
    count = compute()
    if cache is not None:
        cache.store(key, {str(args.n): str(count)})
    return count, False


def cmd_count(args) -> dict:
    max_n = _resolve(args.max_n, "KLAZAR_MAX_N", en.DEFAULT_MAX_N)
    workers = _resolve(args.workers, "KLAZAR_WORKERS", 1)
    if args.oracle:
        rep = en.count_avoiders_oracle(args.pattern, args.n, max_n=min(max_n, 10))
        return rep.to_json()
    if args.m is not None:
        if not 0 <= args.m <= args.n:
            raise UsageError("need 0 <= m <= n")
        en._check_n(args.n, max_n)
        key = f"S:{args.pattern}:{args.m}"
        compute = lambda: en.count_avoiders_by_blocks(args.pattern, args.n, args.m, max_n, workers).count
    else:
        en._check_n(args.n, max_n)
        key = f"B:{args.pattern}"
        compute = lambda: en.count_avoiders(args.pattern, args.n, max_n, workers).count
    t0 = time.perf_counter()
    count, cached = _cached_count(args, key, compute)
    rep = en.CountReport(str(args.pattern), args.n, count, "pruned", m=args.m,
                         elapsed_ms=(time.perf_counter() - t0) * 1000)
    return {**rep.to_json(), "cached": cached}


def cmd_parallel_count(args) -> dict:
    budget = _resolve(args.budget, "KLAZAR_TUPLE_BUDGET", en.DEFAULT_TUPLE_BUDGET)
    return en.count_parallel_avoiders(args.pattern, args.n, budget=budget).to_json()


CONSTRUCT_LIMIT = 10 ** 5


def cmd_construct(args) -> dict:
    if args.pattern.n < 1:
        raise UsageError("construct needs a non-empty pattern")
    pm, _ = permutability(args.pattern)
    if pm >= 2 and args.n >= pm and args.n % pm == 0:
        size = math.factorial(args.n // pm) ** (pm - 1)
        if size > CONSTRUCT_LIMIT:
            raise GuardError(f"{size} partitions exceed the construct limit {CONSTRUCT_LIMIT}")
    parts = [str(p) for p in en.lowerbound_construction(args.pattern, args.n)]
    out = {"pattern": str(args.pattern), "n": args.n, "k": pm, "count": str(len(parts)),
           "method": "construction"}
    if args.verify:
        out["all_avoid"] = all(contains(parse_partition(s), args.pattern) is None for s in parts)
    out["partitions"] = parts
    return out


def cmd_exponents(args) -> dict:
    max_n = _resolve(args.max_n, "KLAZAR_MAX_N", en.DEFAULT_MAX_N)
    workers = _resolve(args.workers, "KLAZAR_WORKERS", 1)
    en._check_n(args.n_max, max_n)
    cache = _cache(args)
    key = f"B:{args.pattern}"
    known = (cache.lookup(key) if cache is not None else None) or {}
    rows = []
    fresh = {}
    for n in range(2, args.n_max + 1):
        if str(n) in known:
            count = int(known[str(n)])
        else:
            count = en.count_avoiders(args.pattern, n, max_n, workers).count
            fresh[str(n)] = str(count)
        rows.append(en.ExponentRow(n, count))
    if cache is not None and fresh:
        cache.store(key, fresh)
    return {"pattern": str(args.pattern),
            "rows": [{"n": r.n, "count": str(r.count), "ratio": r.ratio} for r in rows]}


def cmd_matrix(args) -> dict:
    if args.verb == "contains":
        if args.host is None:
            raise UsageError("matrix contains needs --host")
        emb = find_embedding(args.host, args.pattern)
        return {"verb": "contains", "contains": emb is not None}
    if args.r is None:
        raise UsageError(f"matrix {args.verb} needs --r")
    if args.verb == "max-ones":
        return {"verb": "max-ones", "r": args.r, "value": max_ones_avoiding(args.pattern, args.r)}
    return {"verb": "count", "r": args.r,
            "count": str(count_avoiding_matrices(args.pattern, args.r, method=args.method))}


def cmd_mc(args) -> dict:
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    if args.n < 1 or args.k < 1 or args.trials < 1 or args.r < 1:
        raise UsageError("n, k, trials and r must all be >= 1")
    return mc_report(args.n, args.k, args.trials, seed, args.r)


def cmd_cache(args) -> dict:
    cache = SequenceCache(args.cache_dir or default_cache_dir(), en.ENGINE_VERSION)
    if args.action == "clear":
        cache.clear()
    return {"action": args.action, "path": str(cache.path), "enabled": cache.enabled,
            "keys": cache.keys() if cache.enabled else []}


# -- output ----------------------------------------------------------------

def render_human(data: dict) -> str:
    """``key: value`` lines; strings verbatim, everything else as JSON."""
    lines = []
    for key, value in data.items():
        shown = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"{key}: {shown}")
    return "\n".join(lines) + "\n"


def parse_human(text: str, string_keys: set) -> dict:
    """Inverse of :func:`render_human` given which keys hold strings."""
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        out[key] = value if key in string_keys else json.loads(value)
    return out


def render_tsv(data: dict) -> str:
    if "rows" in data:
        rows = [en.ExponentRow(r["n"], int(r["count"]), r["ratio"]) for r in data["rows"]]
        return en.rows_to_tsv(rows)
    keys = list(data)
    return "\t".join(keys) + "\n" + "\t".join(
        v if isinstance(v, str) else json.dumps(v) for v in data.values()) + "\n"


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="format", action="store_const", const="json")
    group.add_argument("--human", dest="format", action="store_const", const="human")
    group.add_argument("--tsv", dest="format", action="store_const", const="tsv")
    fmt.set_defaults(format="json")

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--workers", type=int, help="worker processes (env KLAZAR_WORKERS)")
    engine.add_argument("--max-n", type=int, help="soft guard on n (env KLAZAR_MAX_N)")
    engine.add_argument("--cache-dir", help="sequence cache directory (env KLAZAR_CACHE_DIR)")
    engine.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="klazar", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("contains", parents=[fmt], help="Klazar containment with witness")
    p.add_argument("--host", type=_partition, required=True)
    p.add_argument("--pattern", type=_partition, required=True)
    p.set_defaults(func=cmd_contains, string_keys={"host", "pattern"})

    p = sub.add_parser("stats", parents=[fmt], help="rank, thickness, permutability")
    p.add_argument("--partition", type=_partition, required=True)
    p.set_defaults(func=cmd_stats, string_keys={"partition"})

    p = sub.add_parser("count", parents=[fmt, engine], help="B_n(pattern) or S(n, m, pattern)")
    p.add_argument("--pattern", type=_partition, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--oracle", action="store_true", help="unpruned brute-force count")
    p.set_defaults(func=cmd_count, string_keys={"pattern", "count", "method"})

    p = sub.add_parser("parallel-count", parents=[fmt], help="parallel avoiders of a tuple")
    p.add_argument("--pattern", type=_tuple, required=True, help='e.g. "12|21"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, help="max n!^k tuples (env KLAZAR_TUPLE_BUDGET)")
    p.set_defaults(func=cmd_parallel_count, string_keys={"pattern", "count", "method"})

    p = sub.add_parser("construct", parents=[fmt], help="lower-bound family of avoiders")
    p.add_argument("--pattern", type=_partition, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check every member avoids the pattern")
    p.set_defaults(func=cmd_construct, string_keys={"pattern", "count", "method"})

    p = sub.add_parser("exponents", parents=[fmt, engine], help="log B_n / (n log n) table")
    p.add_argument("--pattern", type=_partition, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_exponents, string_keys={"pattern"})

    p = sub.add_parser("matrix", parents=[fmt], help="d-dimensional 0-1 matrix probes")
    p.add_argument("verb", choices=["contains", "max-ones", "count"])
    p.add_argument("--pattern", type=_matrix, required=True,
                   help='JSON {"dims":..,"ones":..}, @file.json, or a tuple like "12|21"')
    p.add_argument("--host", type=_matrix)
    p.add_argument("--r", type=int)
    p.add_argument("--method", choices=["pruned", "exhaustive"], default="pruned")
    p.set_defaults(func=cmd_matrix, string_keys={"verb", "count"})

    p = sub.add_parser("mc", parents=[fmt], help="random (k+1)-dimensional orders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, help="omitted: drawn at random and reported")
    p.add_argument("--r", type=int, default=2)
    p.set_defaults(func=cmd_mc, string_keys=set())

    p = sub.add_parser("cache", parents=[fmt], help="inspect or clear the sequence cache")
    p.add_argument("action", choices=["show", "clear"])
    p.add_argument("--cache-dir")
    p.set_defaults(func=cmd_cache, string_keys={"action", "path"})
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s: %(message)s")
    try:
        data = args.func(args)
    except GuardError as exc:
        print(f"klazar: refused: {exc}", file=stderr)
        return EXIT_GUARD
    except (UsageError, ValueError) as exc:
        print(f"klazar: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.format == "human":
        stdout.write(render_human(data))
    elif args.format == "tsv":
        stdout.write(render_tsv(data))
    else:
        stdout.write(json.dumps(data) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
