"""Command-line surface: invariants, fillings, intervals, gluings, censuses.

Exit codes: 0 success, 1 domain error (with a machine-readable reason),
2 usage error.  Inputs may be inline text or paths to files holding the same
text.  Loops use the word format of the loops module, trees the line format
of the plumbing module; slopes are 'p/q' with 'inf' for 1/0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from .detection import SlopeSet, lspace_interval
from .gluing import glue_is_lspace
from .loops import Loop, WordError, dualize, format_loops, parse_loops
from .oracle import fill_oracle, pair_is_lspace
from .plumbing import (
    PipelineError,
    PlumbingTree,
    TreeError,
    cfd,
    hf_dim_closed,
    n_t_tree,
    parse_tree,
)
from .twists import FillingResult, Slope, ex, fill, twist


class DomainError(ValueError):
    pass


def _read_input(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _parse_loops_arg(arg: str) -> List[Loop]:
    try:
        return parse_loops(_read_input(arg))
    except WordError as err:
        raise DomainError(f"bad loop input: {err}") from None


def _parse_tree_arg(arg: str) -> PlumbingTree:
    try:
        return parse_tree(_read_input(arg))
    except TreeError as err:
        raise DomainError(f"bad tree input: {err}") from None


def _parse_slope(arg: str) -> Slope:
    try:
        return Slope.parse(arg)
    except ValueError as err:
        raise DomainError(f"bad slope {arg!r}: {err}") from None


def _emit(data: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _slope_set_json(s: SlopeSet) -> dict:
    out = {"kind": s.kind, "certified": s.certified}
    if s.a is not None:
        out["from"] = str(s.a)
    if s.b is not None:
        out["to"] = str(s.b)
    return out


def _filling_json(r: FillingResult) -> dict:
    return {
        "dim": r.dim,
        "chi_abs": r.chi_abs,
        "per_loop": [list(x) for x in r.per_loop],
        "is_lspace": r.is_lspace,
    }


def _threads() -> int:
    env = os.environ.get("LOOPFLOER_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _cmd_cfd(args) -> None:
    loops = cfd(_parse_tree_arg(args.tree))
    if args.oracle:
        # no independent route recomputes a bordered invariant, but both
        # preferred fillings of the claimed loops must match the pairing
        for slope in (Slope(1, 0), Slope(0, 1)):
            fast = fill(loops, slope)
            ref = fill_oracle(loops, slope)
            if (ref.dim, ref.chi_abs, ref.is_lspace) != (
                fast.dim,
                fast.chi_abs,
                fast.is_lspace,
            ):
                raise DomainError(
                    f"oracle mismatch on the {slope} filling of the result"
                )
    _emit({"loops": [str(l) for l in loops]}, format_loops(loops), args.format)


def _cmd_hf(args) -> None:
    tree = _parse_tree_arg(args.tree)
    try:
        dim, lspace = hf_dim_closed(tree)
    except (PipelineError, TreeError) as err:
        raise DomainError(str(err)) from None
    if args.oracle:
        slow_dim, slow_l = hf_dim_closed(tree, use_fast=False)
        if (slow_dim, slow_l) != (dim, lspace):
            raise DomainError(
                f"oracle mismatch: fast ({dim},{lspace}) vs fill ({slow_dim},{slow_l})"
            )
    _emit(
        {"dim": dim, "is_lspace": lspace},
        f"dim={dim} lspace={'yes' if lspace else 'no'}",
        args.format,
    )


def _cmd_fill(args) -> None:
    loops = _parse_loops_arg(args.loops)
    slope = _parse_slope(args.slope)
    res = fill(loops, slope)
    if args.oracle:
        ref = fill_oracle(loops, slope)
        if (ref.dim, ref.chi_abs, ref.is_lspace) != (res.dim, res.chi_abs, res.is_lspace):
            raise DomainError(f"oracle mismatch: fast {res} vs oracle {ref}")
    _emit(_filling_json(res), str(res), args.format)


def _cmd_interval(args) -> None:
    loops = _parse_loops_arg(args.loops)
    try:
        s = lspace_interval(loops)
    except ValueError as err:
        raise DomainError(str(err)) from None
    _emit({"interval": _slope_set_json(s)}, str(s), args.format)


def _cmd_glue(args) -> None:
    a = _parse_loops_arg(args.loops_a)
    b = _parse_loops_arg(args.loops_b)
    try:
        ans = glue_is_lspace(a, b)
    except ValueError as err:
        raise DomainError(str(err)) from None
    if args.oracle:
        ref = pair_is_lspace(a, b)
        if ref != ans:
            raise DomainError(f"oracle mismatch: gluing {ans} vs pairing {ref}")
    _emit({"is_lspace": ans}, "yes" if ans else "no", args.format)


def _cmd_dualize(args) -> None:
    # rewrite each input word in the alphabet it was not given in
    from .loops import format_word, parse_word, word_in

    text = _read_input(args.loops)
    text = " ".join(line.split("#")[0] for line in text.splitlines())
    out = []
    try:
        for part in (p for p in text.split("|") if p.strip()):
            w = parse_word(part)
            other = "standard" if w.star else "dual"
            out.append(word_in(Loop(w), other))
    except WordError as err:
        raise DomainError(str(err)) from None
    _emit(
        {"words": [format_word(w) for w in out]},
        " | ".join(f"({w})" for w in out),
        args.format,
    )


def _cmd_twist(args) -> None:
    loops = _parse_loops_arg(args.loops)
    for op in args.ops:
        if op == "ex":
            loops = [ex(l) for l in loops]
            continue
        if "^" in op:
            kind, _, power = op.partition("^")
            n = int(power)
        else:
            kind, n = op, 1
        if kind not in ("tw", "du"):
            raise DomainError(f"unknown twist operation {op!r}")
        loops = [twist(l, kind, n) for l in loops]
    _emit({"loops": [str(l) for l in loops]}, format_loops(loops), args.format)


def _census_row(t: int, oracle: bool):
    from .loops import rational_longitude

    loops = cfd(n_t_tree(t))
    zero = Slope(0, 1)
    res = fill(loops, zero)
    if oracle:
        ref = fill_oracle(loops, zero)
        if (ref.dim, ref.chi_abs, ref.is_lspace) != (res.dim, res.chi_abs, res.is_lspace):
            raise DomainError(f"oracle mismatch in census row t={t}")
    return {
        "t": t,
        "loops": [str(l) for l in loops],
        "longitude": str(rational_longitude(loops)),
        "dual_fill_dim": res.dim,
        "dual_fill_is_lspace": res.is_lspace,
    }


def _cmd_census(args) -> None:
    if args.family != "nt":
        raise DomainError(f"unknown census family {args.family!r}")
    lo, _, hi = args.range.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise DomainError(f"bad range {args.range!r}") from None
    if lo_i < 2 or hi_i < lo_i:
        raise DomainError(f"bad range {args.range!r}")
    ts = list(range(lo_i, hi_i + 1))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda t: _census_row(t, args.oracle), ts))
    if args.format == "json":
        print(json.dumps({"family": args.family, "rows": rows}, sort_keys=True))
    else:
        for row in rows:
            print(
                f"t={row['t']} longitude={row['longitude']} "
                f"dual_fill_dim={row['dual_fill_dim']} "
                f"lspace={'yes' if row['dual_fill_is_lspace'] else 'no'} "
                f"loops: {' | '.join(row['loops'])}"
            )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopfloer", description=__doc__)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="recompute every answer with the pairing oracle and fail on mismatch",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cfd", help="bordered invariant of a plumbing tree")
    s.add_argument("tree")
    s.set_defaults(func=_cmd_cfd)

    s = sub.add_parser("hf", help="total dimension for a closed plumbing tree")
    s.add_argument("tree")
    s.set_defaults(func=_cmd_hf)

    s = sub.add_parser("fill", help="Dehn filling of loops at a slope")
    s.add_argument("loops")
    s.add_argument("slope")
    s.set_defaults(func=_cmd_fill)

    s = sub.add_parser("interval", help="the set of L-space slopes")
    s.add_argument("loops")
    s.set_defaults(func=_cmd_interval)

    s = sub.add_parser("glue", help="is the glued pairing an L-space?")
    s.add_argument("loops_a")
    s.add_argument("loops_b")
    s.set_defaults(func=_cmd_glue)

    s = sub.add_parser("dualize", help="rewrite loops in the other alphabet")
    s.add_argument("loops")
    s.set_defaults(func=_cmd_dualize)

    s = sub.add_parser("twist", help="apply tw^n / du^n / ex operations")
    s.add_argument("loops")
    s.add_argument("ops", nargs="+", metavar="op", help="tw^3 du^-2 ex ...")
    s.set_defaults(func=_cmd_twist)

    s = sub.add_parser("census", help="sweep a family of plumbing trees")
    s.add_argument("--family", required=True)
    s.add_argument("--range", required=True, help="like 2..6")
    s.set_defaults(func=_cmd_census)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # keep argparse from reading negative slopes like -2/3 as options
    import re

    argv = [" " + a if re.fullmatch(r"-\d+(/\d+)?", a) else a for a in argv]
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        args.func(args)
    except DomainError as err:
        print(json.dumps({"error": str(err)}), file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
