"""Command-line front end.

Exit codes: 0 success, 1 verification failure (conjecture, oracle or fermat
mismatch, or a violated internal identity), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from detsurf import cohomology, ff_oracle, nl_lattice, pairs
from detsurf.cohomology import InvariantError

log = logging.getLogger("detsurf")

COMMANDS = ("pairs", "report", "table", "quartics", "conjecture", "oracle", "fermat")

# fixed CSV column order per command
CSV_COLUMNS = {
    "pairs": ["d", "t", "a", "b", "members"],
    "report": [
        "d", "t", "a", "b", "d_C", "g_C", "h1_Od", "kappa", "h1_normal",
        "hilbert_dim", "dim", "codim", "h0_OXC", "classification",
    ],
    "table": ["d", "count", "multiset"],
    "quartics": ["label", "a", "b", "d_C", "g_C", "delta", "coset", "degree"],
    "conjecture": ["d", "t", "n_classes", "dim_min", "dim_max", "passed"],
    "oracle": ["d", "t", "a", "b", "seed", "rank", "dim_oracle", "dim", "match"],
    "fermat": ["d", "t", "a", "b", "modulus", "match"],
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d: list[int] = field(default_factory=list)
    t: int | None = None
    d_max: int | None = None
    d_min: int = 3
    format: str = "json"
    seed: int = 0
    seeds: int = 3
    modulus: int | None = None
    raw_pairs: bool = False
    no_transpose_dedup: bool = False
    out: str | None = None


@dataclass
class Result:
    records: list[dict]
    text: list[str]
    ok: bool = True
    summary: dict | None = None


def _seq(xs) -> str:
    return " ".join(str(x) for x in xs)


def _need_degree(cfg: RunConfig, lo: int = 3) -> list[int]:
    if not cfg.d:
        raise UsageError(f"{cfg.command}: a degree d is required")
    for d in cfg.d:
        if d < lo:
            raise UsageError(f"{cfg.command}: degree must be at least {lo}, got {d}")
    return cfg.d


def _pairs(cfg: RunConfig) -> Result:
    recs, text = [], []
    for d in _need_degree(cfg):
        classes = pairs.enumerate_classes(
            d, transpose_dedup=not cfg.no_transpose_dedup, raw=cfg.raw_pairs
        )
        for c in classes:
            if cfg.t is not None and c.t != cfg.t:
                continue
            rep = c.representative
            recs.append({
                "d": d,
                "t": c.t,
                "a": list(rep.a),
                "b": list(rep.b),
                "members": [{"a": list(m.a), "b": list(m.b)} for m in c.members],
            })
            others = [m for m in c.members if m != rep]
            dual = f"  ~  {others[0]}" if others else ""
            text.append(f"{d}  t={c.t}  {rep}{dual}")
    return Result(recs, text)


def _report(cfg: RunConfig) -> Result:
    recs, text = [], []
    for d in _need_degree(cfg):
        for c in pairs.enumerate_classes(d):
            if cfg.t is not None and c.t != cfg.t:
                continue
            r = cohomology.component_report(c.representative).as_dict()
            recs.append(r)
            text.append(
                f"{d}  t={r['t']}  a={tuple(r['a'])} b={tuple(r['b'])}  d_C={r['d_C']} g_C={r['g_C']}"
                f"  dim={r['dim']} codim={r['codim']} kappa={r['kappa']}  {r['classification']}"
            )
    return Result(recs, text)


def _table(cfg: RunConfig) -> Result:
    recs, text = [], []
    for d in _need_degree(cfg):
        row = cohomology.component_table(d)
        recs.append({"d": d, "count": row.count, "codims": list(row.codims), "multiset": row.multiset()})
        text.append(f"{d}  {row.multiset()}  {row.count}")
    return Result(recs, text)


def _quartics(cfg: RunConfig) -> Result:
    recs, text = [], []
    for q in nl_lattice.quartic_divisor_degrees():
        recs.append(q.as_dict())
        text.append(
            f"{q.label}  a={q.pair.a} b={q.pair.b}  d_C={q.d_C} g_C={q.g_C}"
            f"  Delta={q.delta} delta={q.coset}  degree={q.degree}"
        )
    return Result(recs, text)


def _conjecture(cfg: RunConfig) -> Result:
    if cfg.d_max is None:
        raise UsageError("conjecture: --d-max is required")
    if cfg.d_max < 3:
        raise UsageError(f"conjecture: --d-max must be at least 3, got {cfg.d_max}")
    t0 = time.perf_counter()
    cells = cohomology.verify_conjecture(cfg.d_max, cfg.d_min)
    log.info("conjecture sweep to d=%d took %.2fs", cfg.d_max, time.perf_counter() - t0)
    recs, text = [], []
    for c in cells:
        rec = {
            "d": c.d, "t": c.t, "n_classes": c.n_classes,
            "dim_min": c.dim_min, "dim_max": c.dim_max, "passed": c.passed,
        }
        if c.counterexamples:
            rec["counterexamples"] = [
                {"a": list(p.a), "b": list(p.b), "dim": v} for p, v in c.counterexamples
            ]
        recs.append(rec)
    ok = all(c.passed for c in cells)
    for d in sorted({c.d for c in cells}):
        mine = [c for c in cells if c.d == d]
        n = sum(c.n_classes for c in mine)
        bad = [c.t for c in mine if not c.passed]
        text.append(f"{d}  classes={n}  " + ("pass" if not bad else f"FAIL t={bad}"))
    return Result(recs, text, ok, {"d_max": cfg.d_max, "passed": ok})


def _oracle(cfg: RunConfig) -> Result:
    modulus = cfg.modulus if cfg.modulus is not None else ff_oracle.default_modulus()
    recs, text, ok = [], [], True
    for d in _need_degree(cfg):
        for c in pairs.enumerate_classes(d):
            if cfg.t is not None and c.t != cfg.t:
                continue
            p = c.representative
            expected = cohomology.dim_det(p)
            for k in range(cfg.seeds):
                s = ff_oracle.jacobian_sample(p, modulus, cfg.seed + k)
                match = s.dim == expected
                ok &= match
                recs.append({
                    "d": d, "t": p.t, "a": list(p.a), "b": list(p.b), "seed": s.seed_used,
                    "rank": s.rank, "dim_oracle": s.dim, "dim": expected, "match": match,
                })
                text.append(
                    f"{d}  {p}  seed={s.seed_used}  rank-1={s.dim}  dim={expected}  "
                    + ("ok" if match else "MISMATCH")
                )
    return Result(recs, text, ok)


def _fermat(cfg: RunConfig) -> Result:
    recs, text, ok = [], [], True
    for d in _need_degree(cfg, lo=2):
        modulus = cfg.modulus if cfg.modulus is not None else ff_oracle.fermat_modulus(d)
        for p in pairs.enumerate_pairs(d):
            if cfg.t is not None and p.t != cfg.t:
                continue
            match = ff_oracle.fermat_check(p, modulus)
            ok &= match
            recs.append({"d": d, "t": p.t, "a": list(p.a), "b": list(p.b), "modulus": modulus, "match": match})
            text.append(f"{d}  {p}  p={modulus}  " + ("ok" if match else "MISMATCH"))
    return Result(recs, text, ok)


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "pairs": _pairs,
    "report": _report,
    "table": _table,
    "quartics": _quartics,
    "conjecture": _conjecture,
    "oracle": _oracle,
    "fermat": _fermat,
}


def render(cfg: RunConfig, res: Result) -> str:
    if cfg.format == "text":
        return "\n".join(res.text) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        cols = CSV_COLUMNS[cfg.command]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in res.records:
            row = []
            for c in cols:
                v = r[c]
                if c == "members":
                    v = ";".join(f"{_seq(m['a'])}|{_seq(m['b'])}" for m in v)
                elif isinstance(v, list):
                    v = _seq(v)
                elif isinstance(v, bool):
                    v = str(v).lower()
                row.append(v)
            w.writerow(row)
        return buf.getvalue()
    payload: dict = {"command": cfg.command, "records": res.records}
    if res.summary:
        payload.update(res.summary)
    return json.dumps(payload, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    if cfg.command not in HANDLERS:
        print(f"error: unknown command {cfg.command!r}", file=stderr)
        return 2
    try:
        res = HANDLERS[cfg.command](cfg)
    except (UsageError, ValueError, nl_lattice.OutOfTableError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (InvariantError, ArithmeticError, AssertionError) as exc:
        print(f"verification failure: {exc}", file=stderr)
        return 1
    text = render(cfg, res)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not res.ok:
        print(f"verification failure in {cfg.command}", file=stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="FILE")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="detsurf",
        description="Families of determinantal surfaces in P^3: dimensions, tables, quartic divisors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pairs", parents=[common], help="list canonical classes of admissible pairs")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--t", type=int)
    p.add_argument("--raw-pairs", action="store_true", help="include unreduced pairs (a_t <= d)")
    p.add_argument("--no-transpose-dedup", action="store_true", help="do not merge transpose duals")

    p = sub.add_parser("report", parents=[common], help="invariants of every class of degree d")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--t", type=int)

    p = sub.add_parser("table", parents=[common], help="count and codimension multiset")
    p.add_argument("d", type=int, nargs="+")

    sub.add_parser("quartics", parents=[common], help="degrees of the five quartic divisors")

    p = sub.add_parser("conjecture", parents=[common], help="min/max dimension sweep")
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--d-min", type=int, default=3)

    p = sub.add_parser("oracle", parents=[common], help="Jacobian rank vs dimension formula")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--t", type=int)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--modulus", type=int, help="prime below 2**31 (default $DETSURF_MODULUS or 2147483647)")

    p = sub.add_parser("fermat", parents=[common], help="check the Fermat matrix for every reduced pair")
    p.add_argument("d", type=int, nargs="+")
    p.add_argument("--t", type=int)
    p.add_argument("--modulus", type=int, help="prime = 1 mod 2d (default: least such prime above 10^4)")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        d=list(getattr(ns, "d", None) or []),
        t=getattr(ns, "t", None),
        d_max=getattr(ns, "d_max", None),
        d_min=getattr(ns, "d_min", 3),
        format=ns.format,
        seed=ns.seed,
        seeds=getattr(ns, "seeds", 3),
        modulus=getattr(ns, "modulus", None),
        raw_pairs=getattr(ns, "raw_pairs", False),
        no_transpose_dedup=getattr(ns, "no_transpose_dedup", False),
        out=ns.out,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
