"""Command line entry point.

    frameuncertainty verify --demo dft-pair --n 16 --p 1 --comb
    frameuncertainty coherence --demo dft-pair --n 4 [--gram gram.csv]
    frameuncertainty extremal --demo random --seed 3 --n 5
    frameuncertainty domain --r 1 --p 1 --tail power:1:3
    frameuncertainty demo-list

Exit codes: 0 success, 1 violation found, 2 input error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io as fio
from .extremal import ENUMERATION_CAP, dirac_comb, min_support_product
from .frames import FrameSystem, TailDescriptor, diagonal_system, in_domain, is_reconstructing
from .generators import DEMOS, demo_pair, reweighted, seed_stream
from .spaces import (
    CapacityError,
    ConstructionError,
    DomainError,
    PreconditionError,
    UnsupportedRepresentationError,
    Vector,
    as_exponent,
)
from .uncertainty import (
    F_OF_OMEGA,
    G_OF_TAU,
    RECONSTRUCTION_TOL,
    BoundReport,
    check_hilbert_chain,
    check_mixed_norm_bound,
    check_one_sided_bounds,
    check_product_bound,
    check_transfer_inequalities,
    coherences,
    cross_gram,
)

log = logging.getLogger("frameuncertainty")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
DEFAULT_TOL = 1e-10


def default_tol() -> float:
    raw = os.environ.get("FRAME_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise fio.InputError(f"FRAME_TOL is not a number: {raw!r}") from None


@dataclass
class RunReport:
    command: list[str]
    vectors: list[list[BoundReport]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def reports(self) -> list[BoundReport]:
        return [r for rs in self.vectors for r in rs]

    def summary(self) -> dict:
        rs = self.reports
        slacks = [r.slack for r in rs]
        return {
            "checked": len(rs),
            "violations": sum(not r.holds for r in rs),
            "min_slack": min(slacks) if slacks else math.nan,
            "equalities": sum(r.equality for r in rs),
        }

    @property
    def exit_status(self) -> int:
        if self.errors:
            return EXIT_INPUT
        return EXIT_VIOLATION if self.summary()["violations"] else EXIT_OK

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "vectors": [{"index": i, "reports": [fio.report_to_json(r) for r in rs]}
                        for i, rs in enumerate(self.vectors)],
            "summary": self.summary(),
            "exit_status": self.exit_status,
        }


# ---------------------------------------------------------------------------
# shared flags

def _add_system_flags(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--system", help="first system (JSON)")
    ap.add_argument("--cosystem", help="second system (JSON); defaults to --system")
    ap.add_argument("--demo", choices=sorted(DEMOS), help="built-in pair")
    ap.add_argument("--n", type=int, default=4, help="dimension or truncation")
    ap.add_argument("--m", type=int, default=None, help="frame size for random-parseval")
    ap.add_argument("--r", default="1", help="exponent of the diagonal weights n^r")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field", choices=("real", "complex"), default=None)
    ap.add_argument("--reweight", metavar="LO:HI", default=None,
                    help="replace counting measure by seeded weights in [LO, HI]")


def _load_pair(args, p="1") -> tuple[FrameSystem, FrameSystem]:
    if args.demo:
        fld = args.field or ("complex" if args.demo == "dft-pair" else "real")
        if args.demo == "dft-pair" and fld != "complex":
            raise ConstructionError("dft-pair requires the complex field")
        f_sys, g_sys = demo_pair(args.demo, args.n, args.seed, p, m=args.m,
                                 r=_fraction(args.r), field=fld)
    elif args.system:
        f_sys = fio.load_system(args.system)
        g_sys = fio.load_system(args.cosystem) if args.cosystem else f_sys
    else:
        raise fio.InputError("one of --demo or --system is required")
    if args.reweight:
        lo, hi = _range(args.reweight)
        g1, g2 = seed_stream(args.seed, 4)[2:]
        f_sys = reweighted(f_sys, g1.uniform(lo, hi, f_sys.space.size))
        g_sys = reweighted(g_sys, g2.uniform(lo, hi, g_sys.space.size))
    return f_sys, g_sys


def _fraction(s: str):
    from fractions import Fraction
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise fio.InputError(f"cannot read r={s!r}") from None


def _range(s: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in s.split(":"))
    except ValueError:
        raise fio.InputError(f"--reweight expects LO:HI, got {s!r}") from None
    if not 0 < lo <= hi:
        raise fio.InputError("--reweight needs 0 < LO <= HI")
    return lo, hi


def random_vectors(sys: FrameSystem, k: int, rng: np.random.Generator) -> list[Vector]:
    """Dense gaussian vectors; finitely supported ones for sequence systems."""
    out = []
    complex_ = sys.field == "complex"
    for _ in range(k):
        if sys.kind == "diagonal":
            size = int(rng.integers(1, min(sys.dim, 10) + 1))
            idx = rng.choice(sys.dim, size=size, replace=False) + 1
            vals = rng.standard_normal(size) + (1j * rng.standard_normal(size) if complex_ else 0)
            out.append(Vector(sys.dim, dict(zip(idx.tolist(), vals)),
                              field=sys.field, offset=1))
            continue
        x = rng.standard_normal(sys.dim)
        if complex_:
            x = x + 1j * rng.standard_normal(sys.dim)
        out.append(Vector.from_array(x, field=sys.field))
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args, argv) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    p = as_exponent(args.p)
    f_sys, g_sys = _load_pair(args, str(p))
    for s in (f_sys, g_sys):
        ok, dev = is_reconstructing(s, RECONSTRUCTION_TOL)
        if not ok:
            raise PreconditionError(f"system is not reconstructing (deviation={dev:.17g})")
    if f_sys.dim != g_sys.dim:
        raise DomainError(f"dimension mismatch: {f_sys.dim} vs {g_sys.dim}")

    sources = sum(bool(v) for v in (args.vectors, args.random, args.comb))
    if sources != 1:
        raise fio.InputError("exactly one of --vectors, --random, --comb is required")
    if args.vectors:
        xs = fio.load_vectors(args.vectors, f_sys.ambient_offset)
    elif args.random:
        xs = random_vectors(f_sys, args.random, seed_stream(args.seed, 3)[2])
    else:
        if f_sys.kind != "dense":
            raise fio.InputError("--comb needs a finite dense system")
        xs = [dirac_comb(f_sys.dim)]
    for i, x in enumerate(xs):
        if x.is_zero():
            raise PreconditionError(f"input vector {i} is zero; bounds are stated for x != 0")

    run = RunReport(list(argv))
    for x in xs:
        reps: list[BoundReport] = []
        if args.parseval:
            reps.extend(check_hilbert_chain(f_sys, g_sys, x, tol))
        elif p.is_infinite or p.value == 1.0:
            reps.append(check_product_bound(f_sys, g_sys, x, p, tol, verify=False))
            reps.extend(check_one_sided_bounds(f_sys, g_sys, x, p, tol, verify=False))
        else:
            reps.extend(check_mixed_norm_bound(f_sys, g_sys, x, p, tol, verify=False))
        if args.transfers:
            if not (p.is_infinite or p.value == 1.0):
                raise fio.InputError("--transfers applies to p = 1 or p = inf")
            reps.extend(check_transfer_inequalities(f_sys, g_sys, x, p, tol, verify=False))
        run.vectors.append(reps)

    if args.out:
        _write_report(run, args.out)
    s = run.summary()
    print(f"checked={s['checked']} violations={s['violations']} "
          f"min_slack={fio.fmt(s['min_slack'])} equalities={s['equalities']}")
    for i, rs in enumerate(run.vectors):
        for r in rs:
            if not r.holds:
                print(f"VIOLATION vector={i} id={r.id} side={r.side} lhs={fio.fmt(r.lhs)} "
                      f"rhs={fio.fmt(r.rhs)}", file=sys.stderr)
    return run.exit_status


def _write_report(run: RunReport, path: str) -> None:
    if path.lower().endswith(".csv"):
        text = fio.reports_to_csv(run.reports)
    else:
        text = fio.dumps(run.to_json()) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def cmd_coherence(args, argv) -> int:
    f_sys, g_sys = _load_pair(args)
    c_fw, c_gt = coherences(f_sys, g_sys)
    print(f"f_of_omega {fio.fmt(c_fw)}")
    print(f"g_of_tau {fio.fmt(c_gt)}")
    if args.gram:
        with open(args.gram, "w") as fh:
            fh.write(fio.gram_to_csv(cross_gram(f_sys, g_sys, args.direction)))
    return EXIT_OK


def cmd_extremal(args, argv) -> int:
    if args.max_dim > ENUMERATION_CAP:
        raise CapacityError(f"--max-dim is capped at {ENUMERATION_CAP}, got {args.max_dim}")
    f_sys, g_sys = _load_pair(args)
    res = min_support_product(f_sys, g_sys, patterns=args.patterns, max_dim=args.max_dim)
    print(f"min {fio.fmt(res.minimum)}")
    print(f"bound {fio.fmt(res.bound)}")
    print(f"ratio {fio.fmt(res.ratio)}")
    cert = fio.certificate_to_json(res.certificate, res.minimum)
    text = fio.dumps(cert)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def parse_tail(s: str) -> TailDescriptor:
    if s == "finite":
        return TailDescriptor.finite()
    parts = s.split(":")
    if parts[0] != "power" or len(parts) not in (3, 4):
        raise fio.InputError(f"--tail expects 'finite' or 'power:C:s[:onset]', got {s!r}")
    try:
        onset = int(parts[3]) if len(parts) == 4 else 1
        return TailDescriptor.power_law(float(parts[1]), float(parts[2]), onset)
    except ValueError:
        raise fio.InputError(f"cannot read tail {s!r}") from None


def cmd_domain(args, argv) -> int:
    sys_ = diagonal_system(_fraction(args.r), args.n, as_exponent(args.p))
    print("in-domain" if in_domain(sys_, parse_tail(args.tail)) else "not-in-domain")
    return EXIT_OK


def cmd_demo_list(args, argv) -> int:
    for name, desc in DEMOS.items():
        print(f"{name:20s} {desc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frameuncertainty",
                                 description="Support uncertainty checks for frame pairs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the uncertainty inequalities on vectors")
    _add_system_flags(v)
    v.add_argument("--p", default="1", help="exponent: 1, 2, ..., or inf")
    v.add_argument("--vectors", help="JSON file with one vector or a list")
    v.add_argument("--random", type=int, default=0, metavar="K")
    v.add_argument("--comb", action="store_true", help="use the Dirac comb (n a square)")
    v.add_argument("--tol", type=float, default=None, help="relative support tolerance")
    v.add_argument("--out", help="report path (.json or .csv)")
    v.add_argument("--parseval", action="store_true", help="run the Hilbert-space chain")
    v.add_argument("--transfers", action="store_true", help="add transfer inequalities")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("coherence", help="print coherences, optionally the cross-Gram")
    _add_system_flags(c)
    c.add_argument("--gram", help="write |cross-Gram| as CSV")
    c.add_argument("--direction", choices=(F_OF_OMEGA, G_OF_TAU), default=F_OF_OMEGA)
    c.set_defaults(func=cmd_coherence)

    e = sub.add_parser("extremal", help="exact minimum support product by enumeration")
    _add_system_flags(e)
    e.add_argument("--max-dim", type=int, default=ENUMERATION_CAP)
    e.add_argument("--patterns", choices=("all", "cosets"), default="all")
    e.add_argument("--out", help="certificate path (JSON)")
    e.set_defaults(func=cmd_extremal)

    d = sub.add_parser("domain", help="domain membership for the diagonal family")
    d.add_argument("--r", default="1")
    d.add_argument("--p", default="1")
    d.add_argument("--n", type=int, default=1000)
    d.add_argument("--tail", required=True, help="finite | power:C:s[:onset]")
    d.set_defaults(func=cmd_domain)

    sub.add_parser("demo-list", help="list built-in demos").set_defaults(func=cmd_demo_list)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args, argv)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (fio.InputError, DomainError, PreconditionError, ConstructionError,
            UnsupportedRepresentationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
