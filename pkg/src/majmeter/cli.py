"""Command-line front end: batch computations and CSV/JSON emission.

Exit codes: 0 success, 2 usage or parse failure, 3 resource cap exceeded,
4 domain or range violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import asymptotics, exact_dist, families, tableaux
from .asymptotics import QuadratureConfig
from .errors import (
    CapExceeded,
    DegenerateDistribution,
    DegenerateParameter,
    DomainError,
    EmptyPartition,
    InvalidRow,
    InvalidSimplexPoint,
    OutOfRange,
    ZeroAtomUnsupported,
)
from .partitions import (
    Partition,
    ThomaParam,
    conjugate,
    measure_of,
    parse_partition,
    partitions_of,
    thoma_embed,
)

CONFIG_ENV = "MAJMETER_CONFIG"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_DOMAIN = 4

_USAGE_ERRORS = (EmptyPartition, InvalidRow, InvalidSimplexPoint, ValueError,
                 json.JSONDecodeError)
_DOMAIN_ERRORS = (OutOfRange, DomainError, DegenerateParameter, ZeroAtomUnsupported)


def _fmt(x) -> str:
    """Floats at 17 significant digits, rationals as p/q, the rest via str."""
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return _fmt(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"cannot serialise {type(obj)!r}")


def _write(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quad_from(args) -> QuadratureConfig:
    return QuadratureConfig(
        nodes=args.quad_nodes,
        max_doublings=args.quad_max_doublings,
        rel_tol=args.quad_tol,
    )


def _load_config_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path) as fh:
        raw = json.load(fh)
    mapping = {
        "quad.nodes": "quad_nodes",
        "quad.rel_tol": "quad_tol",
        "quad.max_doublings": "quad_max_doublings",
        "exact_cap": "exact_cap",
        "seed": "seed",
    }
    return {mapping[k]: v for k, v in raw.items() if k in mapping}


def _parse_n_list(text: str) -> list[int]:
    if not text.strip():
        return []
    values = [int(tok) for tok in text.split(",") if tok.strip()]
    if any(v < 1 for v in values):
        raise ValueError("n values must be positive")
    return values


def _omega_from_json(text: str) -> ThomaParam:
    return ThomaParam.from_json(json.loads(text))


def cmd_dist(args) -> int:
    lam = parse_partition(args.partition, strict=args.strict)
    poly = exact_dist.maj_polynomial(lam, exact_cap=args.exact_cap)
    lo, hi = exact_dist.range_maj(lam)
    try:
        d_kol = exact_dist.kolmogorov_distance_to_normal(poly)
    except DegenerateDistribution:
        d_kol = None  # single-point law, nothing to standardise
    payload = {
        "partition": list(lam.rows),
        "offset": poly.offset,
        "coeffs": [str(c) for c in poly.coeffs],
        "count": str(poly.at_one()),
        "mean": exact_dist.mean_maj(lam),
        "variance": exact_dist.var_maj(lam),
        "range": [lo, hi],
        "d_kol": d_kol,
    }
    if args.format == "json":
        _write(args, json.dumps(payload, default=_json_default, indent=2) + "\n")
    else:
        lines = [f"# partition={','.join(map(str, lam.rows))}"]
        for key in ("count", "mean", "variance", "range", "d_kol"):
            if key == "range":
                lines.append(f"# range={lo}:{hi}")
            elif payload[key] is None:
                lines.append(f"# {key}=")
            else:
                lines.append(f"# {key}={_fmt(payload[key])}")
        lines.append("maj,count")
        for i, c in enumerate(poly.coeffs):
            lines.append(f"{poly.offset + i},{c}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_cumulants(args) -> int:
    lam = parse_partition(args.partition, strict=args.strict)
    lines = ["order,exact,predicted"]
    lines.append(f"1,{_fmt(exact_dist.mean_maj(lam))},")
    for r in range(2, args.max_order + 1):
        exact = exact_dist.exact_cumulant(lam, r)
        predicted = exact_dist.predicted_cumulant(lam, r)
        lines.append(f"{r},{_fmt(exact)},{_fmt(predicted)}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    lam = parse_partition(args.partition, strict=args.strict)
    if args.trials < 1:
        raise ValueError("trials must be >= 1")
    counts = tableaux.maj_histogram_mc(lam, args.trials, args.seed)
    lines = [
        f"# partition={','.join(map(str, lam.rows))}",
        f"# trials={args.trials}",
        f"# seed={args.seed}",
        f"# rng={tableaux.RNG_NAME}",
        "maj,count",
    ]
    for value in sorted(counts):
        lines.append(f"{value},{counts[value]}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_ld(args) -> int:
    build, limit_omega = families.family(args.family)
    if args.omega:
        limit_omega = _omega_from_json(args.omega)
    mu_limit = measure_of(limit_omega)
    y = Fraction(args.y)
    quad = _quad_from(args)
    lines = ["n,exact_tail,estimate,rate,ratio"]
    for n in _parse_n_list(args.n):
        lam = build(n)
        mu_n = measure_of(thoma_embed(lam))
        report = asymptotics.ld_estimate(
            mu_n, mu_limit, float(y), n, side=args.side, quad=quad
        )
        exact_text = ""
        ratio_text = ""
        if n <= args.exact_cap:
            poly = exact_dist.maj_polynomial(lam, exact_cap=args.exact_cap)
            mean = exact_dist.mean_maj(lam)
            if args.side == "upper":
                threshold = math.ceil(mean + y * n * n)
                tail = exact_dist.tail_probability(poly, threshold, "upper")
            else:
                threshold = math.floor(mean - y * n * n)
                tail = exact_dist.tail_probability(poly, threshold, "lower")
            exact_text = _fmt(float(tail))
            ratio_text = _fmt(float(tail) / report.estimate)
        lines.append(
            f"{n},{exact_text},{_fmt(report.estimate)},{_fmt(report.rate)},{ratio_text}"
        )
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_bkol(args) -> int:
    build, _ = families.family(args.family)
    lines = ["n,d_kol,bound,hypothesis_ok"]
    for n in _parse_n_list(args.n):
        lam = build(n)
        bound, ok = asymptotics.berry_esseen_bound(lam)
        poly = exact_dist.maj_polynomial(lam, exact_cap=args.exact_cap)
        dist = exact_dist.kolmogorov_distance_to_normal(poly)
        lines.append(f"{n},{_fmt(dist)},{_fmt(bound)},{str(ok).lower()}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_bochner(args) -> int:
    omega = _omega_from_json(args.omega)
    xis = [float(tok) for tok in args.xis.split(",") if tok.strip()]
    matrix, smallest = asymptotics.bochner_check(measure_of(omega), xis, _quad_from(args))
    payload = {"xis": xis, "matrix": matrix, "min_eigenvalue": smallest}
    _write(args, json.dumps(payload, default=_json_default, indent=2) + "\n")
    return EXIT_OK


def _validate_identities(max_n: int, inject_fault: bool):
    """Yield (identity name, first counterexample or None, partitions seen)."""
    from itertools import permutations

    from .partitions import hook_multiset_identity
    from .tableaux import descent_set, maj_multiset, perm_descents, rsk

    checked = 0
    first_fail: dict[str, object] = {}

    def note(name, lam, ok):
        if not ok and name not in first_fail:
            first_fail[name] = lam

    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            checked += 1
            left, right = hook_multiset_identity(lam, n)
            note("hook-content-multiset", lam, left == right)
            poly = exact_dist.maj_polynomial(lam)
            histogram = {poly.offset + i: c for i, c in enumerate(poly.coeffs) if c}
            if inject_fault and lam.rows == (2, 1):
                histogram[poly.offset] = histogram.get(poly.offset, 0) + 1
            note("polynomial-vs-enumeration", lam, histogram == maj_multiset(lam))
            note(
                "cumulant-two-routes",
                lam,
                all(
                    exact_dist.exact_cumulant(lam, r)
                    == exact_dist.cumulant_from_polynomial(poly, r)
                    for r in range(2, 7)
                ),
            )
            note("mean-closed-form", lam,
                 exact_dist.mean_maj(lam) == exact_dist.cumulant_from_polynomial(poly, 1))
            note("variance-closed-form", lam,
                 exact_dist.var_maj(lam) == exact_dist.exact_cumulant(lam, 2))
            note("range-vs-support", lam, exact_dist.range_maj(lam) == poly.support())

    for n in range(1, 6):
        for images in permutations(range(1, n + 1)):
            p, q = rsk(images)
            note("rsk-descent-preservation", images,
                 perm_descents(images) == descent_set(q) and p.shape == q.shape)

    for name in (
        "hook-content-multiset",
        "polynomial-vs-enumeration",
        "cumulant-two-routes",
        "mean-closed-form",
        "variance-closed-form",
        "range-vs-support",
        "rsk-descent-preservation",
    ):
        yield name, first_fail.get(name), checked


def cmd_validate(args) -> int:
    if args.max_n > 12:
        raise ValueError("validate sweeps are capped at max_n = 12")
    lines = []
    failures = 0
    checked = 0
    for name, counterexample, count in _validate_identities(args.max_n, args.inject_fault):
        checked = max(checked, count)
        if counterexample is None:
            lines.append(f"{name}: PASS")
        else:
            failures += 1
            lines.append(f"{name}: FAIL at {counterexample!r}")
    lines.append(f"partitions checked: {checked}")
    lines.append(f"failures: {failures}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majmeter",
        description="Exact and asymptotic statistics of the major index of "
        "uniform random standard Young tableaux.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write to this path instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--quad-nodes", type=int, default=64)
    common.add_argument("--quad-tol", type=float, default=1e-12)
    common.add_argument("--quad-max-doublings", type=int, default=4)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--exact-cap", type=int, default=exact_dist.BIGINT_CAP)
    common.add_argument("--strict", action="store_true",
                        help="reject partitions that are not sorted")
    defaults = _load_config_defaults()
    if defaults:
        common.set_defaults(**defaults)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="exact maj distribution")
    p.add_argument("-p", "--partition", required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("cumulants", parents=[common], help="exact and predicted cumulants")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("--max-order", type=int, default=6)
    p.set_defaults(func=cmd_cumulants)

    p = sub.add_parser("sample", parents=[common], help="hook-walk Monte Carlo histogram")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ld", parents=[common], help="large-deviation sweep over n")
    p.add_argument("--family", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--n", required=True, help="comma-separated sizes")
    p.add_argument("--side", choices=("upper", "lower"), default="upper")
    p.add_argument("--omega", help="JSON Thoma parameter overriding the family limit")
    p.set_defaults(func=cmd_ld)

    p = sub.add_parser("bkol", parents=[common], help="Kolmogorov distance sweep")
    p.add_argument("--family", required=True)
    p.add_argument("--n", required=True, help="comma-separated sizes")
    p.set_defaults(func=cmd_bkol)

    p = sub.add_parser("bochner", parents=[common], help="nonnegative-definiteness probe")
    p.add_argument("--omega", required=True, help="JSON Thoma parameter")
    p.add_argument("--xis", required=True, help="comma-separated frequencies")
    p.set_defaults(func=cmd_bochner)

    p = sub.add_parser("validate", parents=[common], help="identity cross-checks")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
