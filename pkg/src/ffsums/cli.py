"""Command-line interface.

Subcommands:

* ``sum`` — evaluate one exponential sum (kloosterman, gauss, gauss-reduced,
  ramanujan, tsum) at explicit parameters.
* ``count`` — evaluate one congruence-counting function (H, I, A, Einv, Esq,
  Esqrt).
* ``bilinear`` — evaluate one bilinear form (bk-plain, bk-type1,
  bk-type1-interval, bg-type1, bg-type2, bg-type2-interval).
* ``check`` — run a named verification suite, or ``all`` of them.
* ``scan`` — run one bound check over an explicit parameter grid.

Output is serialized records (``--format json|csv|pretty``) on stdout.  Exit
status: 0 when everything passed, 1 on a failed bound or assertion (the first
failing record goes to stderr), 2 on a parameter error (with usage text).

Polynomials are written little-endian as comma-separated field elements
(``1,0,2`` is 2T^2 + 1); field-extension elements are dot-separated base-p
digits.  Fields are ``p``, ``p^l``, or ``p^l:c0,...,cl`` with an explicit
extension modulus.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .bilinear import (
    THEOREM_SPECS,
    bg_type1,
    bg_type2_interval,
    bg_type2_set,
    bk_plain,
    bk_type1_interval,
    bk_type1_set,
    make_weights,
)
from .charmod import CycValue, get_context
from .counting import (
    Interval,
    energy_inv,
    energy_sq,
    energy_sqrt,
    hyperbola_count,
    inverse_avg_count,
    inverse_pair_count,
)
from .errors import FFSumsError
from .expsum import gauss, gauss_reduced, kloosterman, ramanujan, t_sum
from .field import FieldSpec, parse_field_spec
from .harness import (
    CHECK_ORDER,
    ValueRecord,
    _record_pretty,
    default_width,
    ensure_cost,
    first_failure,
    report_writer,
    run_all_checks,
    run_named_check,
    scan_reports,
)
from .polyring import Modulus, Poly, format_poly, parse_poly

_FORMATS = ("json", "csv", "pretty")

_WEIGHT_KINDS = ("ones", "random-unit", "random-sign")

# Named checks that take a single field spec rather than a tuple of them.
_SINGLE_FIELD_CHECKS = ("twisted", "tsum-cases", "dirichlet", "energy-oracle")


def _weight_kind(token: str) -> str:
    return token.replace("-", "_")


def _complex_of(value) -> complex:
    return value.to_complex() if isinstance(value, CycValue) else complex(value)


def _interval_of(field: FieldSpec, size_exp: int, offset: str | None) -> Interval:
    if offset is None:
        return Interval.initial(field, size_exp)
    return Interval(parse_poly(field, offset), size_exp)


def _support_of(field: FieldSpec, text: str) -> tuple[Poly, ...]:
    parts = [part for part in text.split(";") if part.strip()]
    if not parts:
        raise FFSumsError("empty weight support")
    return tuple(parse_poly(field, part) for part in parts)


# ---------------------------------------------------------------------------
# Parser construction
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, *, modulus: bool = True) -> None:
    parser.add_argument("--field", default="3", help="field spec (default 3)")
    if modulus:
        parser.add_argument("--modulus", required=True, help="modulus polynomial F")
    parser.add_argument(
        "--format", choices=_FORMATS, default="pretty", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffsums",
        description=(
            "Exact exponential sums over F_q[T]/<F>, congruence counting, "
            "bilinear-form bounds, and their verification suites."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="evaluate one exponential sum")
    sum_sub = p_sum.add_subparsers(dest="kind", required=True)
    for kind in ("kloosterman", "gauss", "gauss-reduced"):
        p = sum_sub.add_parser(kind, help=f"{kind} sum")
        _add_common(p)
        p.add_argument("--s", required=True, help="linear argument s")
        p.add_argument("--t", required=True, help="second argument t")
    p = sum_sub.add_parser("ramanujan", help="ramanujan sum")
    _add_common(p)
    p.add_argument("--s", required=True, help="argument s")
    p = sum_sub.add_parser("tsum", help="triple-product T-sum")
    _add_common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--a", required=True)

    p_count = sub.add_parser("count", help="evaluate one counting function")
    count_sub = p_count.add_subparsers(dest="kind", required=True)
    p = count_sub.add_parser("H", help="hyperbola count over two intervals")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    p.add_argument("--n-offset", default=None)
    p = count_sub.add_parser("I", help="inverse-pair count")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    p = count_sub.add_parser("A", help="averaged inverse count")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    for kind, label in (("Einv", "inverse"), ("Esq", "square")):
        p = count_sub.add_parser(kind, help=f"additive energy of {label}s")
        _add_common(p)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--m-offset", default=None)
    p = count_sub.add_parser("Esqrt", help="additive energy of the square-root domain")
    _add_common(p)
    p.add_argument("--m", type=int, required=True)

    p_bil = sub.add_parser("bilinear", help="evaluate one bilinear form")
    bil_sub = p_bil.add_subparsers(dest="kind", required=True)
    p = bil_sub.add_parser("bk-plain", help="unweighted Kloosterman-kernel form")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    p.add_argument("--n-offset", default=None)
    p.add_argument(
        "--gamma",
        choices=("random-unit", "random-sign"),
        default=None,
        help="optional residue weights inside the kernel",
    )
    p.add_argument("--gamma-seed", type=int, default=0)
    for kind in ("bk-type1", "bg-type1"):
        p = bil_sub.add_parser(kind, help="one-weight form over an explicit support")
        _add_common(p)
        p.add_argument("--a", required=True)
        p.add_argument(
            "--support", required=True, help="semicolon-separated support polynomials"
        )
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--n-offset", default=None)
        p.add_argument("--weights", choices=_WEIGHT_KINDS, default="ones")
        p.add_argument("--seed", type=int, default=0)
    p = bil_sub.add_parser("bk-type1-interval", help="one-weight form over an interval")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    p.add_argument("--n-offset", default=None)
    p.add_argument("--weights", choices=_WEIGHT_KINDS, default="ones")
    p.add_argument("--seed", type=int, default=0)
    p = bil_sub.add_parser("bg-type2", help="two-weight Gauss form over explicit supports")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--support", required=True, help="alpha support polynomials")
    p.add_argument("--beta-support", required=True, help="beta support polynomials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-offset", default=None)
    p.add_argument("--weights", choices=_WEIGHT_KINDS, default="ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta-seed", type=int, default=None)
    p = bil_sub.add_parser("bg-type2-interval", help="two-weight Gauss form over intervals")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-offset", default=None)
    p.add_argument("--n-offset", default=None)
    p.add_argument("--weights", choices=_WEIGHT_KINDS, default="ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta-seed", type=int, default=None)

    p_check = sub.add_parser("check", help="run a named verification suite")
    p_check.add_argument("name", choices=CHECK_ORDER + ("all",))
    p_check.add_argument("--profile", choices=("full", "quick"), default="full")
    p_check.add_argument(
        "--field",
        action="append",
        default=None,
        help="field spec (repeatable where the check takes several)",
    )
    p_check.add_argument("--max-deg", type=int, default=None)
    p_check.add_argument(
        "--seeds", default=None, help="weight seeds, e.g. 0..9 or 0,3,7"
    )
    p_check.add_argument("--width", type=int, default=None, help="worker processes")
    p_check.add_argument("--format", choices=_FORMATS, default="pretty")

    p_scan = sub.add_parser("scan", help="run one bound check over a parameter grid")
    p_scan.add_argument("name", choices=tuple(THEOREM_SPECS))
    p_scan.add_argument("--field", default="3")
    p_scan.add_argument("--modulus", required=True)
    p_scan.add_argument("--a", default="1", help="twist argument (default 1)")
    p_scan.add_argument(
        "--grid", required=True, help="grid spec, e.g. m=1..2,n=1..2 or m=1..3,seed=0..4"
    )
    p_scan.add_argument("--m", type=int, default=None, help="fixed m when not in the grid")
    p_scan.add_argument("--n", type=int, default=None, help="fixed n when not in the grid")
    p_scan.add_argument("--weights", choices=_WEIGHT_KINDS, default="ones")
    p_scan.add_argument("--seed", type=int, default=0, help="seed when not in the grid")
    p_scan.add_argument("--width", type=int, default=None, help="worker processes")
    p_scan.add_argument("--format", choices=_FORMATS, default="pretty")

    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _cmd_sum(args: argparse.Namespace) -> list:
    field = parse_field_spec(args.field)
    F = Modulus(parse_poly(field, args.modulus))
    q, r = float(field.q), F.r
    params: dict = {
        "check": f"sum-{args.kind}",
        "field": field.format_spec(),
        "modulus": format_poly(F.f),
    }
    if args.kind == "tsum":
        ensure_cost(q ** (2 * r), "the T-sum")
        u, v = parse_poly(field, args.u), parse_poly(field, args.v)
        a = parse_poly(field, args.a)
        value = t_sum(F, u, v, a)
        params.update(u=format_poly(u), v=format_poly(v), a=format_poly(a))
    elif args.kind == "ramanujan":
        ensure_cost(q**r, "the ramanujan sum")
        s = parse_poly(field, args.s)
        value = ramanujan(F, s)
        params.update(s=format_poly(s))
    else:
        ensure_cost(2 * q**r, f"the {args.kind} sum")
        s, t = parse_poly(field, args.s), parse_poly(field, args.t)
        fn = {
            "kloosterman": kloosterman,
            "gauss": gauss,
            "gauss-reduced": gauss_reduced,
        }[args.kind]
        value = fn(F, s, t)
        params.update(s=format_poly(s), t=format_poly(t))
    return [ValueRecord(params, _complex_of(value))]


def _cmd_count(args: argparse.Namespace) -> list:
    field = parse_field_spec(args.field)
    F = Modulus(parse_poly(field, args.modulus))
    q, r = float(field.q), F.r
    params: dict = {
        "check": f"count-{args.kind}",
        "field": field.format_spec(),
        "modulus": format_poly(F.f),
    }
    kind = args.kind
    if kind == "H":
        Im = _interval_of(field, args.m, args.m_offset)
        In = _interval_of(field, args.n, args.n_offset)
        ensure_cost(q**r + q ** max(args.m, args.n), "the hyperbola count")
        a = parse_poly(field, args.a)
        count = hyperbola_count(F, a, Im, In)
        params.update(a=format_poly(a), m=args.m, m_offset=format_poly(Im.offset),
                      n=args.n, n_offset=format_poly(In.offset))
    elif kind == "I":
        Im = _interval_of(field, args.m, args.m_offset)
        ensure_cost(q**r + q**args.m, "the inverse-pair count")
        a = parse_poly(field, args.a)
        count = inverse_pair_count(F, a, Im)
        params.update(a=format_poly(a), m=args.m, m_offset=format_poly(Im.offset))
    elif kind == "A":
        Im = _interval_of(field, args.m, args.m_offset)
        ensure_cost(q**r + q ** (2 * args.m), "the averaged inverse count")
        a = parse_poly(field, args.a)
        count = inverse_avg_count(F, a, Im, args.k)
        params.update(a=format_poly(a), m=args.m, k=args.k,
                      m_offset=format_poly(Im.offset))
    elif kind in ("Einv", "Esq"):
        Im = _interval_of(field, args.m, args.m_offset)
        ensure_cost(q**r + q ** (2 * args.m), "the energy count")
        count = (energy_inv if kind == "Einv" else energy_sq)(F, Im)
        params.update(m=args.m, m_offset=format_poly(Im.offset))
    else:  # Esqrt
        ensure_cost(q**r + q ** (2 * args.m), "the energy count")
        count = energy_sqrt(F, args.m)
        params.update(m=args.m)
    return [ValueRecord(params, complex(count))]


def _cmd_bilinear(args: argparse.Namespace) -> list:
    field = parse_field_spec(args.field)
    F = Modulus(parse_poly(field, args.modulus))
    q, r = float(field.q), F.r
    a = parse_poly(field, args.a)
    params: dict = {
        "check": f"bilinear-{args.kind}",
        "field": field.format_spec(),
        "modulus": format_poly(F.f),
        "a": format_poly(a),
    }
    kind = args.kind
    if kind == "bk-plain":
        Im = _interval_of(field, args.m, args.m_offset)
        In = _interval_of(field, args.n, args.n_offset)
        ensure_cost(
            min(q ** (args.m + args.n), q ** (2 * r)) * q**r, "the plain form"
        )
        gamma = None
        if args.gamma is not None:
            ctx = get_context(F)
            gamma = make_weights(
                _weight_kind(args.gamma), ctx.residues, args.gamma_seed
            ).values
        value = bk_plain(F, a, Im, In, gamma)
        params.update(m=args.m, m_offset=format_poly(Im.offset),
                      n=args.n, n_offset=format_poly(In.offset),
                      gamma=args.gamma or "none")
        if args.gamma is not None:
            params["gamma_seed"] = args.gamma_seed
    elif kind in ("bk-type1", "bg-type1"):
        support = _support_of(field, args.support)
        In = _interval_of(field, args.n, args.n_offset)
        ensure_cost(min(len(support) * q**args.n, q ** (2 * r)) * q**r, "the form")
        alpha = make_weights(_weight_kind(args.weights), support, args.seed)
        fn = bk_type1_set if kind == "bk-type1" else bg_type1
        value = fn(F, a, alpha, In)
        params.update(
            support=";".join(format_poly(p) for p in support),
            weights=args.weights, seed=args.seed,
            n=args.n, n_offset=format_poly(In.offset),
        )
    elif kind == "bk-type1-interval":
        Im = _interval_of(field, args.m, args.m_offset)
        In = _interval_of(field, args.n, args.n_offset)
        ensure_cost(min(q ** (args.m + args.n), q ** (2 * r)) * q**r, "the form")
        alpha = make_weights(_weight_kind(args.weights), Im.polys(), args.seed)
        value = bk_type1_interval(F, a, alpha, Im, In)
        params.update(m=args.m, m_offset=format_poly(Im.offset),
                      n=args.n, n_offset=format_poly(In.offset),
                      weights=args.weights, seed=args.seed)
    elif kind == "bg-type2":
        support = _support_of(field, args.support)
        beta_support = _support_of(field, args.beta_support)
        In = _interval_of(field, args.n, args.n_offset)
        beta_seed = args.beta_seed if args.beta_seed is not None else args.seed + 1000
        ensure_cost(
            (len(support) * len(beta_support) + len(beta_support) * q**r) * 2,
            "the form",
        )
        alpha = make_weights(_weight_kind(args.weights), support, args.seed)
        beta = make_weights(_weight_kind(args.weights), beta_support, beta_seed)
        value = bg_type2_set(F, a, alpha, beta, In)
        params.update(
            support=";".join(format_poly(p) for p in support),
            beta_support=";".join(format_poly(p) for p in beta_support),
            weights=args.weights, seed=args.seed, beta_seed=beta_seed,
            n=args.n, n_offset=format_poly(In.offset),
        )
    else:  # bg-type2-interval
        Im = _interval_of(field, args.m, args.m_offset)
        In = _interval_of(field, args.n, args.n_offset)
        beta_seed = args.beta_seed if args.beta_seed is not None else args.seed + 1000
        ensure_cost(
            (q ** (args.m + args.n) + q ** args.n * q**r) * 2, "the form"
        )
        alpha = make_weights(_weight_kind(args.weights), Im.polys(), args.seed)
        beta = make_weights(_weight_kind(args.weights), In.polys(), beta_seed)
        value = bg_type2_interval(F, a, alpha, Im, beta, In)
        params.update(m=args.m, m_offset=format_poly(Im.offset),
                      n=args.n, n_offset=format_poly(In.offset),
                      weights=args.weights, seed=args.seed, beta_seed=beta_seed)
    return [ValueRecord(params, _complex_of(value))]


def _parse_seed_list(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise FFSumsError(f"empty seed range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(part) for part in text.split(","))


def _cmd_check(args: argparse.Namespace) -> list:
    name = args.name
    if name == "all":
        if args.field or args.max_deg is not None or args.seeds is not None:
            raise FFSumsError("per-check options do not apply to 'check all'")
        return run_all_checks(args.profile)
    overrides: dict = {}
    if args.field:
        if name in THEOREM_SPECS or name in _SINGLE_FIELD_CHECKS:
            if len(args.field) > 1:
                raise FFSumsError(f"check {name!r} takes a single --field")
            overrides["field_spec"] = args.field[0]
        else:
            overrides["fields"] = tuple(args.field)
            if name == "gauss-mag":
                overrides["epsilon_fields"] = tuple(args.field)
    if args.max_deg is not None:
        if name == "prime-power":
            overrides["max_total_deg"] = args.max_deg
        elif name in ("charsum", "mobius", "gauss-mag", "weil", "dirichlet"):
            overrides["max_deg"] = args.max_deg
        else:
            raise FFSumsError(f"--max-deg does not apply to check {name!r}")
    if args.seeds is not None:
        if name not in THEOREM_SPECS:
            raise FFSumsError("--seeds applies only to the bilinear-form checks")
        try:
            overrides["seeds"] = _parse_seed_list(args.seeds)
        except ValueError:
            raise FFSumsError(f"cannot parse seed list {args.seeds!r}")
    if name in THEOREM_SPECS:
        overrides["width"] = args.width if args.width is not None else default_width()
    elif args.width is not None:
        raise FFSumsError("--width applies only to the bilinear-form checks")
    return run_named_check(name, args.profile, **overrides)


def _cmd_scan(args: argparse.Namespace) -> list:
    width = args.width if args.width is not None else default_width()
    return scan_reports(
        args.name,
        args.field,
        args.modulus,
        args.a,
        args.grid,
        weights=_weight_kind(args.weights),
        seed=args.seed,
        m=args.m,
        n=args.n,
        width=width,
    )


_DISPATCH = {
    "sum": _cmd_sum,
    "count": _cmd_count,
    "bilinear": _cmd_bilinear,
    "check": _cmd_check,
    "scan": _cmd_scan,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse printed usage / error already
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        records = _DISPATCH[args.command](args)
        payload = report_writer(records, args.format)
    except FFSumsError as exc:
        sys.stderr.write(f"ffsums: error: {exc}\n")
        sys.stderr.write(parser.format_usage())
        return 2
    except AssertionError as exc:
        sys.stderr.write(f"ffsums: assertion failure: {exc}\n")
        return 1
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()
    failure = first_failure(records)
    if failure is not None:
        sys.stderr.write("first failure: " + _record_pretty(failure) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
