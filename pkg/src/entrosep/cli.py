"""Command-line front end.

Exit codes: 0 no violation / success, 1 invalid input or failed check,
2 usage error, 3 entanglement certified (``check`` only).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io as fio
from .criteria import CriterionReport
from .exceptions import DensityError, EntrosepError, ScanError, SchemaError, UsageError
from .majorization import s_values
from .measurements import (
    computational_basis,
    conjugate_partner,
    gsic_from_sic,
    mum_from_mubs,
    overlap_matrix,
    prime_pauli_mubs,
    qubit_pauli_mubs,
    rotated_qubit_basis,
    sic_povm,
    validate_gsic,
    validate_mub_pair,
    validate_mum,
    validate_povm,
    validate_sic,
)
from .presets import CRITERIA, Setup, build, qutrit_cross_pairs
from .reproduce import CASES, ordering_checks, reproduce
from .scan import margin_curve, scan_threshold
from .states import FAMILIES, random_separable

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_ENTANGLED = 3

DEFAULT_ALPHA = {"mu": math.inf, "maj": 1.0, "maj-qubit-a": 2.0, "maj-qubit-b": 2.0,
                 "mub": 2.0, "mum": 2.0, "sic": 2.0, "gsic": 2.0, "correlation": 2.0}


@dataclass
class RunConfig:
    command: str
    fmt: str = "csv"
    seed: int = 42
    inputs: list[str] = field(default_factory=list)
    criteria: list[str] = field(default_factory=list)


def _order(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not value > 0:
        raise argparse.ArgumentTypeError("entropy order must be positive")
    return value


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _setup_from_args(args, criterion: str, dims, pairs=None, pairings=None) -> Setup:
    alpha = args.alpha if args.alpha is not None else DEFAULT_ALPHA[criterion]
    return Setup(criterion, dims=dims, alpha=alpha, beta=args.beta, kind=args.entropy,
                 theta=args.theta, k=args.k, kappa_t=args.kappa_t, gsic_t=args.gsic_t,
                 pairs=pairs, pairings=pairings)


def _default_criteria(d: int) -> list[str]:
    return ["mu", "maj-qubit-b", "mub"] if d == 2 else ["mu", "mub"]


def cmd_check(args, cfg: RunConfig) -> int:
    rho = fio.load_state(args.state)
    if rho.dims is None:
        raise SchemaError("state needs 'dims' for separability tests", args.state)
    pairs = pairings = None
    if args.measurements:
        pairs, pairings = fio.load_measurement_set(args.measurements)
    names = args.criterion or _default_criteria(rho.dims[0])
    reports: list[CriterionReport] = []
    for name in names:
        setup = _setup_from_args(args, name, rho.dims, pairs, pairings)
        reports.append(build(setup)(rho))
    if cfg.fmt == "json":
        _emit(fio.dumps([r.to_dict() for r in reports]))
    else:
        _emit(fio.reports_to_csv(reports))
    return EXIT_ENTANGLED if any(r.violated for r in reports) else EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    family = FAMILIES[args.family]
    pairs = pairings = None
    if args.measurements:
        pairs, pairings = fio.load_measurement_set(args.measurements)
    setup = _setup_from_args(args, args.criterion, family.dims, pairs, pairings)
    crit = build(setup)
    params = setup.params()
    try:
        res = scan_threshold(family, crit, params=params, bracket=tuple(args.bracket))
    except ScanError as exc:
        sys.stderr.write(f"error: {exc}\n")
        for c, m in exc.trace:
            sys.stderr.write(f"  c={c:.4f} margin={m:+.6e}\n")
        return EXIT_INPUT
    if args.emit_curve:
        grid = np.linspace(0, 1, args.curve_points)
        curve = margin_curve(family, crit, grid)
        Path(args.emit_curve).write_text(fio.rows_to_csv(("c", "margin"), curve))
    if cfg.fmt == "json":
        _emit(fio.dumps(res.to_dict()))
    else:
        d = res.to_dict()
        header = ("family", "criterion_id", "params", "c_star", "c_lo", "c_hi", "iterations")
        lo, hi = (res.bracket if res.bracket else (None, None))
        ptxt = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(res.params.items()))
        _emit(fio.rows_to_csv(header, [(d["family"], d["criterion_id"], ptxt,
                                        res.c_star if res.c_star is not None else "NONE",
                                        lo, hi, res.iterations)]))
    return EXIT_OK


def cmd_profile(args, cfg: RunConfig) -> int:
    if args.measurements:
        pairs, _ = fio.load_measurement_set(args.measurements)
        if len(pairs) < 2:
            raise UsageError("profile needs two measurement pairs")
        f, g = pairs[0][0], pairs[1][0]
    else:
        f, g = computational_basis(2), rotated_qubit_basis(args.theta)
    prof = s_values(overlap_matrix(f, g))
    if cfg.fmt == "json":
        _emit(fio.dumps(prof.to_dict()))
    else:
        n = len(prof.s)
        rows = [(k + 1, prof.s[k], prof.w[k] if k < prof.d_star else None,
                 prof.w_prime[k] if k < prof.d_star else None) for k in range(n)]
        _emit(fio.rows_to_csv(("k", "s", "w", "w_prime"), rows))
    return EXIT_OK


def cmd_construct(args, cfg: RunConfig) -> int:
    if args.state:
        family = FAMILIES[args.state]
        _emit(fio.dumps(fio.state_to_json(family(args.c))))
        return EXIT_OK
    kind, d = args.kind, args.dim
    pairings = None
    if kind == "z":
        bases = [computational_basis(d)]
    elif kind == "rotated":
        bases = [computational_basis(2), rotated_qubit_basis(args.theta)]
    elif kind == "pauli-mubs":
        bases = qubit_pauli_mubs()
    elif kind == "prime-mubs":
        bases = prime_pauli_mubs(d)
    elif kind == "qutrit-cross":
        pairs = qutrit_cross_pairs()
        _emit(fio.dumps(fio.measurement_set_to_json(pairs)))
        return EXIT_OK
    elif kind == "sic":
        s = sic_povm(d)
        _emit(fio.dumps(fio.measurement_set_to_json([(s, conjugate_partner(s))])))
        return EXIT_OK
    elif kind == "mum":
        src = qubit_pauli_mubs() if d == 2 else prime_pauli_mubs(d)
        bases = list(mum_from_mubs(src[: args.k or len(src)], args.kappa_t).povms)
    elif kind == "gsic":
        s = sic_povm(d)
        pair = (gsic_from_sic(s, args.gsic_t).povm,
                gsic_from_sic(conjugate_partner(s), args.gsic_t).povm)
        _emit(fio.dumps(fio.measurement_set_to_json([pair])))
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    if args.k and kind in ("pauli-mubs", "prime-mubs"):
        bases = bases[: args.k]
    _emit(fio.dumps(fio.measurement_set_to_json([(b, b) for b in bases], pairings)))
    return EXIT_OK


def _povm_reports(m) -> list:
    reps = [validate_povm(m)]
    d = m.dim
    if m.n_outcomes == d * d:
        reps.append(validate_sic(m) if hasattr(m, "vectors") else validate_gsic(m))
    return reps


def cmd_validate(args, cfg: RunConfig) -> int:
    if args.random_separable:
        return _false_positive_sweep(args, cfg)
    if not args.file:
        raise UsageError("validate needs a FILE or --random-separable N")
    obj = fio.load(args.file)
    out: dict = {"file": args.file}
    ok = True
    if isinstance(obj, dict) and "matrix" in obj:
        try:
            rho = fio.state_from_json(obj, args.file)
            out["state"] = {"valid": True, "dims": list(rho.dims) if rho.dims else None}
        except DensityError as exc:
            ok = False
            out["state"] = {"valid": False, "invariant": exc.invariant, "value": exc.value,
                            "report": exc.report}
    elif isinstance(obj, dict) and "pairs" in obj:
        pairs, _ = fio.measurement_set_from_json(obj, args.file)
        items = []
        for side in (0, 1):
            locals_ = [p[side] for p in pairs]
            for m in locals_:
                for r in _povm_reports(m):
                    items.append({"side": "AB"[side], "label": m.label, **r.to_dict()})
            bases = [m for m in locals_ if hasattr(m, "vectors") and m.is_basis]
            for i in range(len(bases)):
                for j in range(i + 1, len(bases)):
                    r = validate_mub_pair(bases[i], bases[j])
                    items.append({"side": "AB"[side], "label": f"{bases[i].label}|{bases[j].label}",
                                  **r.to_dict()})
            general = [m for m in locals_ if not hasattr(m, "vectors")]
            if general and all(m.n_outcomes == m.dim for m in general):
                items.append({"side": "AB"[side], "label": "mum",
                              **validate_mum(general).to_dict()})
        # unbiasedness and SIC/MUM structure are informative; only POVM validity gates
        ok = all(it["passed"] for it in items if it["name"] == "povm")
        out["measurements"] = items
    else:
        m = fio.povm_from_json(obj, args.file)
        items = [r.to_dict() for r in _povm_reports(m)]
        ok = all(it["passed"] for it in items if it["name"] == "povm")
        out["measurements"] = items
    out["valid"] = ok
    _emit(fio.dumps(out))
    return EXIT_OK if ok else EXIT_INPUT


def _false_positive_sweep(args, cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    dims = tuple(args.dims)
    names = args.criterion or _default_criteria(dims[0])
    crits = {}
    for n in names:
        crits[n] = build(_setup_from_args(args, n, dims))
    hits = {n: 0 for n in names}
    for _ in range(args.random_separable):
        rho = random_separable(rng, dims)
        for n, c in crits.items():
            hits[n] += int(c(rho).violated)
    rows = [(n, args.random_separable, hits[n]) for n in names]
    if cfg.fmt == "json":
        _emit(fio.dumps({"seed": cfg.seed, "dims": list(dims), "states": args.random_separable,
                         "violations": hits}))
    else:
        _emit(fio.rows_to_csv(("criterion", "states", "violations"), rows))
    return EXIT_OK if not any(hits.values()) else EXIT_INPUT


def cmd_reproduce(args, cfg: RunConfig) -> int:
    rows = reproduce(args.case)
    order = ordering_checks(rows)
    ok = all(r.passed for r in rows) and all(order.values())
    if cfg.fmt == "json":
        _emit(fio.dumps({"rows": [r.to_dict() for r in rows], "ordering": order, "passed": ok}))
    else:
        table = [(r.case, r.value, r.expected, r.tolerance, "PASS" if r.passed else "FAIL",
                  r.detail) for r in rows]
        table += [(f"ordering {k}", None, None, None, "PASS" if v else "FAIL", "")
                  for k, v in order.items()]
        _emit(fio.rows_to_csv(("case", "value", "expected", "tolerance", "status", "detail"),
                              table))
    return EXIT_OK if ok else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=42)

    crit = argparse.ArgumentParser(add_help=False)
    crit.add_argument("--alpha", type=_order, help="entropy order (criterion default if omitted)")
    crit.add_argument("--beta", type=_order, help="conjugate order for the MU test")
    crit.add_argument("--entropy", choices=("renyi", "tsallis"), help="entropy family")
    crit.add_argument("--theta", type=float, default=math.pi / 4,
                      help="rotation angle of the second qubit basis (radians)")
    crit.add_argument("--k", type=int, help="number of bases K")
    crit.add_argument("--kappa-t", type=float, default=1.0, help="MUM mixing parameter t")
    crit.add_argument("--gsic-t", type=float, default=1.0, help="general SIC mixing parameter t")
    crit.add_argument("--measurements", help="measurement-set JSON file")

    p = argparse.ArgumentParser(prog="entrosep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common, crit], help="evaluate criteria on a state file")
    sp.add_argument("state")
    sp.add_argument("--criterion", action="append", choices=CRITERIA)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("scan", parents=[common, crit], help="bisect a family for the threshold")
    sp.add_argument("--family", choices=sorted(FAMILIES), default="werner-qubit")
    sp.add_argument("--criterion", choices=CRITERIA, default="mu")
    sp.add_argument("--bracket", type=float, nargs=2, default=(0.0, 1.0), metavar=("LO", "HI"))
    sp.add_argument("--emit-curve", metavar="PATH", help="write (c, margin) CSV")
    sp.add_argument("--curve-points", type=int, default=101)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("profile", parents=[common, crit], help="dump the s_k profile")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("construct", parents=[common, crit], help="emit measurement/state JSON")
    sp.add_argument("--kind", default="pauli-mubs",
                    choices=("z", "rotated", "pauli-mubs", "prime-mubs", "qutrit-cross", "sic",
                             "mum", "gsic"))
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--state", choices=sorted(FAMILIES), help="emit a family state instead")
    sp.add_argument("--c", type=float, default=0.0, help="family parameter for --state")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("validate", parents=[common, crit], help="validate a state/POVM file")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--random-separable", type=int, metavar="N",
                    help="instead: count violations on N seeded random separable states")
    sp.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    sp.add_argument("--criterion", action="append", choices=CRITERIA)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("reproduce", parents=[common], help="regenerate the reference thresholds")
    sp.add_argument("--case", action="append", choices=sorted(CASES))
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 after --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = RunConfig(args.command, args.fmt, args.seed,
                    [x for x in (getattr(args, "state", None), getattr(args, "file", None))
                     if isinstance(x, str)],
                    list(getattr(args, "criterion", None) or []) if args.command != "scan"
                    else [args.criterion])
    try:
        return args.func(args, cfg)
    except (SchemaError, DensityError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        if isinstance(exc, DensityError) and exc.report:
            for k, v in exc.report.items():
                sys.stderr.write(f"  {k}: {v}\n")
        return EXIT_INPUT
    except EntrosepError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
