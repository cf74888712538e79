"""Command-line entry point.

Exit status: 0 when every asserted bound holds, 2 when one fails, 1 on bad
input.  Flags override values read from --config.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import store
from .arith import factorize
from .classno import ClassNumberOracle, class_number_analytic, class_number_forms, nakagawa_horie_ratio
from .density import MODEL_GRID, ScanReport, f_of_x, scan_d_heegner, scan_discriminants, scan_rank_proportions_Q, scan_sextic
from .suite import default_suite, failures, gaussian_checks, mark_known_false

log = logging.getLogger("twistrank")

# flag name -> (type, default)
OPTIONS = {
    "config": (str, None),
    "out": (str, None),
    "format": (str, None),
    "workers": (int, 1),
    "cache": (str, None),
    "bound_strict": (bool, False),
    "timing": (bool, False),
    "seed": (int, 0),
    "N": (int, None),
    "D": (int, None),
    "X": (int, None),
    "w": (int, None),
    "dk": (int, None),
    "dk_min": (int, None),
    "dk_max": (int, None),
    "qexp_bound": (int, None),
    "sextic": (int, None),
    "nh_modulus": (int, None),
}


class UsageError(ValueError):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="key=value file; flags win over its values")
    g.add_argument("--out", help="write the report here instead of stdout")
    g.add_argument("--format", choices=("csv", "jsonl"))
    g.add_argument("--workers", type=int)
    g.add_argument("--cache", help="class-number cache file")
    g.add_argument("--bound-strict", action="store_const", const=True, help="assert diagnostic rows too")
    g.add_argument("--timing", action="store_const", const=True, help="include runtime_ms (breaks byte-identity)")
    g.add_argument("--seed", type=int)
    g.add_argument("--N", type=int, help="conductor")
    g.add_argument("--D", type=int, help="twist parameter")
    g.add_argument("--X", type=int, help="scan bound")
    g.add_argument("--w", type=int, choices=(-1, 1), help="root number of E")
    g.add_argument("--dk", type=int, help="fixed imaginary quadratic discriminant")
    g.add_argument("--dk-min", type=int, help="lower end of the dk window (exclusive)")
    g.add_argument("--dk-max", type=int, help="upper end of the dk window (exclusive, <= 0)")
    g.add_argument("--qexp-bound", type=int, help="number of q-expansion coefficients")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="twistrank", description="Twist-rank predictions and the checks behind them.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", parents=[common], help="character data for a discriminant or all characters mod f")
    p.add_argument("disc", type=int, nargs="?", help="fundamental discriminant")
    p.add_argument("--modulus", type=int, help="list all characters modulo this f (<= 100)")

    p = sub.add_parser("classno", parents=[common], help="class numbers of imaginary quadratic fields")
    p.add_argument("discs", type=int, nargs="+")
    p.add_argument("--check", action="store_true", help="also run the analytic formula and compare")

    p = sub.add_parser("curve", parents=[common], help="invariants and q-expansion of y^2 = x^3 + a x + b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = sub.add_parser("twist", parents=[common], help="twists of y^2 = x^3 + c")
    p.add_argument("c", type=int)

    sub.add_parser("verify", parents=[common], help="run the invariant suites")

    p = sub.add_parser("scan-k", parents=[common], help="vary K: rank-1 share over dk for fixed N, D")
    p.add_argument("--sextic", type=int, help="label the scan as the sextic twist of y^2 = x^3 + C")

    sub.add_parser("scan-d", parents=[common], help="vary D: count D built from split primes")

    p = sub.add_parser("scan-q", parents=[common], help="predicted rank 0 / rank 1 shares of twists over Q")
    p.add_argument("--nh-modulus", type=int, help="add class-number ratios for every residue class mod M")

    sub.add_parser("density", parents=[common], help="F(X) and the Gaussian model checks")
    return ap


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    cfg = store.read_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(cfg) - set(OPTIONS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, (typ, default) in OPTIONS.items():
        if getattr(args, key, None) is not None:
            continue
        if key in cfg:
            raw = cfg[key]
            try:
                val = raw.lower() in ("1", "true", "yes") if typ is bool else typ(raw)
            except ValueError:
                raise UsageError(f"config key {key}={raw!r} is not a valid {typ.__name__}") from None
        else:
            val = default
        setattr(args, key, val)
    if args.format not in (None, "csv", "jsonl"):
        raise UsageError(f"--format must be csv or jsonl, got {args.format!r}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    return args


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _oracle(args):
    cache = store.cache_load(args.cache) if args.cache else None
    return ClassNumberOracle(cache=cache, workers=args.workers)


def _close(oracle):
    if oracle.cache is not None:
        store.cache_store(oracle.cache)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_reports(args, reports, text_default: bool = False) -> int:
    if text_default and args.format is None:
        _emit(args, "".join(r.summary() + "\n" for r in reports))
    else:
        _emit(args, store.serialize(reports, args.format or "csv", args.timing))
    bad = [r for r in reports if not r.passed] if args.bound_strict else failures(reports)
    for r in bad:
        print(f"bound failed: {r.summary()}", file=sys.stderr)
    return 2 if bad else 0


def cmd_char(args) -> int:
    from .characters import all_characters, bernoulli1, conductor, gauss_sum, quadratic_character

    if args.modulus is not None:
        lines = []
        for i, chi in enumerate(all_characters(args.modulus)):
            lines.append(f"#{i} order={chi.order} parity={chi.parity} conductor={conductor(chi)} B1={bernoulli1(chi):.12g}")
        _emit(args, "\n".join(lines) + "\n")
        return 0
    if args.disc is None:
        raise UsageError("char needs a discriminant or --modulus")
    chi = quadratic_character(args.disc)
    tau = gauss_sum(chi)
    text = (
        f"d={args.disc} conductor={conductor(chi)} parity={chi.parity} B1={bernoulli1(chi)} "
        f"tau={tau.real:.12g}{tau.imag:+.12g}j\n"
    )
    _emit(args, text)
    return 0


def cmd_classno(args) -> int:
    lines = []
    for d in args.discs:
        h = class_number_forms(d)
        if args.check and class_number_analytic(d) != h:
            raise AssertionError(f"class number algorithms disagree at d={d}")
        lines.append(f"h={h}" if len(args.discs) == 1 else f"d={d} h={h}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_curve(args) -> int:
    from .curves import CurveModel, an_coefficients, conductor_flags, find_residual_character

    c = CurveModel(args.a, args.b)
    out = [f"curve: {c}", f"discriminant={c.discriminant}", f"j={c.j_invariant}"]
    if args.N is not None:
        out += [f"flag: {f}" for f in conductor_flags(c, args.N)]
        B = args.qexp_bound or 20
        s = an_coefficients(c, args.N, B)
        out.append("a_n=" + " ".join(str(s[n]) for n in range(1, B + 1)))
    M = find_residual_character(c, max(args.qexp_bound or 0, 1000))
    out.append(f"residual character M={M if M is not None else 'not found'}")
    _emit(args, "\n".join(out) + "\n")
    return 0


def cmd_twist(args) -> int:
    from .twists import MordellCurve, cubic_twist_congruence_check, g2, g3, g6, quadratic_twist, root_number_twist

    _need(args, "D")
    m, D = MordellCurve(args.c), args.D
    out = [f"g2: c={g2(m, D).c}", f"g3: c={g3(m, D).c}", f"g6: c={g6(m, D).c}"]
    if D != 1:
        q = quadratic_twist(m.model, D)
        out.append(f"quadratic twist: {q}")
    if args.N is not None and args.w is not None:
        out.append(f"root number of twist: {root_number_twist(args.w, D, args.N)}")
    code = 0
    if args.N is not None:
        if any(m.model.discriminant % p for p in factorize(args.N).primes):
            out.append(f"cubic twist congruence mod 3: skipped (N={args.N} is not a conductor of {m.model})")
        else:
            fail = cubic_twist_congruence_check(args.c, D, args.N, args.qexp_bound or 2000)
            out.append("cubic twist congruence mod 3: " + ("ok" if fail is None else f"fails at n={fail}"))
            code = 0 if fail is None else 2
    _emit(args, "\n".join(out) + "\n")
    return code


def cmd_verify(args) -> int:
    rows = default_suite(seed=args.seed, strict=bool(args.bound_strict))
    return _emit_reports(args, rows, text_default=True)


def _window(args) -> tuple[int, int]:
    X = -args.dk_min if args.dk_min is not None else args.X
    if X is None:
        raise UsageError("scan-k needs --X or --dk-min")
    dk_max = args.dk_max or 0
    if dk_max > 0 or -dk_max >= X:
        raise UsageError(f"empty dk window ({-X}, {dk_max})")
    return X, dk_max


def cmd_scan_k(args) -> int:
    _need(args, "N", "D")
    X, dk_max = _window(args)
    oracle = _oracle(args)
    if args.sextic is not None:
        r = scan_sextic(args.sextic, args.D, X, args.N, oracle, dk_max=dk_max)
    else:
        r = scan_discriminants(args.N, args.D, X, oracle, dk_max=dk_max)
    _close(oracle)
    return _emit_reports(args, [r])


def cmd_scan_d(args) -> int:
    _need(args, "X")
    r = scan_d_heegner(args.dk if args.dk is not None else -4, args.N or 1, args.X, workers=args.workers)
    return _emit_reports(args, [r])


def cmd_scan_q(args) -> int:
    _need(args, "N", "w", "X")
    oracle = _oracle(args)
    rows = list(scan_rank_proportions_Q(args.N, args.w, args.X, oracle))
    if args.nh_modulus:
        M = args.nh_modulus
        for m in range(M):
            try:
                rows.append(nakagawa_horie_ratio(args.X, m, M, "-", oracle))
            except ValueError as e:
                log.info("skipping residue %d mod %d: %s", m, M, e)
    _close(oracle)
    return _emit_reports(args, rows)


def cmd_density(args) -> int:
    X = args.X or 10**6
    F, Ff, ref = f_of_x(X, args.workers)
    rows = [
        ScanReport.make(
            label="F(X) vs (log X)^-kappa",
            lo=1,
            hi=X,
            numerator=0,
            denominator=0,
            bound=ref if ref is not None else 0.0,
            bound_kind="upper",
            proportion=Ff,
            extras={"asserting": False, "F": str(F)},
        )
    ]
    rows.extend(gaussian_checks([x for x in MODEL_GRID if x <= max(X, MODEL_GRID[0])]))
    return _emit_reports(args, mark_known_false(rows, bool(args.bound_strict)))


COMMANDS = {
    "char": cmd_char,
    "classno": cmd_classno,
    "curve": cmd_curve,
    "twist": cmd_twist,
    "verify": cmd_verify,
    "scan-k": cmd_scan_k,
    "scan-d": cmd_scan_d,
    "scan-q": cmd_scan_q,
    "density": cmd_density,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        args = resolve(args)
        return COMMANDS[args.command](args)
    except (ValueError, KeyError, OverflowError, store.CacheSchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
