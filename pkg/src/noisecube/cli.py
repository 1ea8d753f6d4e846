"""Command-line front end.

Reports and verification suites share one output contract: a delimited
table (CSV by default, JSON mirror with a metadata envelope) written to
stdout or --out, rendered byte-identically for identical configs.
Floats carry 17 significant digits.  Exit status: 0 when no checked
inequality failed, 1 when any verification row reports a violation
(a machine-readable record goes to stderr), 2 for configuration errors.

Report commands (curve, bounds, worstcase) also accept --plot PATH to
render a matplotlib figure of the same rows next to the table.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .cube import CubeSet
from .concentration import (
    BoundedDiffSpec,
    azuma_mcdiarmid_check,
    blowing_up_check,
    blowup_corollary_check,
    hoeffding_lemma_check,
)
from .entcurve import (
    alpha_fourier_asymptotic,
    alpha_hypercontractive,
    alpha_opt_of_beta,
    binary_entropy,
    sample_curve,
)
from .fourier import hyper_check, inverse_wht, nazarov_certificate, wht
from .harness import (
    DEFAULT_NS,
    DEFAULT_TAUS,
    FamilySpec,
    default_families,
    exhaustive_worst_case,
    make_family,
    strong_bound_trial,
    weak_bound_trial,
)
from .noise import NoiseSpec, trial_stream
from .shannon import ProbVector, tensor_bound_check

CURVE_TAUS = (0.001, 0.01, 0.05, 0.1, 0.2, 0.3)
FAMILY_KINDS = ("ball", "subcube", "random", "linear_code", "complement_of_ball")


def _tau_values(args, default):
    if getattr(args, "tau", None) is not None:
        return [args.tau]
    if getattr(args, "tau_list", None):
        return list(args.tau_list)
    return list(default)


def _parse_tau_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tau list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty tau list")
    return values


# ---------------------------------------------------------------- commands


def _cmd_curve(args):
    rows = []
    for tau in _tau_values(args, CURVE_TAUS):
        for pt in sample_curve(tau, args.grid):
            rows.append([tau, pt.p, pt.alpha, pt.beta])
    return ["tau", "p", "alpha", "beta"], rows, []


def _cmd_bounds(args):
    rows = []
    step = args.beta_grid
    if step <= 0:
        raise ValueError(f"beta grid step must be positive: {step!r}")
    for tau in _tau_values(args, CURVE_TAUS):
        if args.beta is not None:
            betas = [args.beta]
        else:
            start = binary_entropy(tau) + step
            count = int(math.floor((0.99 - start) / step + 1e-12)) + 1
            betas = [start + k * step for k in range(max(0, count))]
        for beta in betas:
            rows.append([
                tau,
                beta,
                alpha_opt_of_beta(beta, tau),
                alpha_hypercontractive(beta, tau),
                alpha_fourier_asymptotic(beta, tau),
            ])
    return ["tau", "beta", "alpha_opt", "alpha_hyper", "alpha_fourier"], rows, []


def _cmd_verify_tensor(args):
    rows, bad = [], []
    trial_id = 0
    for tau in _tau_values(args, (0.05, 0.1, 0.3)):
        for trial in range(args.trials):
            stream = trial_stream(args.seed, trial_id)
            trial_id += 1
            w = stream.exponential(1.0, 1 << args.n)
            res = tensor_bound_check(ProbVector(args.n, w / w.sum()), tau)
            if not res.holds:
                bad.append(len(rows))
            rows.append([args.n, tau, trial, res.h_in, res.h_out, res.h_bound, res.holds])
    return ["n", "tau", "trial", "h_in", "h_out", "h_bound", "holds"], rows, bad


def _cmd_verify_nazarov(args):
    rows, bad = [], []
    eps = args.eps if args.eps is not None else 1.0 / args.n
    for tau in _tau_values(args, DEFAULT_TAUS):
        for name, spec in _family_selection(args):
            B = make_family(spec, args.n)
            cert = nazarov_certificate(B, tau, eps)
            ok = cert.low_ok and cert.high_ok and cert.holds
            if not ok:
                bad.append(len(rows))
            rows.append([
                name, args.n, tau, eps, cert.d, cert.mu_B, cert.mu_A,
                cert.low_part_max, cert.high_part_norm, cert.rhs,
                cert.low_ok, cert.high_ok, cert.vacuous, cert.holds,
            ])
    cols = ["family", "n", "tau", "eps", "d", "mu_b", "mu_a", "low_part_max",
            "high_part_norm", "rhs", "low_ok", "high_ok", "vacuous", "holds"]
    return cols, rows, bad


def _cmd_verify_hyper(args):
    rows, bad = [], []
    for trial in range(args.trials):
        stream = trial_stream(args.seed, trial)
        tau = 0.05 + 0.4 * stream.random()
        rho = 1.0 - 2.0 * tau
        f = stream.random(1 << args.n)
        g = stream.random(1 << args.n)
        for mode in ("boundary", "random"):
            if mode == "boundary":
                r = s = rho
            else:
                root = rho + (1.0 - rho) * stream.random()
                tilt = 0.5 + 1.5 * stream.random()
                r, s = root * tilt, root / tilt
            res = hyper_check(f, g, tau, r, s)
            if not res.holds:
                bad.append(len(rows))
            rows.append([mode, trial, tau, r, s, res.lhs, res.rhs, res.holds])
    return ["mode", "trial", "tau", "r", "s", "lhs", "rhs", "holds"], rows, bad


def _cmd_verify_concentration(args):
    rows, bad = [], []

    def push(check, label, lhs, rhs, holds):
        if not holds:
            bad.append(len(rows))
        rows.append([check, label, lhs, rhs, holds])

    for trial in range(args.trials):
        stream = trial_stream(args.seed, trial)
        c = 0.1 + 3.9 * stream.random()
        k = 2 + int(stream.integers(0, 7))
        values = c * stream.random(k)
        masses = stream.exponential(1.0, k)
        res = hoeffding_lemma_check(values, masses / masses.sum(), c)
        push("hoeffding", f"trial={trial}", res.lhs, res.rhs, res.holds)

    n = args.n
    fair = BoundedDiffSpec.uniform(n)
    sums = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.float64)
    for z in range(n + 1):
        res = azuma_mcdiarmid_check(sums, fair, float(z))
        push("binomial_tail", f"z={z}", res.prob, res.bound, res.holds)

    stream = trial_stream(args.seed, args.trials)
    B = CubeSet.from_indicator(n, stream.random(1 << n) < 0.05)
    dist = _distance_table(B)
    spec = BoundedDiffSpec((0.3,) * n, (1.0,) * n)
    for z in range(n + 1):
        res = azuma_mcdiarmid_check(dist, spec, float(z))
        push("distance_tail", f"z={z}", res.prob, res.bound, res.holds)

    return ["check", "label", "lhs", "rhs", "holds"], rows, bad


def _distance_table(B: CubeSet) -> np.ndarray:
    from .cube import neighborhood

    out = np.full(1 << B.n, np.inf)
    layer = B
    for d in range(B.n + 1):
        mask = layer.bool_array() & np.isinf(out)
        out[mask] = d
        layer = neighborhood(layer, 1) if d < B.n else layer
    return out


def _cmd_verify_blowup(args):
    rows, bad = [], []

    def push(check, trial, dist, bound, mu_b, mu_other, d_star, holds):
        if not holds:
            bad.append(len(rows))
        rows.append([check, trial, dist, bound, mu_b, mu_other, d_star, holds])

    n = args.n
    for trial in range(args.trials):
        stream = trial_stream(args.seed, trial)
        bias = 0.05 + 0.9 * stream.random(n)
        d1, d2 = 0.01 + 0.49 * stream.random(2)
        B = CubeSet.from_indicator(n, stream.random(1 << n) < d1)
        B2 = CubeSet.from_indicator(n, stream.random(1 << n) < d2)
        if B.bits == 0 or B2.bits == 0:
            continue
        res = blowing_up_check(B, B2, list(bias))
        push("symmetric", trial, res.dist, res.bound, res.mu_B, res.mu_B2, None,
             res.holds)

    taus = _tau_values(args, DEFAULT_TAUS)
    for trial in range(args.trials // 4 + 1):
        stream = trial_stream(args.seed, 10_000 + trial)
        tau = taus[trial % len(taus)]
        shift = int(stream.integers(0, 1 << n))
        radius = int(stream.integers(n // 4, n // 2 + 1))
        B = make_family(FamilySpec(kind="ball", center=shift, radius=radius), n)
        res = blowup_corollary_check(B, NoiseSpec.uniform(tau, n), shift)
        push("corollary", trial, None, None, res.mu_B, res.mu_Bd, res.d_star,
             res.holds)

    cols = ["check", "trial", "dist", "bound", "mu_b", "mu_other", "d_star", "holds"]
    return cols, rows, bad


def _family_selection(args):
    chosen = getattr(args, "family", None) or list(FAMILY_KINDS)
    table = dict(default_families(args.n if hasattr(args, "n") else 16))
    out = []
    for name in chosen:
        if name.startswith("file:"):
            path = name[len("file:"):]
            with open(path, "r", encoding="ascii") as fh:
                cube = CubeSet.from_text(fh.read())
            out.append((name, _FileFamily(cube)))
        elif name in table:
            out.append((name, table[name]))
        else:
            raise ValueError(f"unknown family {name!r}; choose from {FAMILY_KINDS}")
    return out


class _FileFamily:
    """Adapter so a set loaded from disk slots into the family pipeline."""

    def __init__(self, cube: CubeSet):
        self.cube = cube

    def label(self) -> str:
        return f"file(n={self.cube.n})"


def _materialize(spec, n: int) -> CubeSet:
    if isinstance(spec, _FileFamily):
        if spec.cube.n != n:
            raise ValueError(f"set file has dimension {spec.cube.n}, expected {n}")
        return spec.cube
    return make_family(spec, n)


def _cmd_harness(args):
    rows, bad = [], []
    ns = args.n or list(DEFAULT_NS)
    for n in ns:
        args_n = argparse.Namespace(**{**vars(args), "n": n})
        for tau in _tau_values(args, DEFAULT_TAUS):
            for name, spec in _family_selection(args_n):
                B = _materialize(spec, n)
                for trial in (weak_bound_trial, strong_bound_trial):
                    row = trial(B, tau, family=name)
                    ok = row.verdict and (row.step1_ok is not False)
                    if not ok:
                        bad.append(len(rows))
                    rows.append([
                        row.family, row.mode, row.n, row.tau, row.theta,
                        row.log2_B, row.log2_A, row.beta_pred, row.slack_used,
                        row.step1_ok, row.vacuous, row.verdict,
                    ])
    cols = ["family", "mode", "n", "tau", "theta", "log2_b", "log2_a",
            "beta_pred", "slack_used", "step1_ok", "vacuous", "verdict"]
    return cols, rows, bad


def _cmd_worstcase(args):
    from .entcurve import binary_entropy_inv, noise_param

    theta = args.theta if args.theta is not None else 1.0 - 1.0 / args.n
    check = theta >= 1.0 - 1.0 / args.n - 1e-12
    rows, bad = [], []
    for pt in exhaustive_worst_case(args.n, args.tau, theta):
        weak_ok = None
        if check:
            if pt.card_A == 0:
                weak_ok = True
            else:
                beta_pred = binary_entropy(
                    noise_param(binary_entropy_inv(pt.log2_A / args.n), args.tau))
                weak_ok = pt.log2_B >= args.n * beta_pred - 2.0
            if not weak_ok:
                bad.append(len(rows))
        rows.append([args.n, args.tau, theta, pt.card_B, pt.log2_B,
                     pt.card_A, pt.log2_A, pt.witness, weak_ok])
    cols = ["n", "tau", "theta", "card_b", "log2_b", "card_a", "log2_a",
            "witness", "weak_ok"]
    return cols, rows, bad


def _cmd_wht_selftest(args):
    rows, bad = [], []
    for trial in range(args.trials):
        stream = trial_stream(args.seed, trial)
        table = stream.standard_normal(1 << args.n)
        spec = wht(table)
        roundtrip = float(np.abs(inverse_wht(spec) - table).max())
        parseval = abs(float((table * table).mean())
                       - float((spec.coeffs * spec.coeffs).sum()))
        ok = roundtrip <= 1e-10 and parseval <= 1e-10
        if not ok:
            bad.append(len(rows))
        rows.append([trial, args.n, roundtrip, parseval, ok])
    return ["trial", "n", "roundtrip_err", "parseval_err", "holds"], rows, bad


# ---------------------------------------------------------------- output


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _json_cell(value):
    if isinstance(value, float) and not math.isfinite(value):
        return f"{value:.17g}"
    return value


def _render(args, columns, rows) -> str:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])
        return buf.getvalue()
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("format", "out") and not k.startswith("_")}
    doc = {
        "meta": {
            "command": args.command,
            "version": __version__,
            "seed": getattr(args, "seed", None),
            "config": config,
        },
        "columns": columns,
        "rows": [[_json_cell(v) for v in row] for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _plot(args, columns, rows) -> None:
    from . import figures

    dict_rows = [dict(zip(columns, row)) for row in rows]
    if args.command == "curve":
        figures.save_curve_figure(dict_rows, args.plot)
    elif args.command == "bounds":
        figures.save_bounds_figure(dict_rows, args.plot)
    else:
        figures.save_frontier_figure(dict_rows, args.plot)


# ---------------------------------------------------------------- parser

_HANDLERS = {
    "curve": _cmd_curve,
    "bounds": _cmd_bounds,
    "verify-tensor": _cmd_verify_tensor,
    "verify-nazarov": _cmd_verify_nazarov,
    "verify-hyper": _cmd_verify_hyper,
    "verify-concentration": _cmd_verify_concentration,
    "verify-blowup": _cmd_verify_blowup,
    "harness": _cmd_harness,
    "worstcase": _cmd_worstcase,
    "wht-selftest": _cmd_wht_selftest,
}


def _add_common(sub, plot=False):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="write the table here instead of stdout")
    sub.add_argument("--seed", type=int, default=1)
    if plot:
        sub.add_argument("--plot", default=None, metavar="PATH",
                         help="also render a figure of the rows to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisecube",
        description="Exact finite-n reports and verifications for bit-flip "
                    "noise on the Boolean cube.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("curve", help="entropy increase curve samples")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    p.add_argument("--grid", type=int, default=512)
    _add_common(p, plot=True)

    p = subs.add_parser("bounds", help="exact curve vs weaker closed-form bounds")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--beta-grid", type=float, default=0.01, help="beta step size")
    _add_common(p, plot=True)

    p = subs.add_parser("verify-tensor", help="tensorized entropy lower bound")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    _add_common(p)

    p = subs.add_parser("verify-nazarov", help="degree-split set-size certificates")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--eps", type=float, default=None, help="default 1/n")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    p.add_argument("--family", action="append", default=None)
    _add_common(p)

    p = subs.add_parser("verify-hyper", help="two-function hypercontractivity")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--trials", type=int, default=200)
    _add_common(p)

    p = subs.add_parser("verify-concentration", help="exact tail inequalities")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--trials", type=int, default=500)
    _add_common(p)

    p = subs.add_parser("verify-blowup", help="neighborhood expansion bounds")
    p.add_argument("--n", type=int, default=14)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    _add_common(p)

    p = subs.add_parser("harness", help="weak/strong bound trials over set families")
    p.add_argument("--n", type=int, nargs="+", default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-list", type=_parse_tau_list, default=None)
    p.add_argument("--family", action="append", default=None,
                   help="family kind or file:PATH (hex set file)")
    _add_common(p)

    p = subs.add_parser("worstcase", help="exhaustive subset scan (n <= 4)")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--tau", type=float, default=0.1)
    p.add_argument("--theta", type=float, default=None, help="default 1 - 1/n")
    _add_common(p, plot=True)

    p = subs.add_parser("wht-selftest", help="transform round-trip and energy checks")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--trials", type=int, default=20)
    _add_common(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows, bad = _HANDLERS[args.command](args)
        text = _render(args, columns, rows)
        if args.out:
            with open(args.out, "w", encoding="ascii", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if getattr(args, "plot", None):
            _plot(args, columns, rows)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if bad:
        record = {"command": args.command, "violations": len(bad), "rows": bad[:50]}
        print(json.dumps(record), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
