"""Command-line front end: batch experiments with deterministic file output.

Every subcommand writes CSV/JSON with a leading comment recording the
configuration and toolkit version; given the same flags and seed the bytes
are identical run to run. Exit codes: 0 success, 2 precondition failure,
3 accuracy warning under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import PreconditionError
from .grid import (
    GridFunction,
    l2_norm,
    random_band_limited,
    write_grid_file,
)
from .mellin import (
    MultiplierSpec,
    a_alpha_quadrature,
    build_mellin_table,
    decay_exponent_fit,
    f_star,
    mellin_reconstruct,
    write_mellin_table,
)
from .operators import imaginary_power, spherical_maximal
from .varlp import (
    VariableExponent,
    check_bound_hypotheses,
    constant_exponent,
    exponent_transform,
    luxemburg_norm,
    read_exponent_file,
    sine_exponent,
    step_exponent,
    write_exponent_file,
)
from .wave import (
    WaveConfig,
    a_priori_ratio,
    default_t_grid,
    fd_stability_bound,
    wave_fd_oracle,
    wave_propagate,
    write_wave_trace,
)


def _add_common(sub):
    sub.add_argument("--dim", type=int, default=3)
    sub.add_argument("--size", type=int, default=32)
    sub.add_argument("--side", type=float, default=1.0)
    sub.add_argument("--alpha", type=float, default=0.0)
    sub.add_argument("--u-min", type=float, default=0.0)
    sub.add_argument("--u-max", type=float, default=20.0)
    sub.add_argument("--u-points", type=int, default=41)
    sub.add_argument("--t-min", type=float, default=None)
    sub.add_argument("--t-max", type=float, default=None)
    sub.add_argument("--t-points", type=int, default=16)
    sub.add_argument("--exponent", type=str, default=None,
                     help="exponent source: a file path or const:V / sine:BASE,AMP / step:P1,P2")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", type=str, default=None)
    sub.add_argument("--strict", action="store_true",
                     help="escalate accuracy warnings to exit code 3")


def _config_comment(args, command):
    keys = ("dim", "size", "side", "alpha", "u_min", "u_max", "u_points",
            "t_min", "t_max", "t_points", "exponent", "seed")
    parts = [f"{k}={getattr(args, k)}" for k in keys if getattr(args, k, None) is not None]
    return f"harmgrid {__version__} {command} " + " ".join(parts)


def _sizes(args):
    return (args.size,) * args.dim


def _u_grid(args):
    return np.linspace(args.u_min, args.u_max, args.u_points)


def _t_grid(args):
    if args.t_min is None or args.t_max is None:
        return default_t_grid(_sizes(args), args.side, args.t_points)
    if not 0 < args.t_min < args.t_max:
        raise PreconditionError("need 0 < t-min < t-max")
    return tuple(np.geomspace(args.t_min, args.t_max, args.t_points))


def _exponent(args) -> VariableExponent:
    spec = args.exponent
    if spec is None:
        spec = "const:2.0"
    if ":" in spec:
        kind, _, rest = spec.partition(":")
        try:
            vals = [float(v) for v in rest.split(",")] if rest else []
        except ValueError:
            raise PreconditionError(f"unrecognized exponent builder {spec!r}")
        sizes = _sizes(args)
        if kind == "const" and len(vals) == 1:
            return constant_exponent(vals[0], sizes, args.side)
        if kind == "sine" and len(vals) == 2:
            return sine_exponent(vals[0], vals[1], sizes, args.side)
        if kind == "step" and len(vals) == 2:
            return step_exponent(vals[0], vals[1], sizes, args.side)
        raise PreconditionError(f"unrecognized exponent builder {spec!r}")
    return read_exponent_file(spec)


def _need_out(args):
    if args.out is None:
        raise PreconditionError("--out is required for this subcommand")
    return args.out


class _Warned(Exception):
    """Accumulates one accuracy warning for --strict escalation."""

    def __init__(self, message):
        self.message = message
        super().__init__(message)


def _cmd_mellin_table(args):
    spec = MultiplierSpec(args.alpha, args.dim)
    u = _u_grid(args)
    tables = [build_mellin_table(spec, u, method="closed")]
    beta = (spec.n - 1) / 2.0 + spec.alpha
    feasible = u[np.abs(u) <= 20.0] if beta >= 1.0 else np.array([])
    warning = None
    if feasible.size:
        vals, bounds = [], []
        for x in feasible:
            res = a_alpha_quadrature(float(x), spec)
            vals.append(res.value)
            bounds.append(res.tail_bound)
            if res.warning and warning is None:
                warning = res.warning
        from .mellin import MellinTable

        tables.append(MellinTable(spec=spec, u=feasible, values=np.array(vals), method="quadrature"))
    write_mellin_table(tables, _need_out(args), _config_comment(args, "mellin-table"))
    print(f"mellin-table rows={sum(len(t.u) for t in tables)} out={args.out}")
    if warning:
        raise _Warned(warning)
    return 0


def _cmd_decay_fit(args):
    spec = MultiplierSpec(args.alpha, args.dim)
    lo = args.u_min if args.u_min > 0 else 100.0
    hi = args.u_max if args.u_max > lo else 1000.0
    slope = decay_exponent_fit(spec, lo, hi, max(args.u_points, 8))
    expected = -(spec.alpha + spec.n / 2.0)
    print(f"decay-fit slope {slope:.6f} expected {expected:.6f} window [{lo:g}, {hi:g}]")
    if args.out:
        u = np.geomspace(lo, hi, max(args.u_points, 8))
        from .mellin import a_alpha_closed

        lines = [f"# {_config_comment(args, 'decay-fit')}", "u,abs_a"]
        for x, v in zip(u, np.abs(a_alpha_closed(u, spec))):
            lines.append(f"{float(x)!r},{float(v)!r}")
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_reconstruct(args):
    spec = MultiplierSpec(args.alpha, args.dim)
    lam = 1.0
    target = f_star(lam, spec)
    lo = args.u_min if args.u_min > 0 else 50.0
    hi = max(args.u_max, lo)
    ladders = np.geomspace(lo, hi, args.u_points) if hi > lo else np.array([lo])
    lines = [f"# {_config_comment(args, 'reconstruct')}", "u_max,reconstruction,target,abs_error"]
    for umax in ladders:
        val = mellin_reconstruct(lam, spec, u_max=float(umax), du=0.01)
        lines.append(f"{float(umax)!r},{val!r},{target!r},{abs(val - target)!r}")
    out = _need_out(args)
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"reconstruct lam={lam} rows={len(ladders)} out={out}")
    return 0


def _cmd_norm_growth(args):
    sizes = _sizes(args)
    p = _exponent(args)
    if p.sizes != sizes or p.side != args.side:
        raise PreconditionError("exponent grid does not match --dim/--size/--side")
    cutoff = max(1, min(sizes) // 4)
    f = random_band_limited(args.seed, cutoff, sizes, args.side)
    base = luxemburg_norm(f, p)
    lines = [f"# {_config_comment(args, 'norm-growth')}", "u,norm_ratio"]
    for u in _u_grid(args):
        ratio = luxemburg_norm(imaginary_power(f, float(u)), p) / base
        lines.append(f"{float(u)!r},{ratio!r}")
    out = _need_out(args)
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"norm-growth rows={args.u_points} out={out}")
    return 0


def _cmd_spherical_max(args):
    sizes = _sizes(args)
    cutoff = max(1, min(sizes) // 4)
    f = random_band_limited(args.seed, cutoff, sizes, args.side, real=True)
    result = spherical_maximal(f, args.alpha, _t_grid(args))
    out = _need_out(args)
    write_grid_file(result.values, out + ".values.json")
    t_of = np.asarray(result.t_grid)[result.argmax_t]
    write_grid_file(GridFunction(t_of.astype(complex), args.side), out + ".argmax.json")
    print(f"spherical-max out={out}.values.json,{out}.argmax.json")
    return 0


def _cmd_wave_demo(args):
    sizes = _sizes(args)
    if args.dim < 2:
        raise PreconditionError("wave-demo needs dim >= 2")
    cutoff = max(1, min(sizes) // 4)
    f = random_band_limited(args.seed, cutoff, sizes, args.side, real=True)
    cfg = WaveConfig(args.dim, _t_grid(args))
    out = _need_out(args)
    write_wave_trace(f, cfg, out, _config_comment(args, "wave-demo"))
    t_probe = cfg.t_grid[len(cfg.t_grid) // 2]
    dt = 0.5 * fd_stability_bound(sizes, args.side, args.dim)
    diff = wave_fd_oracle(f, t_probe, dt).samples - wave_propagate(f, t_probe, cfg).samples
    err = l2_norm(GridFunction(diff, args.side))
    print(f"wave-demo fd_l2_error {err:.3e} at t={t_probe:g} dt={dt:g}")
    p = _exponent(args)
    ratio = a_priori_ratio(f, p, cfg)
    print(f"wave-demo a_priori_ratio {ratio:.6f}")
    return 0


def _cmd_hypotheses(args):
    p = _exponent(args)
    report = check_bound_hypotheses(p, args.alpha, args.dim, args.claim)
    print(report.chain)
    doc = report.to_json_dict()
    if report.claim == "thm32" and report.passed:
        tr = exponent_transform(p, args.alpha, args.dim)
        doc["transform"] = {
            "theta": tr.theta, "theta0": tr.theta0, "delta": tr.delta,
            "p_tilde_minus": tr.p_tilde.p_minus, "p_tilde_plus": tr.p_tilde.p_plus,
        }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"comment": _config_comment(args, "hypotheses"), **doc}, fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_gen(args):
    sizes = _sizes(args)
    out = _need_out(args)
    if args.what == "field":
        cutoff = max(1, min(sizes) // 4)
        f = random_band_limited(args.seed, cutoff, sizes, args.side)
        write_grid_file(f, out)
    else:
        write_exponent_file(_exponent(args), out)
    print(f"gen {args.what} out={out}")
    return 0


_COMMANDS = {
    "mellin-table": _cmd_mellin_table,
    "decay-fit": _cmd_decay_fit,
    "reconstruct": _cmd_reconstruct,
    "norm-growth": _cmd_norm_growth,
    "spherical-max": _cmd_spherical_max,
    "wave-demo": _cmd_wave_demo,
    "hypotheses": _cmd_hypotheses,
    "gen": _cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmgrid",
        description="Spectral experiments: multiplier tables, norms, maximal functions, waves.",
    )
    parser.add_argument("--version", action="version", version=f"harmgrid {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sub = subs.add_parser(name)
        _add_common(sub)
        if name == "hypotheses":
            sub.add_argument("--claim", required=True,
                             choices=["thm32", "thm34", "cor35", "cor36_wave"])
        if name == "gen":
            sub.add_argument("what", choices=["field", "exponent"])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"error: precondition: {exc}", file=sys.stderr)
        return 2
    except _Warned as exc:
        if args.strict:
            print(f"error: accuracy: {exc.message}", file=sys.stderr)
            return 3
        print(f"warning: accuracy: {exc.message}", file=sys.stderr)
        return 0
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
