"""Command-line front end: run scenarios, sweep coupling strengths, check
invariants.  Emits CSV trajectories and a JSON comparison report; figures are
rendered alongside unless --no-plot is given."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import ConfigInvalid, RelchronError
from .pipeline import (
    ScenarioResult,
    invariance_residual,
    norm_rate_mismatch,
    run_scenario,
    sweep_scenario,
)
from .relational import RelationalTrajectory, sample_potential_zeroth
from .scenarios import Branch, SpinScenarioConfig, eval_B, gaussian_coefficients

EMIT_CHOICES = ("populations", "b_function", "potential_trace", "diagnostics")

_BRANCHES = {
    "nondegenerate": Branch.NONDEGENERATE,
    "degenerate_plus": Branch.DEGENERATE_PLUS,
}


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigInvalid(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigInvalid("config root must be a JSON object")
    return raw


def scenario_from_config(raw: dict) -> SpinScenarioConfig:
    sc = raw.get("scenario")
    if not isinstance(sc, dict):
        raise ConfigInvalid("config must contain a 'scenario' object")
    branch_name = sc.get("branch", "nondegenerate")
    if branch_name not in _BRANCHES:
        raise ConfigInvalid(
            f"unknown branch {branch_name!r}; expected one of {sorted(_BRANCHES)}"
        )
    n_times = int(sc.get("n_times", 400))
    env = os.environ.get("RELCHRON_TIME_POINTS")
    if env is not None:
        try:
            n_times = int(env)
        except ValueError as exc:
            raise ConfigInvalid(
                f"RELCHRON_TIME_POINTS must be an integer, got {env!r}"
            ) from exc
    try:
        return SpinScenarioConfig(
            J=int(sc["J"]),
            g=float(sc["g"]),
            eps=float(sc["eps"]),
            Ecal=float(sc["Ecal"]),
            a=float(sc.get("a", 1.0)),
            branch=_BRANCHES[branch_name],
            n_times=n_times,
            t_max=None if sc.get("t_max") is None else float(sc["t_max"]),
        )
    except KeyError as exc:
        raise ConfigInvalid(f"scenario config missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc


def emit_set(raw: dict) -> set[str]:
    emit = raw.get("emit", list(EMIT_CHOICES))
    if not isinstance(emit, list) or not set(emit) <= set(EMIT_CHOICES):
        raise ConfigInvalid(f"'emit' must be a subset of {EMIT_CHOICES}")
    return set(emit)


def g_sweep_from_config(raw: dict) -> list[float] | None:
    gs = raw.get("g_sweep")
    if gs is None:
        return None
    if not isinstance(gs, list) or not gs:
        raise ConfigInvalid("'g_sweep' must be a non-empty list of reals")
    vals = [float(g) for g in gs]
    if any(g <= 0 for g in vals):
        raise ConfigInvalid("'g_sweep' values must be > 0")
    return vals


def emit_csv(traj: RelationalTrajectory, path: str) -> None:
    """Write t,p_up,p_down,norm_N rows at 17 significant digits."""
    pops = traj.populations()
    lines = ["t,p_up,p_down,norm_N"]
    for i, t in enumerate(traj.times):
        lines.append(
            ",".join(
                (_fmt(t), _fmt(pops[i, 0]), _fmt(pops[i, 1]), _fmt(traj.norms[i]))
            )
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_b_function(cfg: SpinScenarioConfig, a: float, path: str) -> None:
    coeffs = gaussian_coefficients(cfg.J, a)
    times = cfg.time_grid()
    lines = ["t,re_B,im_B,abs_B"]
    for t in times:
        b = eval_B(coeffs, cfg.Ecal, float(t))
        lines.append(
            ",".join((_fmt(t), _fmt(b.real), _fmt(b.imag), _fmt(abs(b))))
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_potential_trace(result: ScenarioResult, path: str) -> None:
    p = result.perturbed
    e_appr = p.E0 + result.cfg.g * p.E1
    samples = sample_potential_zeroth(
        p.psi0, result.model, result.chi0, e_appr, result.times
    )
    lines = ["t,v00_re,v00_im,v01_re,v01_im,v10_re,v10_im,v11_re,v11_im"]
    for i, t in enumerate(result.times):
        v = samples[i]
        row = [_fmt(t)]
        for r in range(2):
            for c in range(2):
                row += [_fmt(v[r, c].real), _fmt(v[r, c].imag)]
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _report_dict(result: ScenarioResult) -> dict:
    out = {}
    for name in ("exact_vs_tipt", "exact_vs_tdpt", "tipt_vs_tdpt"):
        rep = result.reports[name]
        out[name] = {
            "max_pop_deviation": rep.max_pop_deviation,
            "mean_fidelity_gap": rep.mean_fidelity_gap,
        }
    return out


def write_comparison_json(
    result: ScenarioResult, exponents: dict | None, path: str
) -> None:
    payload = {
        "comparisons": _report_dict(result),
        "scenario": {
            "J": result.cfg.J,
            "g": result.cfg.g,
            "eps": result.cfg.eps,
            "Ecal": result.cfg.Ecal,
            "a": result.cfg.a,
            "branch": result.cfg.branch.name.lower(),
            "n_times": result.cfg.n_times,
        },
    }
    if exponents is not None:
        payload["scaling_exponents"] = exponents
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit_all(
    result: ScenarioResult,
    raw: dict,
    out_dir: str,
    exponents: dict | None,
    plot: bool,
) -> None:
    emit = emit_set(raw)
    os.makedirs(out_dir, exist_ok=True)
    if "populations" in emit:
        emit_csv(result.exact, os.path.join(out_dir, "populations_exact.csv"))
        emit_csv(result.tipt, os.path.join(out_dir, "populations_tipt.csv"))
        emit_csv(result.tdpt, os.path.join(out_dir, "populations_tdpt.csv"))
    if "b_function" in emit:
        a_values = raw.get("b_a_values", [result.cfg.a])
        for a in a_values:
            emit_b_function(
                result.cfg,
                float(a),
                os.path.join(out_dir, f"b_function_a{float(a):g}.csv"),
            )
    if "potential_trace" in emit:
        emit_potential_trace(result, os.path.join(out_dir, "potential_trace.csv"))
    if "diagnostics" in emit:
        write_comparison_json(
            result, exponents, os.path.join(out_dir, "comparison.json")
        )
    if plot:
        from . import plotting

        plotting.render_population_figure(
            result, os.path.join(out_dir, "populations.png")
        )
        plotting.render_overlap_figure(
            result, os.path.join(out_dir, "b_function.png")
        )


def cmd_run(args: argparse.Namespace) -> int:
    raw = load_config(args.config)
    cfg = scenario_from_config(raw)
    gs = g_sweep_from_config(raw)
    result = run_scenario(cfg)
    exponents = None
    if gs is not None:
        exponents = sweep_scenario(cfg, gs)["exponents"]
    _emit_all(result, raw, args.out, exponents, plot=not args.no_plot)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    raw = load_config(args.config)
    cfg = scenario_from_config(raw)
    if args.g is not None:
        try:
            gs = [float(x) for x in args.g.split(",") if x.strip()]
        except ValueError as exc:
            raise ConfigInvalid(f"--g must be comma-separated reals: {exc}") from exc
        if not gs or any(g <= 0 for g in gs):
            raise ConfigInvalid("--g values must be > 0")
    else:
        gs = g_sweep_from_config(raw)
        if gs is None:
            raise ConfigInvalid("sweep requires --g or 'g_sweep' in the config")
    sweep = sweep_scenario(cfg, gs)
    os.makedirs(args.out, exist_ok=True)
    for g in gs:
        sub = sweep["results"][g]
        emit_csv(
            sub.tdpt, os.path.join(args.out, f"populations_tdpt_g{g:g}.csv")
        )
        emit_csv(
            sub.exact, os.path.join(args.out, f"populations_exact_g{g:g}.csv")
        )
    base = sweep["results"][gs[0]]
    write_comparison_json(
        base, sweep["exponents"], os.path.join(args.out, "comparison.json")
    )
    if not args.no_plot:
        from . import plotting

        plotting.render_sweep_figure(sweep, os.path.join(args.out, "sweep.png"))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    raw = load_config(args.config)
    cfg = scenario_from_config(raw)
    result = run_scenario(cfg)

    checks: list[tuple[str, float, float]] = []
    spec = result.spectrum_tot
    k = result.exact_level
    psi = spec.vectors[:, k]
    resid = float(
        np.linalg.norm(
            result.model.h_tot() @ psi - spec.eigenvalues[k] * psi
        )
    )
    checks.append(("eigen_residual", resid, 1e-9))
    for t in (0.7, 3.1, 12.9):
        checks.append(
            (f"invariance_t{t:g}", invariance_residual(spec, k, t), 1e-9)
        )
    fid_gap = 1.0 - abs(np.vdot(result.exact.states[-1], result.exact.states[0]))
    checks.append(("periodicity", float(fid_gap), 1e-8))
    checks.append(("norm_rate", norm_rate_mismatch(result), 1e-6 * np.linalg.norm(result.model.V_coupling)))
    p = result.perturbed
    e_appr = p.E0 + cfg.g * p.E1
    samples = sample_potential_zeroth(
        p.psi0, result.model, result.chi0, e_appr, result.times[:50]
    )
    herm = float(
        max(np.abs(v - v.conj().T).max() for v in samples)
    )
    checks.append(("potential_hermiticity", herm, 1e-12))

    ok = True
    for name, value, bound in checks:
        passed = value <= bound
        ok = ok and passed
        print(f"{'PASS' if passed else 'FAIL'} {name}: {value:.3e} (<= {bound:.3e})")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relchron",
        description="Relational-clock subsystem dynamics versus perturbation theory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario and emit artifacts")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--no-plot", action="store_true")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a coupling sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--g", default=None, help="comma-separated couplings")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--no-plot", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_check = sub.add_parser("check", help="run the invariant suite")
    p_check.add_argument("--config", required=True)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RelchronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
