"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criteria are asserted exactly as stated, at the stated tolerances.  Two are
known not to hold for this model (the nondegenerate scaling interval and the
FWHM ordering); they are implemented faithfully and left failing — see the
decision ledger kept with the build notes.
"""

import json

import numpy as np
import pytest

from relchron import Branch, SpinScenarioConfig, build_scenario
from relchron.cli import main
from relchron.hilbert import assemble_H_tot0
from relchron.numerics import hermitian_eigensolve
from relchron.pipeline import invariance_residual, sweep_scenario
from relchron.relational import sample_potential_zeroth
from relchron.scenarios import (
    analytic_appendixA_elements,
    analytic_effective_potential,
    eval_B,
    gaussian_coefficients,
)
from relchron.statics import (
    level_index_for_energy,
    tipt_degenerate,
    tipt_first_order,
    verify_degenerate_kernel,
)


def _report(label: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
    assert ok, f"{label}: {detail}"


def test_criterion_1_eigen_infrastructure(nd30):
    spec, k = nd30.spectrum_tot, nd30.exact_level
    psi = spec.vectors[:, k]
    resid = float(
        np.linalg.norm(nd30.model.h_tot() @ psi - spec.eigenvalues[k] * psi)
    )
    inv = max(invariance_residual(spec, k, t) for t in (0.7, 3.1, 12.9))
    _report(
        "criterion 1 (eigen infrastructure, J=30)",
        resid <= 1e-9 and inv <= 1e-9,
        f"residual {resid:.3e}, worst invariance {inv:.3e} (<= 1e-9)",
    )


@pytest.mark.parametrize("J", [5, 30])
def test_criterion_2_nondegenerate_tipt(J):
    cfg = SpinScenarioConfig(J=J, g=0.17, eps=0.32, Ecal=1.0, branch=Branch.NONDEGENERATE)
    model, _, _ = build_scenario(cfg)
    h0 = assemble_H_tot0(model)
    spec = hermitian_eigensolve(h0)
    p = tipt_first_order(h0, model.V_coupling, level_index_for_energy(spec, cfg.eps))
    m_vals = np.arange(-J, J + 1)
    analytic = 1.0 / (2.0 * cfg.eps - m_vals * cfg.Ecal)
    dev = float(
        max(
            np.max(np.abs(p.psi1[cfg.dim_c:] - analytic)),
            np.max(np.abs(p.psi1[: cfg.dim_c])),
        )
    )
    _report(
        f"criterion 2 (nondegenerate TIPT, J={J})",
        dev <= 1e-10 and abs(p.E1) <= 1e-10,
        f"amplitude deviation {dev:.3e}, |E1| {abs(p.E1):.3e} (<= 1e-10)",
    )


def test_criterion_3_degenerate_machinery():
    cfg = SpinScenarioConfig(J=30, g=0.29, eps=1.0, Ecal=1.0, branch=Branch.DEGENERATE_PLUS)
    model, _, expected = build_scenario(cfg)
    h0 = assemble_H_tot0(model)
    plus = tipt_degenerate(h0, model.V_coupling, 0.0, branch_index=1)
    minus = tipt_degenerate(h0, model.V_coupling, 0.0, branch_index=0)
    lam_dev = max(abs(plus.E1 - 1.0), abs(minus.E1 + 1.0))
    direction = expected.psi2_deg / np.linalg.norm(expected.psi2_deg)
    coeff = np.vdot(direction, plus.psi2_deg)
    g_coeff = 0.5 * (1.0 / 30 + 1.0 / 31)
    coeff_dev = abs(coeff - g_coeff / cfg.Ecal)
    kernel = verify_degenerate_kernel(h0, 0.0, plus.subspace_basis)
    _report(
        "criterion 3 (degenerate machinery)",
        lam_dev <= 1e-12 and coeff_dev <= 1e-12 and kernel <= 1e-10,
        f"lambda dev {lam_dev:.3e}, G coeff dev {coeff_dev:.3e} (<= 1e-12), "
        f"kernel {kernel:.3e} (<= 1e-10)",
    )


@pytest.mark.parametrize("branch,eps", [(Branch.NONDEGENERATE, 0.32), (Branch.DEGENERATE_PLUS, 1.0)])
def test_criterion_4_effective_potential(branch, eps):
    cfg = SpinScenarioConfig(J=30, g=0.29, eps=eps, Ecal=1.0, branch=branch)
    model, chi0, expected = build_scenario(cfg)
    coeffs = gaussian_coefficients(cfg.J, cfg.a)
    e = expected.E0 + cfg.g * expected.E1
    times = np.linspace(0.0, cfg.period, 50)
    samples = sample_potential_zeroth(expected.psi0, model, chi0, e, times)
    dev = 0.0
    for i, t in enumerate(times):
        ref = analytic_effective_potential(cfg, coeffs, float(t))
        dev = max(dev, float(np.max(np.abs(samples[i] - ref))))
    if branch is Branch.DEGENERATE_PLUS:
        from relchron.hilbert import condition_raw
        from relchron.relational import evolve_clock

        for t in times[:10]:
            chi_t = evolve_clock(chi0, model.H_c, cfg.g, float(t))
            el = analytic_appendixA_elements(cfg, coeffs, float(t))
            w = condition_raw(expected.psi0, chi_t)
            u = condition_raw(model.V_coupling @ expected.psi0, chi_t)
            dev = max(dev, float(np.max(np.abs(el.overlap - w))))
            dev = max(dev, float(np.max(np.abs(el.VPsi_overlap - u))))
            dev = max(dev, abs(el.scalar - complex(np.vdot(u, w))))
    _report(
        f"criterion 4 (effective potential closed forms, {branch.name})",
        dev <= 1e-10,
        f"max deviation {dev:.3e} (<= 1e-10) over 50 grid times",
    )


def _sweep_exponents(branch, eps, g):
    cfg = SpinScenarioConfig(
        J=30, g=g, eps=eps, Ecal=1.0, branch=branch, n_times=400
    )
    sweep = sweep_scenario(cfg, [g, g / 2, g / 4])
    return sweep["exponents"]


def test_criterion_5_scaling_degenerate():
    exps = _sweep_exponents(Branch.DEGENERATE_PLUS, 1.0, 0.29)
    e1, e2 = exps["tipt_vs_tdpt"], exps["exact_vs_tdpt"]
    ok = 1.8 <= e1 <= 2.2 and 1.8 <= e2 <= 2.2
    _report(
        "criterion 5 (O(g^2) scaling, degenerate set)",
        ok,
        f"tipt-vs-tdpt {e1:.3f}, exact-vs-tdpt {e2:.3f} (in [1.8, 2.2])",
    )


def test_criterion_5_scaling_nondegenerate():
    # Known red: the leading population deviations cancel at O(g^2) in this
    # parameter set and the fitted exponents land near 3.5-3.8.
    exps = _sweep_exponents(Branch.NONDEGENERATE, 0.32, 0.17)
    e1, e2 = exps["tipt_vs_tdpt"], exps["exact_vs_tdpt"]
    ok = 1.8 <= e1 <= 2.2 and 1.8 <= e2 <= 2.2
    _report(
        "criterion 5 (O(g^2) scaling, nondegenerate set)",
        ok,
        f"tipt-vs-tdpt {e1:.3f}, exact-vs-tdpt {e2:.3f} (in [1.8, 2.2])",
    )


def _fwhm(J, a, Ecal=1.0, n=40001):
    coeffs = gaussian_coefficients(J, a)
    ts = np.linspace(-np.pi / Ecal, np.pi / Ecal, n)
    vals = np.array([abs(eval_B(coeffs, Ecal, float(t))) for t in ts])
    half = vals.max() / 2.0
    i0 = int(np.argmax(vals))
    lo = i0
    while lo > 0 and vals[lo - 1] >= half:
        lo -= 1
    hi = i0
    while hi < n - 1 and vals[hi + 1] >= half:
        hi += 1
    return float(ts[hi] - ts[lo])


def test_criterion_6_period_and_maximum():
    coeffs = gaussian_coefficients(30, 1.0)
    T = 2.0 * np.pi
    per_dev = max(
        abs(eval_B(coeffs, 1.0, t + T) - eval_B(coeffs, 1.0, t))
        for t in (0.0, 0.37, 1.9, 4.4)
    )
    grid = np.linspace(0.0, T, 400, endpoint=False)
    vals = np.array([abs(eval_B(coeffs, 1.0, float(t))) for t in grid])
    max_at_zero = int(np.argmax(vals)) == 0
    _report(
        "criterion 6 (B(t) period and maximum)",
        per_dev <= 1e-10 and max_at_zero,
        f"period deviation {per_dev:.3e} (<= 1e-10), argmax at t=0: {max_at_zero}",
    )


def test_criterion_6_fwhm_ordering():
    # Known red: small a spreads the b_m widely in m (broad energy spread),
    # which makes the B(t) peak narrower, not broader.  Measured widths
    # increase with a, the opposite of the stated ordering.
    w01, w1, w10 = _fwhm(30, 0.1), _fwhm(30, 1.0), _fwhm(30, 10.0)
    ok = w01 > w1 > w10
    _report(
        "criterion 6 (FWHM ordering)",
        ok,
        f"FWHM a=0.1: {w01:.4f}, a=1: {w1:.4f}, a=10: {w10:.4f} "
        "(asserted a=0.1 > a=1 > a=10)",
    )


def test_criterion_7_periodicity(nd30, deg30):
    gaps = {}
    for name, res in (("nondegenerate", nd30), ("degenerate", deg30)):
        gaps[name] = 1.0 - abs(np.vdot(res.exact.states[-1], res.exact.states[0]))
    worst = max(gaps.values())
    _report(
        "criterion 7 (trajectory periodicity)",
        worst <= 1e-8,
        f"1 - fidelity at T: {gaps['nondegenerate']:.3e} / {gaps['degenerate']:.3e} (<= 1e-8)",
    )


def test_criterion_8_determinism(tmp_path):
    payload = {
        "scenario": {
            "J": 6, "g": 0.29, "eps": 1.0, "Ecal": 1.0,
            "branch": "degenerate_plus", "n_times": 50,
        }
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(payload))
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", str(cfg), "--out", str(out1), "--no-plot"]) == 0
    assert main(["run", "--config", str(cfg), "--out", str(out2), "--no-plot"]) == 0
    identical = True
    for p in sorted(out1.iterdir()):
        if p.suffix in (".csv", ".json"):
            identical = identical and p.read_bytes() == (out2 / p.name).read_bytes()
    _report(
        "criterion 8 (byte determinism)",
        identical,
        "CSV/JSON outputs byte-identical across two runs",
    )
