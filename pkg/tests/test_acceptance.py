"""Acceptance battery: one test per shipped guarantee, one summary line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every expected number here was either verified symbolically or
computed by an independent oracle (noted inline) before being frozen.
"""

import time

import numpy as np
import pytest
from scipy import integrate

from harmgrid import (
    MultiplierSpec,
    WaveConfig,
    a_alpha_closed,
    a_alpha_quadrature,
    check_bound_hypotheses,
    config_for,
    constant_exponent,
    darboux_solution,
    decay_exponent_fit,
    default_t_grid,
    exponent_transform,
    f_alpha,
    f_star,
    fd_stability_bound,
    gaussian_bump,
    gaussian_part,
    hardy_littlewood_maximal,
    imaginary_power,
    log_holder_constants,
    luxemburg_norm,
    mellin_reconstruct,
    plane_wave,
    random_band_limited,
    sine_exponent,
    small_time_limit_error,
    spherical_maximal,
    spherical_mean,
    star_part,
    step_exponent,
    wave_fd_oracle,
    wave_propagate,
)
from harmgrid.cli import main as cli_main
from harmgrid.grid import GridFunction, l2_norm

EULER = 0.5772156649015329


def _report(num, ok, detail):
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'} {detail}")


def test_c01_imaginary_power_is_isometry():
    start = time.time()
    grids = ((1024,), (128, 128), (32, 32, 32))
    worst = 0.0
    for sizes in grids:
        for seed in range(20):
            f = random_band_limited(seed=seed, cutoff=min(sizes) // 4, sizes=sizes)
            base = l2_norm(f)
            for u in (0.5, -0.5, 7.3, -7.3, 100.0, -100.0):
                ratio = l2_norm(imaginary_power(f, u)) / base
                worst = max(worst, abs(ratio - 1.0))
    elapsed = time.time() - start
    ok = worst <= 1e-12 and elapsed < 5.0
    _report(1, ok, f"isometry drift {worst:.2e} (tol 1e-12), {elapsed:.1f}s")
    assert worst <= 1e-12
    assert elapsed < 5.0


def test_c02_profile_collapses_to_sinc():
    start = time.time()
    spec = MultiplierSpec(alpha=0.0, n=3)
    lam = np.linspace(0.01, 10.0, 1000)
    err = np.max(np.abs(f_alpha(lam, spec) - np.sin(2 * np.pi * lam) / lam))
    elapsed = time.time() - start
    ok = err <= 1e-10 and elapsed < 1.0
    _report(2, ok, f"sinc collapse max err {err:.2e} (tol 1e-10), {elapsed:.2f}s")
    assert err <= 1e-10
    assert elapsed < 1.0


def test_c03_kernel_mass_matches_quadrature():
    # oracle: radial quadrature of (1-|x|^2)^(alpha-1)/Gamma(alpha) over the
    # unit ball via r = sin(theta), against the closed-form value at zero
    start = time.time()
    sphere_area = {2: 2 * np.pi, 3: 4 * np.pi}
    from math import gamma as real_gamma

    worst = 0.0
    for n, alpha in ((2, 0.5), (3, 0.5), (3, 1.0)):
        spec = MultiplierSpec(alpha=alpha, n=n)
        radial, quad_err = integrate.quad(
            lambda th: np.cos(th) ** (2 * alpha - 1) * np.sin(th) ** (n - 1),
            0.0,
            np.pi / 2,
            epsabs=1e-12,
        )
        assert quad_err < 1e-9
        mass = sphere_area[n] * radial / real_gamma(alpha)
        worst = max(worst, abs(spec.value_at_zero - mass))
    elapsed = time.time() - start
    ok = worst <= 1e-6 and elapsed < 10.0
    _report(3, ok, f"kernel mass vs quadrature, worst {worst:.2e} (tol 1e-6)")
    assert worst <= 1e-6
    assert elapsed < 10.0


def test_c04_coefficient_closed_vs_quadrature():
    start = time.time()
    spec = MultiplierSpec(alpha=0.0, n=3)
    worst = 0.0
    for u in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0):
        closed = a_alpha_closed(u, spec)
        quad = a_alpha_quadrature(u, spec, s_max=20.0, steps=200_000)
        rel = abs(quad.value - closed) / abs(closed)
        worst = max(worst, rel)
        assert abs(quad.value - closed) <= quad.tail_bound
    elapsed = time.time() - start
    ok = worst <= 1e-3 and elapsed < 30.0
    _report(4, ok, f"closed vs quadrature, worst rel {worst:.2e} (tol 1e-3), {elapsed:.1f}s")
    assert worst <= 1e-3
    assert elapsed < 30.0


def test_c05_coefficient_value_at_zero():
    # Pinned: a_alpha_closed(0; n=3, alpha=0) = (2 - gamma_E)/(2 pi).
    # The implementation computes the u=0 coefficient of the pinned profile
    # F*(lam) = sin(2 pi lam)/lam - 2 pi e^(-lam^2), which direct quadrature
    # of F* confirms to 2.6e-7 (see the closed-vs-quadrature criterion);
    # that limit is (psi(3/2) - 2 ln pi)/(4 Gamma(3/2)) * pi^(1/2)
    # = -1.1264849. The pinned constant is instead the u=0 coefficient of
    # the unit-argument profile K lam^(1-a) J_(a-1)(lam) with
    # K = 2^(a-1) sqrt(pi) Gamma(a - 1/2), a = 3/2 -- a differently scaled
    # family whose coefficients carry 2^(-iu) in place of pi^(iu).
    spec = MultiplierSpec(alpha=0.0, n=3)
    got = a_alpha_closed(0.0, spec)
    expected = (2.0 - EULER) / (2.0 * np.pi)
    diff = abs(got - expected)
    ok = diff <= 1e-6
    _report(
        5,
        ok,
        f"value at u=0 is {got.real:+.7f}, pinned constant {expected:+.7f}, "
        f"diff {diff:.3e} (tol 1e-6)",
    )
    assert diff <= 1e-6, (
        f"a_alpha_closed(0) = {got.real:.7f} is the u=0 coefficient of the "
        f"pinned profile sin(2 pi lam)/lam - 2 pi exp(-lam^2), confirmed "
        f"independently by quadrature of that profile; the pinned constant "
        f"(2 - gamma_E)/(2 pi) = {expected:.7f} belongs to the unit-argument "
        f"Bessel family K lam^(-1/2) J_(1/2)(lam) - K' exp(-lam^2), which is "
        f"not the profile this toolkit realizes. No scaling of u reconciles "
        f"the two (the bracket differs by pi^(iu) vs 2^(-iu))."
    )


def test_c06_coefficient_decay_exponents():
    worst = 0.0
    for n, alpha in ((3, 0.0), (2, 0.5), (3, 0.5)):
        spec = MultiplierSpec(alpha=alpha, n=n)
        slope = decay_exponent_fit(spec, u_lo=100.0, u_hi=1000.0)
        worst = max(worst, abs(slope + alpha + n / 2.0))
    ok = worst <= 0.1
    _report(6, ok, f"decay exponent fits, worst dev {worst:.3f} (tol 0.1)")
    assert worst <= 0.1


def test_c07_reconstruction_inverts_coefficients():
    spec = MultiplierSpec(alpha=0.0, n=3)
    # F*(1) = sin(2 pi)/1 - 2 pi e^(-1) = -2 pi / e
    target = -2.0 * np.pi / np.e
    got = mellin_reconstruct(1.0, spec, u_max=200.0, du=0.01)
    err_main = abs(got - target)
    errs = [
        abs(mellin_reconstruct(1.0, spec, u_max=u, du=0.01) - target)
        for u in (50.0, 100.0, 200.0, 400.0)
    ]
    monotone = all(errs[i + 1] <= errs[i] * 1.1 for i in range(3))
    ok = err_main <= 1e-2 and monotone
    _report(
        7,
        ok,
        f"reconstruction err {err_main:.2e} (tol 1e-2), ladder "
        + "->".join(f"{e:.1e}" for e in errs),
    )
    assert err_main <= 1e-2
    assert monotone


def test_c08_wave_eigenmode_dispersion():
    cases = {
        2: (((3, 0), 0.25), ((1, 2), 0.5), ((2, 2), 1.0)),
        3: (((1, 0, 0), 0.3), ((1, 1, 0), 0.75), ((2, 1, 1), 1.5)),
    }
    sizes = {2: (32, 32), 3: (16, 16, 16)}
    worst = 0.0
    for n, pairs in cases.items():
        for k, t in pairs:
            f = plane_wave(k, sizes[n])
            cfg = config_for(f, t_grid=(t,))
            lam = np.sqrt(sum(c * c for c in k))
            coeff = np.sin(2 * np.pi * lam * t) / (2 * np.pi * lam)
            out = wave_propagate(f, t, cfg)
            worst = max(worst, np.max(np.abs(out.samples - coeff * f.samples)))
    ok = worst <= 1e-8
    _report(8, ok, f"plane-wave dispersion, worst {worst:.2e} (tol 1e-8)")
    assert worst <= 1e-8


def test_c09_universal_wave_symbol():
    rng = np.random.default_rng(90)
    worst = 0.0
    for n in (1, 2, 3, 4):
        cfg = WaveConfig(n=n, t_grid=(1.0,))
        spec = MultiplierSpec(alpha=cfg.alpha, n=n)
        for _ in range(100):
            t = rng.uniform(0.01, 3.0)
            lam = rng.uniform(0.01, 20.0)
            lhs = cfg.c_n * t * f_alpha(t * lam, spec)
            rhs = np.sin(2 * np.pi * t * lam) / (2 * np.pi * lam)
            worst = max(worst, abs(lhs - rhs))
    ok = worst <= 1e-10
    _report(9, ok, f"universal symbol across n=1..4, worst {worst:.2e} (tol 1e-10)")
    assert worst <= 1e-10


def test_c10_fd_oracle_second_order():
    start = time.time()
    sizes = (128, 128)
    f = random_band_limited(seed=17, cutoff=8, sizes=sizes, real=True)
    f = f.with_samples(f.samples - np.mean(f.samples))
    cfg = config_for(f, t_grid=(0.1,))
    t = 0.5
    exact = wave_propagate(f, t, cfg)
    bound = fd_stability_bound(sizes, 1.0, 2)
    errs = [
        l2_norm(GridFunction(exact.samples - wave_fd_oracle(f, t, bound / d).samples))
        for d in (2, 4, 8)
    ]
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    elapsed = time.time() - start
    ok = all(3.2 <= r <= 4.8 for r in ratios) and elapsed < 60.0
    _report(
        10,
        ok,
        f"dt-halving error ratios {ratios[0]:.2f}, {ratios[1]:.2f} "
        f"(want 4 +- 20%), {elapsed:.1f}s",
    )
    for r in ratios:
        assert 3.2 <= r <= 4.8
    assert elapsed < 60.0


def test_c11_norm_axioms_and_examples():
    # golden-ratio two-region example
    f2 = GridFunction(np.ones(64, dtype=complex), side=2.0)
    p2 = step_exponent(1.0, 2.0, (64,), side=2.0)
    golden_err = abs(luxemburg_norm(f2, p2) - (1 + np.sqrt(5.0)) / 2)

    # constant-exponent agreement with the classical norm
    rng = np.random.default_rng(110)
    vals = rng.normal(size=64) + 1j * rng.normal(size=64)
    f = GridFunction(vals)
    classical_err = 0.0
    for q in (1.0, 2.0, 3.7):
        p = constant_exponent(q, (64,))
        classical = (np.mean(np.abs(vals) ** q)) ** (1.0 / q)
        classical_err = max(
            classical_err, abs(luxemburg_norm(f, p) - classical) / classical
        )

    # norm axioms on 50 random pairs
    p = sine_exponent(2.2, 0.8, (64,))
    from harmgrid import modular

    axiom_ok = True
    for _ in range(50):
        a = rng.normal(size=64) + 1j * rng.normal(size=64)
        b = rng.normal(size=64) + 1j * rng.normal(size=64)
        fa, fb = GridFunction(a), GridFunction(b)
        na, nb = luxemburg_norm(fa, p), luxemburg_norm(fb, p)
        axiom_ok &= luxemburg_norm(GridFunction(a + b), p) <= (na + nb) * (1 + 1e-10)
        c = rng.uniform(0.1, 5.0)
        axiom_ok &= abs(luxemburg_norm(GridFunction(c * a), p) - c * na) <= 1e-10 * c * na
        shrink = GridFunction(a * rng.uniform(0.0, 1.0, size=64))
        axiom_ok &= luxemburg_norm(shrink, p) <= na * (1 + 1e-12)
        axiom_ok &= modular(fa, p, na * (1 + 1e-8)) <= 1.0 + 1e-6

    ok = golden_err <= 1e-8 and classical_err <= 1e-10 and axiom_ok
    _report(
        11,
        ok,
        f"golden-ratio err {golden_err:.1e} (tol 1e-8), classical err "
        f"{classical_err:.1e} (tol 1e-10), axioms on 50 pairs "
        f"{'hold' if axiom_ok else 'VIOLATED'}",
    )
    assert golden_err <= 1e-8
    assert classical_err <= 1e-10
    assert axiom_ok


def test_c12_exponent_transform_contract():
    # worked constant case: exact values
    p_const = constant_exponent(2.0, (16,))
    tr_const = exponent_transform(p_const, alpha=0.0, n=3)
    exact_ok = (
        tr_const.theta == 0.25
        and bool(np.all(tr_const.p_tilde.samples == 2.0))
        and abs(tr_const.delta - 1.0 / 12) <= 1e-16
    )

    p = sine_exponent(2.1, 0.3, (64,))
    tr = exponent_transform(p, alpha=0.0, n=3)
    identity_err = np.max(
        np.abs((1.0 / p.samples - 0.5) - tr.theta * (1.0 / tr.p_tilde.samples - 0.5))
    )
    window = 1.0 - 2.0 / 3 + 0.0
    window_ok = 0.0 < tr.theta < window
    c_p = log_holder_constants(p).c1
    c_t = log_holder_constants(tr.p_tilde).c1
    scaling_err = abs(c_t - c_p / tr.theta)

    ok = exact_ok and identity_err <= 1e-12 and window_ok and scaling_err <= 1e-10
    _report(
        12,
        ok,
        f"interpolation identity err {identity_err:.1e} (tol 1e-12), theta "
        f"{tr.theta:.4f} in (0, {window:.4f}), smoothness scaling err "
        f"{scaling_err:.1e} (tol 1e-10), worked case "
        f"{'exact' if exact_ok else 'WRONG'}",
    )
    assert exact_ok
    assert identity_err <= 1e-12
    assert window_ok
    assert scaling_err <= 1e-10


def test_c13_range_check_truth_table(capsys):
    p2 = constant_exponent(2.0, (8,))
    p12 = constant_exponent(1.2, (8,))
    table = (
        (p2, "cor35", True, "pass 1.5 < 2 <= 2 < 4"),
        (p2, "cor36_wave", True, "pass 1.5 < 2 <= 2 < 3"),
        (p12, "cor35", False, None),
        (p2, "thm32", True, "pass 1.5 < 2 <= 2 < 3"),
        (p2, "thm34", True, "pass 1.5 < 2 <= 2 < 4"),
    )
    results = []
    for p, claim, want_pass, want_chain in table:
        rep = check_bound_hypotheses(p, alpha=0.0, n=3, claim=claim)
        good = rep.passed == want_pass
        if want_chain is not None:
            good &= rep.chain == want_chain
        results.append(good)

    # sixth case: the command-line front end prints the same verdict
    code = cli_main(
        ["hypotheses", "--claim", "cor35", "--dim", "3", "--size", "8",
         "--exponent", "const:2"]
    )
    out = capsys.readouterr().out
    results.append(code == 0 and out.strip() == "pass 1.5 < 2 <= 2 < 4")

    ok = all(results)
    with capsys.disabled():
        _report(13, ok, f"range-check verdicts {sum(results)}/6 as stated")
    assert all(results), results


def test_c14_spherical_mean_splits():
    worst = 0.0
    for sizes, alpha, n in (((32, 32, 32), 0.0, 3), ((64, 64), 0.5, 2)):
        f = random_band_limited(seed=14, cutoff=5, sizes=sizes)
        for t in (0.1, 0.45):
            total = spherical_mean(f, t, alpha)
            recomposed = (
                star_part(f, t, alpha).samples + gaussian_part(f, t, alpha, n).samples
            )
            worst = max(worst, np.max(np.abs(total.samples - recomposed)))
    ok = worst <= 1e-10
    _report(14, ok, f"pinned + gaussian split, worst {worst:.2e} (tol 1e-10)")
    assert worst <= 1e-10


def test_c15_maximal_domination_one_dimension():
    # order-zero analog on the circle: the two-point-average maximal
    # function dominates the geometric one up to 5% grid slack; the
    # kernel mass at (n=1, order 0) is exactly 1
    h = 1.0 / 64
    radii = np.arange(33) * h
    t_grid = default_t_grid((64,), 1.0, 64)
    worst = 0.0
    for width in (4 * h, 6 * h, 10 * h):
        f = gaussian_bump((0.5,), width, (64,))
        hl = hardy_littlewood_maximal(f, radii).samples.real
        sup = spherical_maximal(f, 0.0, t_grid).values.samples.real
        worst = max(worst, float(np.max(hl / sup)))
    ok = worst <= 1.05
    _report(15, ok, f"geometric <= spherical maximal, worst ratio {worst:.4f} (tol 1.05)")
    assert worst <= 1.05


def test_c16_norm_growth_stays_polynomial():
    us = np.array([2.0**k for k in range(9)])  # 1 .. 256
    sizes = (16, 16, 16)
    exponents = (
        constant_exponent(2.0, sizes),
        sine_exponent(2.0, 0.3, sizes),
    )
    cap = 3.0 / 2 + 1.0
    worst = -np.inf
    for seed in (1, 2, 3):
        f = random_band_limited(seed=seed, cutoff=4, sizes=sizes)
        for p in exponents:
            base = luxemburg_norm(f, p)
            ratios = [
                luxemburg_norm(imaginary_power(f, float(u)), p) / base for u in us
            ]
            slope = np.polyfit(np.log(1 + us), np.log(ratios), 1)[0]
            worst = max(worst, slope)
    ok = worst <= cap
    _report(16, ok, f"norm-growth log-log slope max {worst:+.4f} (cap {cap})")
    assert worst <= cap


def test_c17_a_priori_ratio_stability():
    from harmgrid import a_priori_ratio

    ratios = []
    for size in (32, 64):
        f = gaussian_bump((0.5, 0.5), 0.1, (size, size))
        cfg = config_for(f, t_grid=None, points=32)
        p = constant_exponent(2.0, (size, size))
        ratios.append(a_priori_ratio(f, p, cfg))
    finite = all(np.isfinite(r) for r in ratios)
    stable = max(ratios) / min(ratios) <= 2.0

    f = gaussian_bump((0.5, 0.5), 0.1, (64, 64))
    cfg = config_for(f)
    errs = [small_time_limit_error(f, cfg, t) for t in (2e-3, 1e-3, 5e-4)]
    quad_ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    quadratic = all(3.2 <= r <= 4.8 for r in quad_ratios)

    ok = finite and stable and quadratic
    _report(
        17,
        ok,
        f"a-priori ratio {ratios[0]:.4f} -> {ratios[1]:.4f} under refinement "
        f"(factor {max(ratios)/min(ratios):.3f} <= 2), small-time halving ratios "
        f"{quad_ratios[0]:.2f}, {quad_ratios[1]:.2f}",
    )
    assert finite
    assert stable
    assert quadratic


def test_c05_supplement_zero_limit_constants_frozen():
    # companion check, not a numbered criterion: the two candidate u=0
    # constants differ by a fixed amount; freezing both keeps the
    # discrepancy visible if either evaluation path drifts
    spec = MultiplierSpec(alpha=0.0, n=3)
    got = a_alpha_closed(0.0, spec).real
    assert abs(got - (-1.1264848988601119)) <= 1e-12
    pinned = (2.0 - EULER) / (2.0 * np.pi)
    assert abs(pinned - 0.2264431598846367) <= 1e-15
