"""Acceptance criteria 1-10, one test and one verdict line each."""

import json
import math
import time

import numpy as np

from spirallog.bounds import (
    coefficient_bounds,
    fekete_szego_bound,
    fekete_szego_check,
    fs_breakpoints,
    gamma_conjecture_G,
    gamma_sums_G,
    growth_envelopes,
    hankel_check,
    hankel_h22,
    inverse_functional_bound,
)
from spirallog.cli import RunConfig, cmd_verify, main
from spirallog.config import TOL
from spirallog.membership import Family, member_G, member_N, member_st_ss, random_schwarz
from spirallog.series import TruncatedSeries as S, div, exp0, log1, mul, pow_real
from spirallog.spiral import read_points_csv
from spirallog.zoo import closed_form_G_F, extremal_F, log_coefficients, transform_G, transform_N

from conftest import random_coeffs, record

LAMS = (0.25, 0.5, 0.75, 1.0)
SEEDS = range(500)


def _members(build, lam, order=64):
    return [build(lam, random_schwarz(s, order), order) for s in SEEDS]


def test_criterion_01_conjecture_attainment():
    t0 = time.perf_counter()
    worst = 0.0
    for lam in (0.1, 0.5, 1.0):
        for n in range(1, 11):
            g = transform_G(extremal_F(lam / n, 1, n, 4 * n + 5))
            worst = max(worst, abs(log_coefficients(g, n)[n] - lam / (2 * n * (n + 1))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 5
    line = f"max |gamma_n - lam/(2n(n+1))| = {worst:.2e} (<= 1e-10), {dt:.2f}s (< 5s)"
    record(1, ok, line)
    assert ok, line


def test_criterion_02_conjecture_sweep():
    t0 = time.perf_counter()
    violations, worst = 0, math.inf
    for lam in LAMS:
        for f in _members(member_G, lam):
            rep = gamma_conjecture_G(f, lam, nmax=12, tol=1e-8)
            violations += not rep.passed
            worst = min(worst, rep.worst_margin)
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 60
    line = f"{violations} violations over 2000 G members, worst margin {worst:.2e}, {dt:.1f}s (< 60s)"
    record(2, ok, line)
    assert ok, line


def test_criterion_03_st_ss_log_coefficients():
    violations = 0
    for lam in LAMS:
        for f in _members(member_st_ss, lam):
            g = log_coefficients(f).abs
            n = np.arange(1, len(g) + 1)
            violations += int(np.any(g > lam / (2 * n) + 1e-8))
    gap = max(abs(log_coefficients(extremal_F(lam, 1, n, 64), n)[n] - lam / (2 * n))
              for lam in LAMS for n in range(1, 9))
    ok = violations == 0 and gap <= 1e-10
    line = f"{violations} violations over 2000 ST_ss members; extremal gap {gap:.2e} (<= 1e-10)"
    record(3, ok, line)
    assert ok, line


def test_criterion_04_square_sum_constants():
    worst = math.inf
    for f in _members(member_G, 1.0):
        worst = min(worst, gamma_sums_G(f, 1.0, tol=1e-8).worst_margin)
    ok = worst >= -1e-8
    line = f"six partial sums over 500 G(1) members, worst margin {worst:.3e} (>= -1e-8)"
    record(4, ok, line)
    assert ok, line


def test_criterion_05_hankel():
    gap = max(abs(hankel_h22(extremal_F(lam, 1, 2, 16)) + lam**2 / 4) for lam in (0.3, 0.7, 1.0))
    violations = 0
    for lam in (0.3, 0.7, 1.0):
        for s in SEEDS:
            f = member_st_ss(lam, random_schwarz(s, 16), 16)
            violations += not hankel_check(f, lam, tol=1e-9).passed
    ok = gap <= 1e-12 and violations == 0
    line = f"extremal |H + lam^2/4| = {gap:.2e} (<= 1e-12); {violations} violations over 1500 members"
    record(5, ok, line)
    assert ok, line


def test_criterion_06_fekete_szego():
    violations, mid_gap, outer_gap, inv_gap = 0, 0.0, 0.0, 0.0
    branches = set()
    for lam in (0.4, 1.0):
        lo, hi = fs_breakpoints(lam)
        deltas = np.linspace(lo - 1, hi + 1, 50)
        branches |= {(lam, fekete_szego_bound(lam, d).branch) for d in deltas}
        for s in SEEDS:
            violations += not fekete_szego_check(member_st_ss(lam, random_schwarz(s, 16), 16), deltas, lam).passed
        mid = deltas[(deltas >= lo) & (deltas <= hi)]
        outer = deltas[(deltas < lo) | (deltas > hi)]
        rep = fekete_szego_check(extremal_F(lam, 1, 2, 16), mid, lam)
        mid_gap = max(mid_gap, max(abs(e.margin) for e in rep.per_index))
        rep = fekete_szego_check(extremal_F(lam, 1, 1, 16), outer, lam)
        outer_gap = max(outer_gap, max(abs(e.margin) for e in rep.per_index))
        inv_gap = max(inv_gap, max(abs(inverse_functional_bound(lam, d).bound
                                       - fekete_szego_bound(lam, 1 - d).bound) for d in deltas))
    ok = (violations == 0 and len(branches) == 6 and mid_gap <= 1e-9
          and outer_gap <= 1e-9 and inv_gap <= 1e-14)
    line = (f"{violations} violations (1000 members x 50 deltas, 3 branches each lambda); "
            f"attainment mid {mid_gap:.1e} outer {outer_gap:.1e} (<= 1e-9); inverse {inv_gap:.1e} (<= 1e-14)")
    record(6, ok, line)
    assert ok, line


def test_criterion_07_growth_distortion():
    go = TOL.grid_order
    closed = 0.0
    for lam in LAMS:
        f = closed_form_G_F(lam, go)
        closed = max(closed, max(abs(abs(f(r)) - ((1 + r) ** (1 + lam) - 1) / (1 + lam)) for r in (0.25, 0.5, 0.9)))
    worst, worst_arg = math.inf, math.inf
    for lam in LAMS:
        for s in range(100):
            w = random_schwarz(s, go)
            rg = growth_envelopes(member_G(lam, w, go), lam, Family.G_FAMILY)
            rn = growth_envelopes(member_N(lam, w, go), lam, Family.N_FAMILY)
            worst = min(worst, rg.worst_margin, rn.worst_margin)
            worst_arg = min(worst_arg, min(e.margin for e in rg.per_index if e.label == "|arg f'|"))
    ok = closed <= 1e-12 and worst >= -1e-7 and worst_arg >= -1e-7
    line = (f"closed form gap {closed:.1e} (<= 1e-12); worst envelope margin {worst:.2e}, "
            f"arg f' margin {worst_arg:.2e} over 800 members (>= -1e-7)")
    record(7, ok, line)
    assert ok, line


def test_criterion_08_coefficient_bounds():
    violations = 0
    for lam in LAMS:
        for s in SEEDS:
            w = random_schwarz(s, 64)
            violations += not coefficient_bounds(member_G(lam, w, 64), lam, Family.G_FAMILY, nmax=16).passed
            violations += not coefficient_bounds(member_N(lam, w, 64), lam, Family.N_FAMILY, nmax=16).passed
    gap = 0.0
    for lam in LAMS:
        for n in range(2, 17):
            base = extremal_F(lam / (n - 1), 1, n - 1, 64)
            gap = max(gap, abs(abs(transform_G(base).a[n]) - lam / (n * (n - 1))),
                      abs(abs(transform_N(base).a[n]) - lam / (n - 1)))
    ok = violations == 0 and gap <= 1e-10
    line = f"{violations} violations over 4000 G/N members (n <= 16); extremal gap {gap:.2e} (<= 1e-10)"
    record(8, ok, line)
    assert ok, line


def test_criterion_09_kernel_health():
    rng = np.random.default_rng(9)
    worst = {"exp/log": 0.0, "log/exp": 0.0, "pow": 0.0, "mul/div": 0.0}
    for _ in range(1000):
        a = S(random_coeffs(rng, 64, c0=1.0, decay=0.5))
        b = S(random_coeffs(rng, 64, c0=0.0, decay=0.5))
        c = S(random_coeffs(rng, 64, decay=0.5))
        worst["exp/log"] = max(worst["exp/log"], np.max(np.abs(exp0(log1(a)).coeffs - a.coeffs)))
        worst["log/exp"] = max(worst["log/exp"], np.max(np.abs(log1(exp0(b)).coeffs - b.coeffs)))
        back = pow_real(pow_real(a, 0.3), 1 / 0.3)
        worst["pow"] = max(worst["pow"], np.max(np.abs(back.coeffs - a.coeffs)))
        worst["mul/div"] = max(worst["mul/div"], np.max(np.abs(mul(div(c, a), a).coeffs - c.coeffs)))
    prod = 0.0
    for lam in (0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
        P = pow_real(S([1, 1] + [0] * 63), lam).coeffs
        expected = np.cumprod(np.concatenate([[1.0], (lam - np.arange(64)) / np.arange(1, 65)]))
        prod = max(prod, np.max(np.abs(P - expected)))
    ok = max(worst.values()) <= 1e-11 and prod <= 1e-14
    parts = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    line = f"roundtrips over 1000 series: {parts} (<= 1e-11); product formula {prod:.1e} (<= 1e-14)"
    record(9, ok, line)
    assert ok, line


def test_criterion_10_determinism_and_plumbing(tmp_path, capsys):
    cfg = RunConfig("verify", lam=0.5, family="ST_SS", seeds=20, base_seed=7)
    docs = [cmd_verify(cfg)[1] for _ in range(2)]
    for d in docs:
        d.pop("generated_at")
    same = json.dumps(docs[0]) == json.dumps(docs[1])
    out = tmp_path / "boundary.csv"
    code = main(["boundary", "--lambda", "0.6", "--out", str(out)])
    capsys.readouterr()
    pts = read_points_csv(out)
    vertex = float(np.min(np.abs(pts - 2**0.6)))
    ok = same and code == 0 and vertex <= 1e-12
    line = f"repeat verify identical: {same}; boundary CSV vertex distance {vertex:.1e} (<= 1e-12)"
    record(10, ok, line)
    assert ok, line
