"""End-to-end acceptance checks, one test per criterion.

Every test prints a ``PASS``/``FAIL`` line with the measured numbers and then
asserts.  Timing checks are ratio based and run single threaded.
"""

import time

import numpy as np
import pytest
import scipy.linalg as sla

from conftest import spec, symplectic_orthogonal
from nrmschur import (
    WXMatrix,
    hausdorff_distance,
    normal_schur,
    random_normal_matrix,
    skew_schur_decompose,
    wx_eigen,
)
from nrmschur.bench import (
    cmd_accuracy,
    cmd_alpha_sweep,
    cmd_bench,
    cmd_fundamental_formula,
    cmd_karcher,
)
from nrmschur.dense import frobenius_norm, skew_part, sym_part
from nrmschur.kernels import get_provider
from nrmschur.normal import cluster_sigmas

pytestmark = pytest.mark.slow


def _fmt(xs):
    return ", ".join(f"{x:.3e}" for x in xs)


def test_01_accuracy_best_scenario(report):
    t0 = time.perf_counter()
    rows = cmd_accuracy([10, 33, 100], "best_so", 100, seed=1)
    elapsed = time.perf_counter() - t0
    res = [r["residual"] for r in rows]
    orth = [r["orthogonality"] for r in rows]
    ok = all(1e-16 <= x <= 5e-14 for x in res + orth) and elapsed < 60
    report("1 accuracy best_so", ok, f"residual [{_fmt(res)}] orthogonality [{_fmt(orth)}] in {elapsed:.1f}s")
    assert ok


def test_02_accuracy_worst_scenario(report):
    rows = cmd_accuracy([10, 100], "worst_so", 100, seed=2)
    res = [r["residual"] for r in rows]
    orth = [r["orthogonality"] for r in rows]
    sym = [r["sym_discrepancy"] for r in rows]
    ok = all(1e-9 <= x <= 1e-6 for x in sym) and all(x <= 1e-13 for x in res + orth)
    report("2 accuracy worst_so", ok, f"sym [{_fmt(sym)}] residual [{_fmt(res)}] orthogonality [{_fmt(orth)}]")
    assert ok


ORACLE_SCENARIOS = ("best_so", "worst_so", "uniform_so", "random_normal", "alpha_mix(0.3)", "worst_case_sigma")


def test_03_oracle_equivalence(report):
    kp = get_provider("native")
    t0 = time.perf_counter()
    worst = {}
    for k, name in enumerate(ORACLE_SCENARIOS):
        rng = np.random.default_rng([3, k])
        dist = 0.0
        for _ in range(50):
            n = int(rng.integers(2, 61))
            a, _ = random_normal_matrix(spec(name, n), rng)
            mine = normal_schur(a, kp).eigenvalues()
            _, s = kp.general_real_schur(a)
            oracle = sla.eigvals(s)
            scale = max(np.abs(oracle).max(), np.finfo(float).tiny)
            dist = max(dist, hausdorff_distance(mine, oracle) / scale)
        worst[name] = dist
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-9 and elapsed < 120
    detail = ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    report("3 oracle equivalence", ok, f"{detail} in {elapsed:.1f}s")
    assert ok


def _distinct_sigma_instance(rng):
    while True:
        n = int(rng.integers(4, 41))
        a, _ = random_normal_matrix(spec("random_normal", n), rng)
        ss = skew_schur_decompose(skew_part(a))
        if len(cluster_sigmas(ss.sigma)) == ss.p:
            return a, ss


def test_04_structure_theorems(report):
    rng = np.random.default_rng(4)
    worst = dict(diagonal=0.0, wx=0.0, h_sym=0.0, null=0.0)
    for _ in range(20):
        # distinct sigma: leading block of Q^T A Q is diagonal
        a, ss = _distinct_sigma_instance(rng)
        q1 = ss.q_hat[:, : ss.p]
        g = q1.T @ a @ q1
        worst["diagonal"] = max(worst["diagonal"], frobenius_norm(g - np.diag(np.diag(g))) / frobenius_norm(a))

        # repeated sigma: V^T A V = [[W, -X - sI], [X + sI, W]]
        n = int(rng.integers(4, 41))
        a, truth = random_normal_matrix(spec("worst_case_sigma", n), rng)
        ss = skew_schur_decompose(skew_part(a), norm=frobenius_norm(a))
        p, r = ss.p, ss.r
        v = np.concatenate([ss.q_hat[:, :p], ss.q_hat[:, p + r :]], axis=1)
        vt = v.T @ a @ v
        sig = float(np.mean(ss.sigma))
        d11, d21, d22 = vt[:p, :p], vt[p:, :p], vt[p:, p:]
        wx = max(frobenius_norm(d11 - d22), frobenius_norm(sym_part(d21 - sig * np.eye(p))))
        worst["wx"] = max(worst["wx"], wx / frobenius_norm(a))

        # real block: H = Q_r^T A Q_r symmetric; skew(A) Q_r = 0
        n = int(rng.integers(4, 41))
        a, _ = random_normal_matrix(spec("alpha_mix(0.3)", n), rng)
        ss = skew_schur_decompose(skew_part(a), norm=frobenius_norm(a))
        q_r = ss.q_hat[:, ss.p : ss.p + ss.r]
        h = q_r.T @ a @ q_r
        worst["h_sym"] = max(worst["h_sym"], frobenius_norm(h - h.T) / frobenius_norm(a))
        worst["null"] = max(worst["null"], frobenius_norm(skew_part(a) @ q_r) / frobenius_norm(a))
    ok = worst["diagonal"] <= 1e-10 and worst["wx"] <= 1e-10 and worst["h_sym"] <= 1e-10 and worst["null"] <= 1e-11
    report("4 structure theorems", ok, ", ".join(f"{k}={v:.1e}" for k, v in worst.items()))
    assert ok


def _pair_rotation(p, angles, reflect=False):
    c, s = np.cos(angles), np.sin(angles)
    r = np.zeros((2 * p, 2 * p))
    i = np.arange(p)
    r[i, i] = c
    r[i, p + i] = -s
    r[p + i, i] = s
    r[p + i, p + i] = -c if reflect else c
    return r


def test_05_appendix_lemmas(report):
    rng = np.random.default_rng(5)
    rot_err, refl_min, j_err = 0.0, np.inf, 0.0
    for _ in range(100):
        p = int(rng.integers(1, 9))
        sigma = np.sort(rng.uniform(0.5, 3.0, p))[::-1] + np.arange(p)[::-1]
        k = np.block([[np.zeros((p, p)), -np.diag(sigma)], [np.diag(sigma), np.zeros((p, p))]])
        angles = rng.uniform(0, 2 * np.pi, p)
        rot = _pair_rotation(p, angles)
        rot_err = max(rot_err, frobenius_norm(rot @ k - k @ rot) / frobenius_norm(k))
        refl = _pair_rotation(p, angles, reflect=True)
        refl_min = min(refl_min, frobenius_norm(refl @ k - k @ refl) / frobenius_norm(k))

        m = int(rng.integers(1, 9))
        e, f = rng.standard_normal((m, m)), rng.standard_normal((m, m))
        u, _ = sla.polar(np.block([[e, -f], [f, e]]))
        j = np.block([[np.zeros((m, m)), -np.eye(m)], [np.eye(m), np.zeros((m, m))]])
        j_err = max(j_err, frobenius_norm(u @ j - j @ u))
    ok = rot_err <= 1e-12 and refl_min >= 1e-2 and j_err <= 1e-12
    report("5 appendix lemmas", ok, f"rotation {rot_err:.1e}, reflection min {refl_min:.2e}, symplectic {j_err:.1e}")
    assert ok


def _forward_wx(d, rng):
    m = len(d)
    r0 = symplectic_orthogonal(m, rng)
    a = r0 @ np.diag(np.concatenate([d, d])) @ r0.T
    a = 0.5 * (a + a.T)
    return WXMatrix(a[:m, :m], 0.5 * (a[m:, :m] - a[m:, :m].T))


def test_06_symplectic_lanczos(report):
    rng = np.random.default_rng(6)
    d_err = sym_err = 0.0
    for _ in range(20):
        m = int(rng.integers(2, 11))
        d = np.arange(m) - m / 2 + rng.uniform(0.2, 0.8, m)
        res = wx_eigen(_forward_wx(d, rng), rng=rng)
        d_err = max(d_err, np.abs(res.d - np.sort(d)[::-1]).max() / np.abs(d).max())
        mb = res.m_basis
        m_ = mb.shape[0] // 2
        j = np.block([[np.zeros((m_, m_)), -np.eye(m_)], [np.eye(m_), np.zeros((m_, m_))]])
        sym_err = max(sym_err, np.abs(mb.T @ j @ mb - j).max(), np.abs(mb.T @ mb - np.eye(2 * m_)).max())
    stress = _forward_wx(1.0 + 1e-3 * rng.standard_normal(50), rng)
    flagged = wx_eigen(stress, rng=rng).degraded
    ok = d_err <= 1e-8 and sym_err <= 1e-8 and flagged
    report("6 symplectic lanczos", ok, f"d {d_err:.1e}, symplectic {sym_err:.1e}, stress degraded={flagged}")
    assert ok


def _ratios(rows):
    by = {r["method"]: r for r in rows}
    ns = by["normal_schur"]
    return ns["ratio_to_hessenberg"], ns["median_seconds"] / by["general_schur"]["median_seconds"]


def test_07_performance_trend(report):
    t0 = time.perf_counter()
    out = {}
    for n, trials in ((334, 15), (1000, 5)):
        out[n] = _ratios(cmd_bench([n], "best_so", trials, seed=7, repeats=2))
    elapsed = time.perf_counter() - t0
    ok = all(h <= 1.25 and g <= 0.8 for h, g in out.values()) and elapsed < 600
    detail = ", ".join(f"n={n}: /hessenberg {h:.2f}, /gees {g:.2f}" for n, (h, g) in out.items())
    report("7 performance trend", ok, f"{detail} in {elapsed:.0f}s")
    assert ok


def test_08_worst_case_trend(report):
    h, _ = _ratios(cmd_bench([334], "worst_case_sigma", 9, seed=8, repeats=2))
    ok = 3.0 <= h <= 20.0
    report("8 worst_case_sigma trend", ok, f"ratio to hessenberg {h:.2f}")
    assert ok


def test_09_alpha_sweep_shape(report):
    rows = cmd_alpha_sweep(600, [0.0, 0.1, 0.5], 41, seed=9, repeats=3)
    r01 = rows[1]["ratio_to_alpha0"]
    r05 = rows[2]["ratio_to_alpha0"]
    ok = r01 <= 1.03 and r05 >= 1.15
    report("9 alpha sweep shape", ok, f"t(0.1)/t(0) = {r01:.3f}, t(0.5)/t(0) = {r05:.3f}")
    assert ok


def test_10_karcher_speedup(report):
    rows = cmd_karcher([100], [16], 100, seed=10)
    speedup = rows[0]["speedup"]
    diff = rows[0]["mean_difference"]
    ok = speedup >= 2.0 and diff <= 1e-8
    report("10 karcher speedup", ok, f"speedup {speedup:.2f}, mean difference {diff:.1e}")
    assert ok


def test_11_fundamental_formula(report):
    eps = 1e-8
    rows = cmd_fundamental_formula(eps=eps)
    expected = [eps**2 / 2, eps, np.sqrt(2 * eps)]
    got = [r["error"] for r in rows]
    factors = [g / e for g, e in zip(got, expected)]
    ok = all(0.25 <= f <= 4.0 for f in factors)
    report("11 fundamental formula", ok, f"errors [{_fmt(got)}] / expected = [{', '.join(f'{f:.2f}' for f in factors)}]")
    assert ok
