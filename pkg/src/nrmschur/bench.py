"""Command-line experiments: timings, accuracy tables, alpha sweep, Karcher study.

Every subcommand writes one CSV table (header row, comma separated, floats
with 17 significant digits) to ``--out`` or standard output.  Timing
commands run single-threaded, discard one warmup run and report the median
over ``--trials`` inputs, with the compared methods interleaved per input.

Examples
--------
::

    nrmschur-bench bench --n 100 334 --scenario best_so --trials 5
    nrmschur-bench accuracy --n 10 33 100 --scenario worst_so --trials 100
    nrmschur-bench alpha-sweep --n 600 --alphas 0 0.1 0.5 1
    nrmschur-bench karcher --n 25 100 --samples 16
    nrmschur-bench ffdiag --eps 1e-8
    nrmschur-bench gen --n 8 --scenario worst_case_sigma --out a.txt
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from contextlib import nullcontext
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from .dense import (
    BlockSchur,
    frobenius_norm,
    orthogonality_defect,
    relative_residual,
    write_matrix,
)
from .errors import NrmSchurError
from .karcher import KarcherProblem, karcher_mean
from .kernels import get_provider
from .matfun import fundamental_formula_error
from .normal import GROUP2_PATHS, NormalSchurOptions, general_block_schur, normal_schur
from .sampling import SCENARIOS, SpectrumSpec, concentrated_rotations, random_normal_matrix

DEFAULT_ALPHAS = tuple(np.round(np.linspace(0.0, 1.0, 11), 10))
DEFAULT_THETAS = (0.0, np.pi / 4, np.pi / 2)


def trial_rng(seed: int, n: int, trial: int) -> np.random.Generator:
    """Independent, reproducible stream for one (size, trial) cell."""
    return np.random.default_rng([seed, n, trial])


def alpha_polynomial(alpha):
    """Leading flop coefficient ``8/3 a^3 + 5 a^2 - a + 14/3`` (times ``n^3``).

    >>> round(float(alpha_polynomial(0.0)), 12)
    4.666666666667
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    return 8.0 / 3.0 * alpha**3 + 5.0 * alpha**2 - alpha + 14.0 / 3.0


def alpha_polynomial_minimizer() -> float:
    """Interior critical point ``(sqrt(33) - 5) / 8`` of :func:`alpha_polynomial`."""
    return (np.sqrt(33.0) - 5.0) / 8.0


def single_thread():
    """Context manager limiting BLAS/LAPACK pools to one thread."""
    return threadpool_limits(limits=1)


def interleaved_times(calls, trials: int, *, repeats: int = 1, rng=None, warmup: bool = True) -> dict:
    """Wall times of several timed calls, interleaved round by round.

    Parameters
    ----------
    calls : dict
        ``name -> f`` where ``f(t)`` runs the work of round ``t``.
    trials : int
        Number of rounds; each round runs every call once, in random order.
    repeats : int
        Each call is repeated this many times per round and the fastest run
        is kept.
    warmup : bool
        Run every call once (round 0) before measuring.

    Returns
    -------
    dict
        ``name -> list`` of per-round times.
    """
    rng = np.random.default_rng(rng)
    names = list(calls)
    for name in names if warmup else ():
        calls[name](0)
    times = {name: [] for name in names}
    for t in range(trials):
        for i in rng.permutation(len(names)):
            name = names[i]
            best = np.inf
            for _ in range(repeats):
                t0 = time.perf_counter()
                calls[name](t)
                best = min(best, time.perf_counter() - t0)
            times[name].append(best)
    return times


def paired_ratio(times, base) -> float:
    """Median over rounds of ``times[k] / base[k]``."""
    return float(statistics.median(np.divide(times, base)))


# -- accuracy ----------------------------------------------------------------


def sym_diagonal(bs: BlockSchur) -> np.ndarray:
    """Diagonal of ``sym(S)`` (each pair's real part twice, then the real eigenvalues)."""
    lc = bs.lam * np.cos(bs.theta)
    return np.concatenate([lc, lc, bs.lam_real])


def sym_discrepancy(bs: BlockSchur, ref: BlockSchur) -> float:
    """``||sym(S_eps - S)||_F / ||sym(S_eps)||_F`` with both spectra matched by sorting.

    ``sym`` of the permuted Schur form is diagonal, so the comparison runs on
    the sorted diagonals of `bs` (``S_eps``) and `ref` (``S``).
    """
    x = np.sort(sym_diagonal(bs))
    y = np.sort(sym_diagonal(ref))
    if x.shape != y.shape:
        # differing pair/real split: compare the full real parts instead
        x = np.sort(bs.eigenvalues().real)
        y = np.sort(ref.eigenvalues().real)
    den = np.linalg.norm(x)
    num = np.linalg.norm(x - y)
    return float(num / den) if den > 0 else float(num)


def accuracy_metrics(a, bs: BlockSchur, ref: BlockSchur) -> tuple[float, float, float]:
    """Residual, orthogonality and sym-part discrepancy of one decomposition."""
    return (
        relative_residual(a, bs.q, bs.schur_matrix()),
        orthogonality_defect(bs.q),
        sym_discrepancy(bs, ref),
    )


def cmd_accuracy(sizes, scenario: str, trials: int, *, seed: int = 0, kernels=None, group2_path="default"):
    """Mean of the three accuracy metrics per size."""
    kp = get_provider(kernels)
    opts = NormalSchurOptions(group2_path=group2_path, seed=seed)
    rows = []
    for n in sizes:
        spec = SpectrumSpec.parse(scenario, n)
        acc = np.zeros(3)
        for t in range(trials):
            a, _ = random_normal_matrix(spec, trial_rng(seed, n, t))
            bs = normal_schur(a, kp, opts)
            acc += accuracy_metrics(a, bs, general_block_schur(a, kp))
        acc /= trials
        rows.append(
            {"n": n, "scenario": spec.label, "trials": trials,
             "residual": acc[0], "orthogonality": acc[1], "sym_discrepancy": acc[2]}
        )
    return rows


# -- timing ------------------------------------------------------------------


def bench_methods(kp, opts):
    """The timed callables: this library and the two LAPACK-style baselines."""
    return {
        "normal_schur": lambda a: normal_schur(a, kp, opts),
        "hessenberg": kp.hessenberg,
        "general_schur": kp.general_real_schur,
    }


def cmd_bench(
    sizes, scenario: str, trials: int, *, seed: int = 0, kernels=None, group2_path="default", repeats: int = 1
):
    """Median wall time of normal_schur against Hessenberg and general Schur.

    All three methods see the same `trials` inputs, interleaved round by
    round (see :func:`interleaved_times`).  ``ratio_to_hessenberg`` is the
    median of the per-round ratios.  The normality check is input
    validation, not part of the factorization, and is skipped in the timed
    call.  A method that raises is reported in the ``error`` column.
    """
    kp = get_provider(kernels)
    opts = NormalSchurOptions(group2_path=group2_path, skip_check=True, seed=seed)
    rows = []
    with single_thread():
        for n in sizes:
            spec = SpectrumSpec.parse(scenario, n)
            inputs = [random_normal_matrix(spec, trial_rng(seed, n, t))[0] for t in range(trials)]
            errors = {}
            calls = {}
            for name, fn in bench_methods(kp, opts).items():
                try:
                    fn(inputs[0])
                except (NrmSchurError, np.linalg.LinAlgError) as exc:
                    errors[name] = f"{type(exc).__name__}: {exc}"
                    continue
                calls[name] = lambda t, fn=fn: fn(inputs[t])
            times = interleaved_times(calls, trials, repeats=repeats, rng=seed)
            base = times.get("hessenberg")
            for name in bench_methods(kp, opts):
                row = {"n": n, "scenario": spec.label, "method": name, "trials": trials}
                if name in errors:
                    row.update(median_seconds="", mean_seconds="", std_seconds="", ratio_to_hessenberg="",
                               error=errors[name])
                else:
                    ts = times[name]
                    row.update(
                        median_seconds=statistics.median(ts),
                        mean_seconds=statistics.fmean(ts),
                        std_seconds=statistics.stdev(ts) if len(ts) > 1 else 0.0,
                        ratio_to_hessenberg=paired_ratio(ts, base) if base else "",
                        error="",
                    )
                rows.append(row)
    return rows


def cmd_alpha_sweep(n: int, alphas, trials: int, *, seed: int = 0, kernels=None, repeats: int = 3):
    """normal_schur time on alpha_mix matrices, with the scaled flop polynomial.

    Each round times one fresh matrix per alpha (see
    :func:`interleaved_times`).  Besides the per-alpha median,
    ``ratio_to_alpha0`` is the median of the per-round time ratios to the
    first alpha of the grid, which cancels slow drift of the machine speed.
    The polynomial is scaled to the measured median at that first alpha.
    """
    kp = get_provider(kernels)
    opts = NormalSchurOptions(skip_check=True)
    alphas = [float(x) for x in alphas]
    calls = {}
    for i, al in enumerate(alphas):
        mats = [random_normal_matrix(SpectrumSpec(n, "alpha_mix", al), trial_rng(seed, n, t))[0] for t in range(trials)]
        calls[i] = lambda t, mats=mats: normal_schur(mats[t], kp, opts)
    with single_thread():
        times = interleaved_times(calls, trials, repeats=repeats, rng=seed)
    p0 = float(alpha_polynomial(alphas[0]))
    base = statistics.median(times[0])
    rows = []
    for i, al in enumerate(alphas):
        poly = float(alpha_polynomial(al))
        rows.append({
            "n": n, "alpha": al, "median_seconds": statistics.median(times[i]),
            "ratio_to_alpha0": paired_ratio(times[i], times[0]),
            "polynomial": poly, "scaled_polynomial": poly * base / p0,
        })
    return rows


def cmd_karcher(n_list, count_list, iters: int = 100, *, seed: int = 0, kernels=None, max_angle=0.5,
                rounds: int = 3):
    """Time ``iters`` gradient steps with both Schur backends.

    Samples are concentrated around a random base point, and the gradient
    tolerance is zero so that exactly ``iters`` steps run.  Both backends
    run `rounds` times, interleaved; ``seconds`` is the median per backend
    and ``speedup`` the median of the per-round time ratios.
    """
    kp = get_provider(kernels)
    backends = ("normal_schur", "general_schur")
    rows = []
    with single_thread():
        for n in n_list:
            for count in count_list:
                samples = concentrated_rotations(n, count, max_angle, rng=trial_rng(seed, n, count))
                problem = KarcherProblem(tuple(samples), max_iters=iters, tol_grad=0.0)
                # warmup (compilation, caches) on a two-step problem
                short = KarcherProblem(problem.samples, max_iters=2, tol_grad=0.0)
                results = {}
                calls = {}
                for method in backends:
                    karcher_mean(short, kp, method=method)

                    def call(t, method=method):
                        results[method] = karcher_mean(problem, kp, method=method)

                    calls[method] = call
                times = interleaved_times(calls, rounds, rng=seed, warmup=False)
                diff = frobenius_norm(results["normal_schur"].x_c - results["general_schur"].x_c)
                speedup = paired_ratio(times["general_schur"], times["normal_schur"])
                for method in backends:
                    rows.append({
                        "n": n, "N": count, "backend": method, "iterations": iters,
                        "seconds": statistics.median(times[method]), "speedup": speedup,
                        "final_gradient": float(results[method].history[-1]), "mean_difference": diff,
                    })
    return rows


def cmd_fundamental_formula(thetas=DEFAULT_THETAS, eps: float = 1e-8):
    """Error of the cosine recovered from a perturbed sine at each angle."""
    err = fundamental_formula_error(np.asarray(thetas, dtype=np.float64), eps)
    return [{"theta": float(t), "eps": eps, "error": float(e)} for t, e in zip(thetas, err)]


def cmd_gen(n: int, scenario: str, out, *, seed: int = 0):
    """Write one sampled matrix and its ground-truth sidecar ``<out>.truth.json``."""
    spec = SpectrumSpec.parse(scenario, n)
    a, truth = random_normal_matrix(spec, trial_rng(seed, n, 0))
    out = Path(out)
    write_matrix(out, a)
    sidecar = out.with_name(out.name + ".truth.json")
    sidecar.write_text(json.dumps({
        "n": n, "scenario": spec.label, "seed": seed,
        "lam": truth.lam.tolist(), "theta": truth.theta.tolist(), "lam_real": truth.lam_real.tolist(),
        "q": truth.q.tolist(),
    }))
    return [{"n": n, "scenario": spec.label, "seed": seed, "matrix": str(out), "truth": str(sidecar)}]


def read_truth(path) -> BlockSchur:
    """Load a sidecar written by ``gen``."""
    d = json.loads(Path(path).read_text())
    return BlockSchur(np.array(d["q"]), np.array(d["lam"]), np.array(d["theta"]), np.array(d["lam_real"]))


# -- CSV / argument parsing ----------------------------------------------------


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return v


def write_csv(rows, stream) -> None:
    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})


def _scenario(text):
    try:
        SpectrumSpec.parse(text, 2)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--kernels", choices=("native", "reference"), default=None,
                        help="kernel provider (default: $NRMSCHUR_KERNELS or native)")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--n", type=int, nargs="+", default=[100])
    sized.add_argument("--scenario", type=_scenario, default="best_so",
                       help=f"one of {', '.join(SCENARIOS[:-2])}, alpha_mix(a), worst_case_sigma")
    sized.add_argument("--trials", type=int, default=5)
    sized.add_argument("--group2-path", choices=GROUP2_PATHS, default="default")
    sized.add_argument("--repeats", type=int, default=1, help="timed runs per input (fastest kept; bench only)")

    parser = argparse.ArgumentParser(prog="nrmschur-bench", description="Real Schur decomposition experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bench", parents=[common, sized], help="timing against Hessenberg and general Schur")
    sub.add_parser("accuracy", parents=[common, sized], help="residual, orthogonality, sym-part table")
    p = sub.add_parser("alpha-sweep", parents=[common], help="timing against the share of real eigenvalues")
    p.add_argument("--n", type=int, default=600)
    p.add_argument("--alphas", type=float, nargs="+", default=list(DEFAULT_ALPHAS))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--repeats", type=int, default=3, help="timed runs per input (fastest kept)")
    p = sub.add_parser("karcher", parents=[common], help="Karcher mean timing with both backends")
    p.add_argument("--n", type=int, nargs="+", default=[25, 100])
    p.add_argument("--samples", type=int, nargs="+", default=[16], help="sample counts N")
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--rounds", type=int, default=3, help="interleaved timing rounds per backend")
    p = sub.add_parser("ffdiag", parents=[common], help="cosine-from-sine error diagnostic")
    p.add_argument("--thetas", type=float, nargs="+", default=list(DEFAULT_THETAS))
    p.add_argument("--eps", type=float, default=1e-8)
    p = sub.add_parser("gen", parents=[common], help="write a sampled matrix and its ground truth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scenario", type=_scenario, default="best_so")
    return parser


def run(args) -> list[dict]:
    c = args.command
    if c == "bench":
        return cmd_bench(args.n, args.scenario, args.trials, seed=args.seed,
                         kernels=args.kernels, group2_path=args.group2_path, repeats=args.repeats)
    if c == "accuracy":
        return cmd_accuracy(args.n, args.scenario, args.trials, seed=args.seed,
                            kernels=args.kernels, group2_path=args.group2_path)
    if c == "alpha-sweep":
        return cmd_alpha_sweep(args.n, args.alphas, args.trials, seed=args.seed, kernels=args.kernels,
                               repeats=args.repeats)
    if c == "karcher":
        return cmd_karcher(args.n, args.samples, args.iters, seed=args.seed, kernels=args.kernels,
                           rounds=args.rounds)
    if c == "ffdiag":
        return cmd_fundamental_formula(args.thetas, args.eps)
    if args.out is None:
        raise ValueError("gen needs --out")
    return cmd_gen(args.n, args.scenario, args.out, seed=args.seed)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rows = run(args)
        if args.command == "gen":
            write_csv(rows, sys.stdout)
            return 0
        with open(args.out, "w", newline="") if args.out else nullcontext(sys.stdout) as fh:
            write_csv(rows, fh)
    except (NrmSchurError, ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"nrmschur-bench: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
