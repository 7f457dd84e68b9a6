"""Seeded sweep of the log-coefficient conjecture over a lambda grid.

Prints, for each lambda, the worst margin of gamma_n <= lambda/(2n(n+1))
over random members of G and the ratio |gamma_n| / bound reached by the best
sampled member at each n.

    python3 scripts/conjecture_sweep.py --seeds 200 --nmax 8
"""

import argparse

import numpy as np

from spirallog.bounds import gamma_conjecture_G
from spirallog.membership import member_G, random_schwarz
from spirallog.zoo import log_coefficients


def sweep(lam: float, seeds: int, nmax: int, order: int = 64):
    worst = np.inf
    best_ratio = np.zeros(nmax)
    n = np.arange(1, nmax + 1)
    bound = lam / (2 * n * (n + 1))
    for s in range(seeds):
        f = member_G(lam, random_schwarz(s, order), order)
        worst = min(worst, gamma_conjecture_G(f, lam, nmax=nmax).worst_margin)
        g = log_coefficients(f, nmax).abs
        best_ratio = np.maximum(best_ratio, g / bound)
    return worst, best_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--lambdas", type=float, nargs="+", default=[0.1, 0.25, 0.5, 0.75, 1.0])
    args = ap.parse_args()

    header = "lambda  worst_margin  " + "  ".join(f"n={k:<4d}" for k in range(1, args.nmax + 1))
    print(header)
    for lam in args.lambdas:
        worst, ratio = sweep(lam, args.seeds, args.nmax)
        print(f"{lam:6.3f}  {worst:12.3e}  " + "  ".join(f"{r:6.3f}" for r in ratio))


if __name__ == "__main__":
    main()
