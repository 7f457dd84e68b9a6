"""Write CSV point sets for boundary and image-domain figures.

    python3 scripts/figure_data.py --out figures/ --lambdas 0.3 0.6 1.0
"""

import argparse
from pathlib import Path

from spirallog.cli import boundary_rows, map_values
from spirallog.series import EvaluationGrid
from spirallog.spiral import write_points_csv

MAPS = ("G_F", "log_G_F_over_z", "q_lambda_zn")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--lambdas", type=float, nargs="+", default=[0.3, 0.6, 1.0])
    ap.add_argument("--count", type=int, default=2001)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    grid = EvaluationGrid()
    for lam in args.lambdas:
        tag = f"{lam:g}".replace(".", "p")
        path = write_points_csv(args.out / f"boundary_{tag}.csv", boundary_rows(lam, args.count, None, with_image=False))
        print(path)
        for name in MAPS:
            path = write_points_csv(args.out / f"map_{name}_{tag}.csv", map_values(name, lam, grid))
            print(path)


if __name__ == "__main__":
    main()
