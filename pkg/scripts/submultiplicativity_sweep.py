"""Ratio ||a * b||_p / (||a||_p ||b||_p) over random maps, per dimension.

The ratio never exceeds 1.  Random Gaussian maps sit well below it; unitary
channels reach exactly 1 for p = 2, since phi_U * phi_U = n phi_U.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from superconv.channels import unitary_channel
from superconv.sampling import random_superop, random_unitary
from superconv.superop import convolve, norm_lp


@dataclass
class Config:
    trials: int = 500
    dims: tuple[int, ...] = (2, 3, 4, 5)
    seed: int = 0


def ratio(a, b, p):
    return norm_lp(convolve(a, b), p) / (norm_lp(a, p) * norm_lp(b, p))


def main(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>3} {'p':>2} {'max ratio (gaussian)':>22} {'ratio (U, U)':>14}")
    for n in cfg.dims:
        for p in (1, 2):
            worst = max(
                ratio(random_superop(n, n, rng), random_superop(n, n, rng), p)
                for _ in range(cfg.trials)
            )
            u = unitary_channel(random_unitary(n, rng))
            print(f"{n:>3} {p:>2} {worst:>22.6f} {ratio(u, u, p):>14.6f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=Config.trials)
    parser.add_argument("--dims", type=int, nargs="+", default=list(Config.dims))
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    main(Config(args.trials, tuple(args.dims), args.seed))
