"""How the convolution of two channels fails to be completely positive.

Choi(a * b) = Choi(a) Choi(b) is a product of two positive semidefinite
matrices.  Such a product is similar to A^(1/2) B A^(1/2), so its eigenvalues
are real and nonnegative; a search for a negative eigenvalue of the Choi
matrix itself can only turn up rounding noise.  What does fail is
Hermiticity, and with it positivity of the Hermitian part.  This script
reports both quantities over random channel pairs.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from superconv.channels import channel_checks, convolve_kraus, from_kraus
from superconv.linalg import eig_general
from superconv.sampling import random_kraus
from superconv.superop import convolve, to_choi


@dataclass
class Config:
    trials: int = 1000
    n: int = 2
    kraus: int = 2
    seed: int = 0


def main(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    min_eig = np.inf
    max_imag = 0.0
    min_herm = np.inf
    non_cp = 0
    max_formula_gap = 0.0
    for _ in range(cfg.trials):
        a = random_kraus(cfg.n, cfg.n, cfg.kraus, rng)
        b = random_kraus(cfg.n, cfg.n, cfg.kraus, rng)
        phi = convolve_kraus(a, b)
        max_formula_gap = max(max_formula_gap, phi.distance(convolve(from_kraus(a), from_kraus(b))))
        w = eig_general(to_choi(phi))
        min_eig = min(min_eig, float(w.real.min()))
        max_imag = max(max_imag, float(np.abs(w.imag).max()))
        report = channel_checks(phi)
        min_herm = min(min_herm, report.min_choi_eigenvalue)
        non_cp += not report.is_cp
    print(f"pairs                                : {cfg.trials}")
    print(f"Kraus formula vs A-form, max l2 gap  : {max_formula_gap:.2e}")
    print(f"min real part of Choi eigenvalues    : {min_eig:.3e}")
    print(f"max |imag| of Choi eigenvalues       : {max_imag:.3e}")
    print(f"min eigenvalue of the Hermitian part : {min_herm:.3e}")
    print(f"convolutions that are not CP         : {non_cp}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, val in vars(Config()).items():
        p.add_argument(f"--{name}", type=type(val), default=val)
    main(Config(**vars(p.parse_args())))
