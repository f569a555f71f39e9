"""Seeded random matrices and maps used by tests and experiment scripts."""

import numpy as np

from .channels import KrausSet, from_kraus
from .superop import SuperOp, from_choi


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng) -> np.ndarray:
    rng = rng_from(rng)
    return (rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))) / np.sqrt(2)


def random_isometry(rows: int, cols: int, rng) -> np.ndarray:
    """Haar isometry C^cols -> C^rows (rows >= cols) via phase-fixed QR."""
    if rows < cols:
        raise ValueError(f"no isometry from C^{cols} into C^{rows}")
    q, r = np.linalg.qr(ginibre(rows, cols, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_unitary(n: int, rng) -> np.ndarray:
    return random_isometry(n, n, rng)


def random_kraus(n: int, m: int, k: int, rng) -> KrausSet:
    """Trace-preserving Kraus set from k Gaussian operators, right-normalised by S^(-1/2)."""
    if k * m < n:
        raise ValueError(f"{k} Kraus operators of shape {m}x{n} cannot be trace preserving")
    rng = rng_from(rng)
    ops = [ginibre(m, n, rng) for _ in range(k)]
    s = sum(a.conj().T @ a for a in ops)
    w, v = np.linalg.eigh(s)
    s_inv_half = (v / np.sqrt(w)) @ v.conj().T
    return KrausSet(n, m, tuple(a @ s_inv_half for a in ops))


def random_channel(n: int, m: int | None = None, k: int = 2, rng=None) -> SuperOp:
    m = n if m is None else m
    return from_kraus(random_kraus(n, m, k, rng))


def random_unital_kraus(n: int, k: int, rng) -> KrausSet:
    """Random mixture of k unitary channels, given as Kraus operators sqrt(p_i) U_i."""
    rng = rng_from(rng)
    p = rng.dirichlet(np.ones(k))
    return KrausSet(n, n, tuple(np.sqrt(pi) * random_unitary(n, rng) for pi in p))


def random_superop(n: int, m: int | None = None, rng=None) -> SuperOp:
    """Map with i.i.d. complex Gaussian A-form entries (not CP in general)."""
    m = n if m is None else m
    return SuperOp(n, m, ginibre(m * m, n * n, rng))


def random_hermitian_choi_map(n: int, m: int, eigenvalues, rng) -> SuperOp:
    """Map whose Choi matrix is V diag(eigenvalues) V^dag for a Haar V."""
    v = random_unitary(n * m, rng)
    lam = np.asarray(eigenvalues, dtype=float)
    return from_choi((v * lam) @ v.conj().T, n, m)
