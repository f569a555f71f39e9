"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` complex arrays.  Composite indices over
tensor factors are big-endian: for dims ``(d0, d1, ...)`` the tuple
``(i0, i1, ...)`` maps to ``i0*d1*... + i1*... + ...``, which is exactly
numpy's C-order reshape.  The eigensolvers delegate to LAPACK through
``numpy.linalg``.
"""

from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import NoConvergence, NotHermitian, NotSquare, ShapeMismatch

HERMITIAN_RTOL = 1e-10


def as_cmat(a) -> np.ndarray:
    """Coerce ``a`` to a 2-D complex128 array, rejecting NaN/Inf."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _require_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")


def hermitian_tol(a: np.ndarray) -> float:
    return HERMITIAN_RTOL * max(1.0, float(np.max(np.abs(a), initial=0.0)))


def is_hermitian(a: np.ndarray, tol: float | None = None) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    if tol is None:
        tol = hermitian_tol(a)
    return float(np.max(np.abs(a - a.conj().T), initial=0.0)) <= tol


def kron(a, b) -> np.ndarray:
    return np.kron(as_cmat(a), as_cmat(b))


def eig_hermitian(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and a matrix whose columns are the
    corresponding orthonormal eigenvectors.
    """
    a = as_cmat(a)
    _require_square(a)
    tol = hermitian_tol(a)
    skew = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    if skew > tol:
        raise NotHermitian(f"max |A - A^H| = {skew:.3e} exceeds {tol:.3e}")
    # symmetrize so LAPACK sees exactly Hermitian input
    h = 0.5 * (a + a.conj().T)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, v


def eig_general(a) -> np.ndarray:
    """Eigenvalues (unordered, complex) of a general square matrix."""
    a = as_cmat(a)
    _require_square(a)
    try:
        w = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return w.astype(np.complex128)


def _check_factors(a: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ShapeMismatch(f"invalid factor dims {dims}")
    side = prod(dims)
    if a.ndim != 2 or a.shape != (side, side):
        raise ShapeMismatch(f"factor dims {dims} need a {side}x{side} matrix, got {a.shape}")
    return dims


def _check_indices(idx: Iterable[int], k: int, what: str) -> set[int]:
    idx = {int(i) for i in idx}
    bad = [i for i in idx if not 0 <= i < k]
    if bad:
        raise ShapeMismatch(f"{what} indices {sorted(bad)} out of range for {k} factors")
    return idx


def partial_trace(a, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every factor not listed in ``keep``."""
    a = as_cmat(a)
    dims = _check_factors(a, dims)
    keep = _check_indices(keep, len(dims), "keep")
    t = a.reshape(dims + dims)
    for ax in reversed(range(len(dims))):
        if ax not in keep:
            t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    side = prod(dims[i] for i in keep)
    return t.reshape(side, side)


def partial_transpose(a, dims: Sequence[int], flip: Iterable[int]) -> np.ndarray:
    """Transpose the row/column indices of the factors in ``flip``."""
    a = as_cmat(a)
    dims = _check_factors(a, dims)
    flip = _check_indices(flip, len(dims), "flip")
    k = len(dims)
    perm = list(range(2 * k))
    for i in flip:
        perm[i], perm[i + k] = i + k, i
    return a.reshape(dims + dims).transpose(perm).reshape(a.shape)


def permute_factors(a, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors; factor ``order[j]`` of the input becomes factor ``j``."""
    a = as_cmat(a)
    dims = _check_factors(a, dims)
    order = [int(i) for i in order]
    if sorted(order) != list(range(len(dims))):
        raise ShapeMismatch(f"{order} is not a permutation of {len(dims)} factors")
    k = len(dims)
    perm = order + [i + k for i in order]
    return a.reshape(dims + dims).transpose(perm).reshape(a.shape)


def matrix_unit(n: int, i: int, j: int, m: int | None = None) -> np.ndarray:
    """The matrix unit e_ij of shape n x m (m defaults to n)."""
    e = np.zeros((n, n if m is None else m), dtype=np.complex128)
    e[i, j] = 1.0
    return e
