"""Linear maps B(C^n) -> B(C^m) and their convolution algebra.

A map is stored by its A-form: the m^2 x n^2 matrix acting on row-major
vectorised operators, so that ``aform[p*m + q, i*n + k]`` is the
coefficient of e_pq in phi(e_ik).  The Choi (B-form) matrix is

    choi = sum_ij e_ij (x) phi(e_ij),   choi[i*m + p, j*m + q] = aform[p*m + q, i*n + j]

and is kept unnormalised (trace n for a trace-preserving map).

Two products live on the same space: ordinary composition, which is
matrix multiplication of A-forms, and the convolution

    (phi1 * phi2)(e_ij) = sum_k phi1(e_ik) phi2(e_kj),

which is matrix multiplication of Choi matrices.  The identity of the
convolution is the completely depolarising map x -> tr(x) I.
"""

import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import linalg
from .errors import (
    DegenerateDenominator,
    DimMismatch,
    NotDiagonalizable,
    ShapeMismatch,
    UnsupportedP,
)

Direction = Literal["a2b", "b2a"]

IDEMPOTENCE_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class SuperOp:
    """A linear map from n x n to m x m matrices, held as its A-form."""

    n: int
    m: int
    aform: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = linalg.as_cmat(self.aform).copy()
        if a.shape != (self.m * self.m, self.n * self.n):
            raise ShapeMismatch(
                f"A-form for n={self.n}, m={self.m} must be "
                f"{self.m ** 2}x{self.n ** 2}, got {a.shape}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "aform", a)

    @property
    def dims(self) -> tuple[int, int]:
        return self.n, self.m

    @property
    def choi(self) -> np.ndarray:
        return to_choi(self)

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def _same_dims(self, other: "SuperOp") -> None:
        if not isinstance(other, SuperOp) or other.dims != self.dims:
            raise ShapeMismatch(f"dims {getattr(other, 'dims', other)} != {self.dims}")

    def __add__(self, other: "SuperOp") -> "SuperOp":
        self._same_dims(other)
        return SuperOp(self.n, self.m, self.aform + other.aform)

    def __sub__(self, other: "SuperOp") -> "SuperOp":
        self._same_dims(other)
        return SuperOp(self.n, self.m, self.aform - other.aform)

    def __neg__(self) -> "SuperOp":
        return SuperOp(self.n, self.m, -self.aform)

    def __mul__(self, scalar) -> "SuperOp":
        if isinstance(scalar, SuperOp):
            # `*` between two maps is deliberately not overloaded: the
            # algebra has two products and the call site should name one.
            return NotImplemented
        return SuperOp(self.n, self.m, complex(scalar) * self.aform)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SuperOp":
        return SuperOp(self.n, self.m, self.aform / complex(scalar))

    def distance(self, other: "SuperOp") -> float:
        """l2 (Frobenius) distance between A-forms."""
        self._same_dims(other)
        return float(np.linalg.norm(self.aform - other.aform))


def tau(a, n: int, m: int, direction: Direction | None = None) -> np.ndarray:
    """Reshuffle between A-form (m^2 x n^2) and B-form (nm x nm).

    The direction is read off the shape; when n == m both shapes agree and
    ``direction`` must be given.
    """
    a = linalg.as_cmat(a)
    a_shape, b_shape = (m * m, n * n), (n * m, n * m)
    if direction is None:
        if a_shape == b_shape and a.shape == a_shape:
            raise ShapeMismatch("n == m: tau direction is ambiguous, pass direction=")
        if a.shape == a_shape:
            direction = "a2b"
        elif a.shape == b_shape:
            direction = "b2a"
        else:
            raise ShapeMismatch(f"shape {a.shape} is neither {a_shape} nor {b_shape}")
    if direction == "a2b":
        if a.shape != a_shape:
            raise ShapeMismatch(f"A-form must be {a_shape}, got {a.shape}")
        # [p, q, i, j] -> [i, p, j, q]
        return a.reshape(m, m, n, n).transpose(2, 0, 3, 1).reshape(b_shape)
    if direction == "b2a":
        if a.shape != b_shape:
            raise ShapeMismatch(f"B-form must be {b_shape}, got {a.shape}")
        # [i, p, j, q] -> [p, q, i, j]
        return a.reshape(n, m, n, m).transpose(1, 3, 0, 2).reshape(a_shape)
    raise ValueError(f"unknown direction {direction!r}")


def to_choi(phi: SuperOp) -> np.ndarray:
    return tau(phi.aform, phi.n, phi.m, "a2b")


def from_choi(rho, n: int, m: int) -> SuperOp:
    rho = linalg.as_cmat(rho)
    if rho.shape != (n * m, n * m):
        raise ShapeMismatch(f"Choi matrix for n={n}, m={m} must be {n * m}x{n * m}, got {rho.shape}")
    return SuperOp(n, m, tau(rho, n, m, "b2a"))


def from_aform(aform, n: int, m: int) -> SuperOp:
    return SuperOp(n, m, aform)


def convolve(phi1: SuperOp, phi2: SuperOp) -> SuperOp:
    """Convolution product; corresponds to the matrix product of Choi matrices."""
    if phi1.dims != phi2.dims:
        raise ShapeMismatch(f"cannot convolve maps with dims {phi1.dims} and {phi2.dims}")
    return from_choi(to_choi(phi1) @ to_choi(phi2), phi1.n, phi1.m)


def compose(phi1: SuperOp, phi2: SuperOp) -> SuperOp:
    """Ordinary composition phi1 o phi2 (apply phi2 first)."""
    if phi2.m != phi1.n:
        raise ShapeMismatch(f"output dim {phi2.m} of the inner map != input dim {phi1.n}")
    return SuperOp(phi2.n, phi1.m, phi1.aform @ phi2.aform)


def apply(phi: SuperOp, x) -> np.ndarray:
    x = linalg.as_cmat(x)
    if x.shape != (phi.n, phi.n):
        raise ShapeMismatch(f"map takes {phi.n}x{phi.n} input, got {x.shape}")
    return (phi.aform @ x.reshape(-1)).reshape(phi.m, phi.m)


def identity_element(n: int, m: int | None = None) -> SuperOp:
    """Completely depolarising map x -> tr(x) I_m; its Choi matrix is I_nm."""
    m = n if m is None else m
    return from_choi(np.eye(n * m, dtype=np.complex128), n, m)


def identity_channel(n: int) -> SuperOp:
    return SuperOp(n, n, np.eye(n * n, dtype=np.complex128))


def norm_lp(phi: SuperOp, p: int = 2) -> float:
    """Entrywise l1 or l2 norm of the A-form.

    Only p in {1, 2} is supported: these are the entrywise norms that are
    sub-multiplicative, and both are invariant under the A/B reshuffle.
    """
    if p not in (1, 2):
        raise UnsupportedP(f"p must be 1 or 2, got {p!r}")
    a = np.abs(phi.aform)
    if p == 1:
        return float(a.sum())
    return float(np.sqrt((a * a).sum()))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues of a Choi matrix grouped into numerically equal clusters.

    Clusters are ordered by ascending real part of their representative
    (the cluster mean), then by imaginary part.
    """

    values: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    cluster_tol: float
    hermitian: bool = False

    @property
    def representatives(self) -> np.ndarray:
        return np.array([self.values[list(c)].mean() for c in self.clusters], dtype=np.complex128)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    def __len__(self):
        return len(self.clusters)


def default_cluster_tol(values) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(values), initial=0.0)))


def cluster_values(values, tol: float) -> tuple[tuple[int, ...], ...]:
    """Greedy complete-linkage clustering of eigenvalues.

    Values are visited in (real, imag) order; a value joins the first
    cluster all of whose members lie within ``tol`` of it.
    """
    values = np.asarray(values, dtype=np.complex128)
    order = np.lexsort((values.imag, values.real))
    clusters: list[list[int]] = []
    for idx in order:
        v = values[idx]
        for c in clusters:
            if np.all(np.abs(values[c] - v) <= tol):
                c.append(int(idx))
                break
        else:
            clusters.append([int(idx)])
    reps = [values[c].mean() for c in clusters]
    ranked = sorted(range(len(clusters)), key=lambda k: (reps[k].real, reps[k].imag))
    return tuple(tuple(sorted(clusters[k])) for k in ranked)


def spectrum(phi: SuperOp, cluster_tol: float | None = None) -> Spectrum:
    """Spectrum of phi in the convolution algebra, i.e. the eigenvalues of its Choi matrix."""
    rho = to_choi(phi)
    hermitian = linalg.is_hermitian(rho)
    if hermitian:
        values = linalg.eig_hermitian(rho)[0].astype(np.complex128)
    else:
        values = linalg.eig_general(rho)
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(values)
    return Spectrum(values, cluster_values(values, cluster_tol), float(cluster_tol), hermitian)


def trace_conv(phi: SuperOp) -> complex:
    """Tr(phi): sum of the convolution spectrum, computed as the Choi trace."""
    return complex(np.trace(to_choi(phi)))


def trace_hs(phi: SuperOp) -> complex:
    """tr(phi) = sum_ij <e_ij, phi(e_ij)>, the trace of phi as an operator on B(H)."""
    if phi.n != phi.m:
        raise DimMismatch(f"trace_hs needs n == m, got n={phi.n}, m={phi.m}")
    return complex(np.trace(phi.aform))


def pt_input(phi: SuperOp) -> SuperOp:
    """Partial transpose of phi on its input factor, taken through the Choi matrix."""
    rho = linalg.partial_transpose(to_choi(phi), (phi.n, phi.m), {0})
    return from_choi(rho, phi.n, phi.m)


def lagrange_projection(
    phi: SuperOp,
    target: int,
    eigs: Spectrum | None = None,
    cluster_tol: float | None = None,
) -> SuperOp:
    """Projection-like map for one spectral cluster of phi.

    Evaluates  prod_{j != target} (phi - l_j e) / (l_target - l_j)  with the
    convolution product, where e is the convolution identity and l_j runs
    over the cluster representatives.  Its Choi matrix is the spectral
    projector of choi(phi) onto the target cluster.
    """
    if eigs is None:
        eigs = spectrum(phi, cluster_tol)
    reps = eigs.representatives
    if not 0 <= target < len(reps):
        raise IndexError(f"cluster index {target} out of range for {len(reps)} clusters")
    e = identity_element(phi.n, phi.m)
    lam = reps[target]
    out = e
    for j, mu in enumerate(reps):
        if j == target:
            continue
        gap = lam - mu
        if abs(gap) <= eigs.cluster_tol:
            raise DegenerateDenominator(f"clusters {target} and {j} coincide within {eigs.cluster_tol:g}")
        out = convolve(out, (phi - mu * e) / gap)
    # Lagrange sums are identities for any matrix; idempotence is what fails
    # for a nontrivial Jordan block, or when rounding in the product form has
    # been amplified by small spectral gaps.
    residual = convolve(out, out).distance(out) / max(1.0, norm_lp(out, 2))
    if residual > IDEMPOTENCE_RTOL:
        if not eigs.hermitian:
            raise NotDiagonalizable(
                f"cluster {target} projector is not idempotent (residual {residual:.2e})"
            )
        warnings.warn(
            f"projection for cluster {target} is inaccurate (idempotence residual "
            f"{residual:.2e}); the spectrum has {len(reps)} clusters with small gaps",
            RuntimeWarning,
            stacklevel=2,
        )
    return out


def projection_decomposition(phi: SuperOp, cluster_tol: float | None = None):
    """All (eigenvalue, projection-like map) pairs of phi."""
    eigs = spectrum(phi, cluster_tol)
    return [
        (complex(lam), lagrange_projection(phi, k, eigs))
        for k, lam in enumerate(eigs.representatives)
    ]
