"""Completely positive maps in operator-sum form.

The A-form of x -> K x K^dag under row-major vectorisation is
``kron(K, K.conj())``, so a Kraus set lifts to a SuperOp by summing those.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NotCP, NotSquare, NotUnitary, ShapeMismatch
from .superop import SuperOp, convolve, to_choi

UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrausSet:
    n: int
    m: int
    ops: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.ops) == 0:
            raise ShapeMismatch("a Kraus set needs at least one operator")
        ops = []
        for k, op in enumerate(self.ops):
            op = linalg.as_cmat(op).copy()
            if op.shape != (self.m, self.n):
                raise ShapeMismatch(f"Kraus operator {k} has shape {op.shape}, expected {(self.m, self.n)}")
            op.setflags(write=False)
            ops.append(op)
        object.__setattr__(self, "ops", tuple(ops))

    @classmethod
    def from_ops(cls, ops: Sequence) -> "KrausSet":
        ops = [linalg.as_cmat(op) for op in ops]
        if not ops:
            raise ShapeMismatch("a Kraus set needs at least one operator")
        m, n = ops[0].shape
        return cls(n, m, tuple(ops))

    def __len__(self):
        return len(self.ops)

    def stacked(self) -> np.ndarray:
        return np.stack(self.ops)

    def is_trace_preserving(self, tol: float = 1e-9) -> bool:
        s = sum(k.conj().T @ k for k in self.ops)
        return float(np.max(np.abs(s - np.eye(self.n)))) <= tol


@dataclass(frozen=True)
class ChannelReport:
    is_cp: bool
    is_tp: bool
    is_unital: bool
    is_unitary: bool
    min_choi_eigenvalue: float
    kraus_rank: int

    def to_dict(self) -> dict:
        return {
            "is_cp": self.is_cp,
            "is_tp": self.is_tp,
            "is_unital": self.is_unital,
            "is_unitary": self.is_unitary,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
            "kraus_rank": self.kraus_rank,
        }


def from_kraus(ks: KrausSet) -> SuperOp:
    a = sum(np.kron(k, k.conj()) for k in ks.ops)
    return SuperOp(ks.n, ks.m, a)


def default_rank_tol(rho: np.ndarray) -> float:
    return 1e-9 * max(1.0, abs(complex(np.trace(rho))))


def minimal_kraus(phi: SuperOp, rank_tol: float | None = None) -> KrausSet:
    """Kraus set of minimal length, orthogonal in the Hilbert-Schmidt sense.

    Built from the Choi eigenpairs above ``rank_tol``:
    K = sqrt(lam) * unvec(v) with unvec(v)[p, i] = v[i*m + p].
    """
    rho = to_choi(phi)
    if rank_tol is None:
        rank_tol = default_rank_tol(rho)
    if not linalg.is_hermitian(rho):
        raise NotCP("Choi matrix is not Hermitian")
    w, v = linalg.eig_hermitian(rho)
    if w[0] < -rank_tol:
        raise NotCP(f"Choi matrix has eigenvalue {w[0]:.3e} < -{rank_tol:.3e}")
    ops = [
        np.sqrt(lam) * v[:, k].reshape(phi.n, phi.m).T
        for k, lam in enumerate(w)
        if lam > rank_tol
    ]
    if not ops:
        # the zero map: keep the set nonempty
        ops = [np.zeros((phi.m, phi.n), dtype=np.complex128)]
    # largest weight first
    return KrausSet(phi.n, phi.m, tuple(ops[::-1]))


def _choi_hermitian_part_eigs(rho: np.ndarray) -> np.ndarray:
    return linalg.eig_hermitian(0.5 * (rho + rho.conj().T))[0]


def channel_checks(phi: SuperOp, tol: float = 1e-9) -> ChannelReport:
    """Classify phi.

    ``min_choi_eigenvalue`` is the smallest eigenvalue of the Hermitian part
    of the Choi matrix (the plain smallest eigenvalue when the Choi matrix
    is Hermitian); complete positivity also requires the Choi matrix to be
    Hermitian.  ``kraus_rank`` counts Hermitian-part eigenvalues above the
    default rank tolerance.
    """
    rho = to_choi(phi)
    w = _choi_hermitian_part_eigs(rho)
    hermitian = linalg.is_hermitian(rho, max(tol, linalg.hermitian_tol(rho)))
    is_cp = hermitian and w[0] >= -tol
    dims = (phi.n, phi.m)
    is_tp = float(np.max(np.abs(linalg.partial_trace(rho, dims, {0}) - np.eye(phi.n)))) <= tol
    is_unital = float(np.max(np.abs(linalg.partial_trace(rho, dims, {1}) - np.eye(phi.m)))) <= tol
    is_unitary = False
    if is_cp and is_tp:
        is_unitary = unitary_distance(phi) <= tol * phi.n
    rank = int(np.sum(w > default_rank_tol(rho)))
    return ChannelReport(bool(is_cp), bool(is_tp), bool(is_unital), bool(is_unitary), float(w[0]), rank)


def unitary_channel(u) -> SuperOp:
    u = linalg.as_cmat(u)
    if u.shape[0] != u.shape[1]:
        raise NotSquare(f"unitary must be square, got {u.shape}")
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if err > UNITARY_TOL:
        raise NotUnitary(f"max |U^dag U - I| = {err:.3e}")
    return from_kraus(KrausSet.from_ops([u]))


def transposition_map(n: int) -> SuperOp:
    a = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            a[j * n + i, i * n + j] = 1.0
    return SuperOp(n, n, a)


def schur_map(a) -> SuperOp:
    """Entrywise multiplier x -> a o x."""
    a = linalg.as_cmat(a)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"Schur multiplier must be square, got {a.shape}")
    n = a.shape[0]
    return SuperOp(n, n, np.diag(a.reshape(-1)))


def complementary_channel(ks: KrausSet) -> SuperOp:
    """x -> sum_pq tr(M_q^dag M_p x) e_pq, with output dimension len(ks)."""
    mk = ks.stacked()  # [p, a, i]
    d = len(ks)
    # coefficient of e_pq in the image of e_ik is (M_q^dag M_p)[k, i]
    a = np.einsum("qak,pai->pqik", mk.conj(), mk)
    return SuperOp(ks.n, d, a.reshape(d * d, ks.n * ks.n))


def convolve_kraus(ks1: KrausSet, ks2: KrausSet) -> SuperOp:
    """Convolution of two CP maps straight from their Kraus sets.

    x -> sum_pq tr(M_p^dag N_q) M_p x N_q^dag.
    """
    if (ks1.n, ks1.m) != (ks2.n, ks2.m):
        raise ShapeMismatch(f"Kraus sets act {ks1.n}->{ks1.m} and {ks2.n}->{ks2.m}")
    a = np.zeros((ks1.m ** 2, ks1.n ** 2), dtype=np.complex128)
    for mp in ks1.ops:
        for nq in ks2.ops:
            c = np.vdot(mp, nq)  # tr(M^dag N)
            a += c * np.kron(mp, nq.conj())
    return SuperOp(ks1.n, ks1.m, a)


def unitary_distance(phi: SuperOp) -> float:
    """l2 distance between phi * phi and n phi; zero exactly for unitary channels."""
    return convolve(phi, phi).distance(phi.n * phi)


def is_unital(phi: SuperOp, tol: float = 1e-9) -> bool:
    return float(np.max(np.abs(phi(np.eye(phi.n)) - np.eye(phi.m)))) <= tol

