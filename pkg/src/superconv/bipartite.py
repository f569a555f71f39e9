"""Bipartite operations B(H1A (x) H1B) -> B(H2A (x) H2B) and their witnesses.

The Choi matrix of a bipartite map carries four tensor factors in the
order (A1, B1, A2, B2), which is what ``to_choi`` produces for big-endian
input and output indices.  The coefficient tensor

    a[i, j, k, l, p, q, r, s] = coefficient of e_kr (x) e_ls in phi(e_ip (x) e_jq)

is that Choi matrix with row (i, j, k, l) and column (p, q, r, s).  The
cut A1A2 : B1B2 is therefore a partial transpose on factors {0, 2}.
"""

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import linalg
from .channels import KrausSet, from_kraus, unitary_channel
from .errors import NoRealEigenvalue, NonHermitianChoi, ShapeMismatch
from .sampling import random_isometry, rng_from
from .superop import (
    SuperOp,
    convolve,
    from_choi,
    identity_element,
    lagrange_projection,
    spectrum,
    to_choi,
    trace_conv,
)

NONSEPARABLE = "nonseparable_detected"
INCONCLUSIVE = "inconclusive"

# Nonzero coefficients a_{ijklpqrs} = 1 of the CNOT gate (control on A).
CNOT_TABLE = (
    "00000000", "00000101", "00001011", "00001110",
    "01010000", "01010101", "01011011", "01011110",
    "10110000", "10110101", "10111011", "10111110",
    "11100000", "11100101", "11101011", "11101110",
)


@dataclass(frozen=True)
class BipartiteShape:
    nA: int
    nB: int
    mA: int
    mB: int

    @property
    def n(self) -> int:
        return self.nA * self.nB

    @property
    def m(self) -> int:
        return self.mA * self.mB

    @property
    def factors(self) -> tuple[int, int, int, int]:
        return self.nA, self.nB, self.mA, self.mB


@dataclass(frozen=True, eq=False)
class BipartiteOp:
    shape: BipartiteShape
    op: SuperOp = field(repr=False)

    def __post_init__(self):
        if self.op.dims != (self.shape.n, self.shape.m):
            raise ShapeMismatch(f"map dims {self.op.dims} do not match {self.shape}")

    @property
    def choi(self) -> np.ndarray:
        return to_choi(self.op)

    def __call__(self, x) -> np.ndarray:
        return self.op(x)


@dataclass(frozen=True, eq=False)
class WitnessReport:
    chosen_eigenvalue: float
    witness: BipartiteOp
    detection_value: float
    verdict: str
    cluster: int = 0
    multiplicity: int = 1

    def summary(self) -> dict:
        return {
            "chosen_eigenvalue": self.chosen_eigenvalue,
            "multiplicity": self.multiplicity,
            "detection_value": self.detection_value,
            "verdict": self.verdict,
        }


def coefficients(bop: BipartiteOp) -> np.ndarray:
    """The eight-index coefficient tensor a[i, j, k, l, p, q, r, s]."""
    f = bop.shape.factors
    return bop.choi.reshape(f + f)


def from_coefficients(shape: BipartiteShape, a) -> BipartiteOp:
    a = np.asarray(a, dtype=np.complex128)
    f = shape.factors
    if a.shape != f + f:
        raise ShapeMismatch(f"coefficient tensor must have shape {f + f}, got {a.shape}")
    side = shape.n * shape.m
    return BipartiteOp(shape, from_choi(a.reshape(side, side), shape.n, shape.m))


def from_table(shape: BipartiteShape, entries: Iterable[str]) -> BipartiteOp:
    """Build a map from index strings 'ijklpqrs' whose coefficient is 1."""
    f = shape.factors
    a = np.zeros(f + f, dtype=np.complex128)
    for key in entries:
        idx = tuple(int(c) for c in key)
        if len(idx) != 8:
            raise ShapeMismatch(f"coefficient key {key!r} needs 8 digits")
        a[idx] = 1.0
    return from_coefficients(shape, a)


def cnot_matrix() -> np.ndarray:
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
    )


def cnot_channel() -> BipartiteOp:
    return from_table(BipartiteShape(2, 2, 2, 2), CNOT_TABLE)


def lift(op: SuperOp, shape: BipartiteShape) -> BipartiteOp:
    return BipartiteOp(shape, op)


def pt_A(bop: BipartiteOp) -> BipartiteOp:
    """Partial transpose of the Choi matrix on the A1A2 side of the A1A2 : B1B2 cut."""
    rho = linalg.partial_transpose(bop.choi, bop.shape.factors, {0, 2})
    return BipartiteOp(bop.shape, from_choi(rho, bop.shape.n, bop.shape.m))


def tensor_op(a: SuperOp, b: SuperOp) -> BipartiteOp:
    """Product map a (x) b acting on A and B independently."""
    shape = BipartiteShape(a.n, b.n, a.m, b.m)
    rho = np.kron(to_choi(a), to_choi(b))  # factors (A1, A2, B1, B2)
    rho = linalg.permute_factors(rho, (a.n, a.m, b.n, b.m), (0, 2, 1, 3))
    return BipartiteOp(shape, from_choi(rho, shape.n, shape.m))


def random_separable_channel(shape: BipartiteShape, k: int, seed=None) -> BipartiteOp:
    """Convex mixture of k product isometry channels.

    Kraus operators are sqrt(p_i) V_i^A (x) V_i^B with Dirichlet weights p
    and Haar isometries, so the result is exactly trace preserving and
    exactly separable.  Requires mA >= nA and mB >= nB.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = rng_from(seed)
    p = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    ops = []
    for pi in p:
        va = random_isometry(shape.mA, shape.nA, rng)
        vb = random_isometry(shape.mB, shape.nB, rng)
        ops.append(np.sqrt(pi) * np.kron(va, vb))
    return BipartiteOp(shape, from_kraus(KrausSet(shape.n, shape.m, tuple(ops))))


def product_unitary_channel(ua, ub) -> BipartiteOp:
    return tensor_op(unitary_channel(ua), unitary_channel(ub))


def _select_cluster(eigs, which) -> int:
    if which in (None, "most-negative"):
        return 0
    if isinstance(which, str) and which.startswith("index:"):
        which = int(which.split(":", 1)[1])
    if isinstance(which, (int, np.integer)):
        k = int(which)
        if not -len(eigs) <= k < len(eigs):
            raise IndexError(f"cluster index {k} out of range for {len(eigs)} clusters")
        return k % len(eigs)
    raise ValueError(f"unknown eigenvalue selector {which!r}")


def build_witness(bop: BipartiteOp, which="most-negative", report_tol: float | None = None) -> WitnessReport:
    """Nonseparability witness built from one spectral cluster of pt_A(bop).

    The witness is pt_A of the projection-like map of pt_A(bop) for the
    selected cluster; the detection value is Tr(W * phi).  Clusters are
    ordered by ascending eigenvalue, so the default selector picks the
    most negative one.
    """
    pt = pt_A(bop)
    rho_pt = pt.choi
    if not linalg.is_hermitian(rho_pt):
        raise NonHermitianChoi("partially transposed Choi matrix is not Hermitian")
    eigs = spectrum(pt.op)
    idx = _select_cluster(eigs, which)
    lam = eigs.representatives[idx]
    if abs(lam.imag) > eigs.cluster_tol:
        raise NoRealEigenvalue(f"cluster {idx} has eigenvalue {lam}")
    proj = lagrange_projection(pt.op, idx, eigs)
    witness = pt_A(BipartiteOp(bop.shape, proj))
    detection = trace_conv(convolve(witness.op, bop.op)).real
    if report_tol is None:
        report_tol = 1e-9 * max(1.0, abs(trace_conv(bop.op)))
    verdict = NONSEPARABLE if detection < -report_tol else INCONCLUSIVE
    return WitnessReport(
        float(lam.real), witness, float(detection), verdict, idx, eigs.multiplicities[idx]
    )


def detection_value(witness: BipartiteOp, bop: BipartiteOp) -> float:
    """Tr(W * phi) for a given witness."""
    return float(trace_conv(convolve(witness.op, bop.op)).real)


def convolution_identity(shape: BipartiteShape) -> BipartiteOp:
    """x -> tr(x) I on the bipartite spaces (Choi matrix I)."""
    return BipartiteOp(shape, identity_element(shape.n, shape.m))
