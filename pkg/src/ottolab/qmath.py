"""Dense complex linear algebra for small operators.

Everything here works on plain ``numpy`` complex matrices of modest size
(d <= ~16): Hermitian eigendecomposition, unitarity and Kraus-channel
validation, and channel application.  The eigensolver is self-contained
(closed form for d <= 2, cyclic Jacobi above) so that results are
deterministic across platforms and BLAS builds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10
CHANNEL_TOL = 1e-10
PROJECTOR_TOL = 1e-10
# eigenvalues closer than this (times max(1, scale)) form a degenerate cluster
CLUSTER_TOL = 1e-9

_MAX_JACOBI_SWEEPS = 60


class DimMismatch(ValueError):
    """Operands act on spaces of different dimension."""


class NotHermitian(ValueError):
    """Matrix fails the Hermitian symmetry check."""


class DecompositionFailure(RuntimeError):
    """Eigensolver did not converge."""


def as_matrix(entries) -> np.ndarray:
    """Coerce to a square complex128 matrix with finite entries."""
    m = np.array(entries, dtype=np.complex128, order="C")
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def is_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    d = m.shape[0]
    return bool(np.max(np.abs(dagger(m) @ m - np.eye(d))) <= tol)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian matrix bundled with its (ascending) real eigensystem."""

    matrix: np.ndarray
    eigenvalues: np.ndarray   # shape (d,), ascending
    eigenvectors: np.ndarray  # columns are orthonormal eigenvectors

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class UnitaryOperator:
    matrix: np.ndarray
    tol: float = field(default=UNITARITY_TOL, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if not is_unitary(m, self.tol):
            raise ValueError("matrix is not unitary within tolerance")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class KrausChannel:
    """Unital CPTP map given as a list of Kraus operators.

    Validates trace preservation (sum K†K = 1) and unitality (sum KK† = 1);
    both are required of every channel in this package.
    """

    kraus: tuple
    tol: float = field(default=CHANNEL_TOL, repr=False)

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(k.shape[0] != d for k in ops):
            raise DimMismatch("Kraus operators differ in dimension")
        eye = np.eye(d)
        tp = sum(dagger(k) @ k for k in ops)
        un = sum(k @ dagger(k) for k in ops)
        if np.max(np.abs(tp - eye)) > self.tol:
            raise ValueError("channel is not trace-preserving within tolerance")
        if np.max(np.abs(un - eye)) > self.tol:
            raise ValueError("channel is not unital within tolerance")
        object.__setattr__(self, "kraus", tuple(_frozen(k) for k in ops))

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel(kraus=(np.eye(dim, dtype=np.complex128),))


def apply_channel(phi: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Apply the channel: rho -> sum_j K_j rho K_j†."""
    if rho.shape != (phi.dim, phi.dim):
        raise DimMismatch(f"state has shape {rho.shape}, channel dim {phi.dim}")
    out = np.zeros_like(rho, dtype=np.complex128)
    for k in phi.kraus:
        out += k @ rho @ dagger(k)
    return out


def validate_projective_pair(p1: np.ndarray, p2: np.ndarray,
                             tol: float = PROJECTOR_TOL) -> bool:
    """True iff p1, p2 form a complete pair of orthogonal projectors."""
    if p1.shape != p2.shape:
        raise DimMismatch("projectors differ in shape")
    eye = np.eye(p1.shape[0])
    checks = (p1 + p2 - eye, p1 @ p1 - p1, p2 @ p2 - p2, p1 @ p2)
    return all(np.max(np.abs(c)) <= tol for c in checks)


# ---------------------------------------------------------------------------
# eigendecomposition


def _eig2(m: np.ndarray):
    """Closed-form eigensystem of a 2x2 Hermitian matrix, ascending."""
    a = m[0, 0].real
    c = m[1, 1].real
    b = m[0, 1]
    if abs(b) == 0.0:
        vals = np.array([a, c])
        vecs = np.eye(2, dtype=np.complex128)
        if a > c:
            vals = vals[::-1]
            vecs = vecs[:, ::-1]
        return vals, vecs
    half = 0.5 * (a - c)
    disc = math.hypot(half, abs(b))
    mid = 0.5 * (a + c)
    vals = np.array([mid - disc, mid + disc])
    vecs = np.empty((2, 2), dtype=np.complex128)
    for i in (0, 1):
        v = np.array([b, vals[i] - a])
        vecs[:, i] = v / np.linalg.norm(v)
    return vals, vecs


def _jacobi(m: np.ndarray, tol: float):
    """Cyclic Jacobi on a Hermitian matrix; returns (diag values, basis)."""
    a = m.astype(np.complex128).copy()
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(a))))
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off = max(off, abs(a[p, q]))
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(d - 1):
            for q in range(p + 1, d):
                z = a[p, q]
                if abs(z) <= 1e-300:
                    continue
                phase = z / abs(z)
                app = a[p, p].real
                aqq = a[q, q].real
                # zero a[p,q]: t solves |z| t^2 + (app-aqq) t - |z| = 0
                tau = 0.5 * (aqq - app) / abs(z)
                sgn = 1.0 if tau >= 0 else -1.0
                t = -1.0 / (tau + sgn * math.sqrt(1.0 + tau * tau))
                cth = 1.0 / math.sqrt(1.0 + t * t)
                s = phase.conjugate() * t * cth
                g = np.eye(d, dtype=np.complex128)
                g[p, p] = cth
                g[q, q] = cth
                g[q, p] = s
                g[p, q] = -s.conjugate()
                a = dagger(g) @ a @ g
                v = v @ g
    raise DecompositionFailure("Jacobi iteration did not converge")


def _cluster_orthonormalize(vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Gram-Schmidt within degenerate clusters, in index order."""
    out = vecs.copy()
    d = len(vals)
    i = 0
    while i < d:
        j = i + 1
        while j < d:
            gap_tol = CLUSTER_TOL * max(1.0, abs(vals[j]), abs(vals[j - 1]))
            if vals[j] - vals[j - 1] > gap_tol:
                break
            j += 1
        for k in range(i, j):
            v = out[:, k]
            for prev in range(i, k):
                v = v - (out[:, prev].conj() @ v) * out[:, prev]
            out[:, k] = v / np.linalg.norm(v)
        i = j
    return out


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of each column real positive."""
    out = vecs.copy()
    for k in range(out.shape[1]):
        idx = int(np.argmax(np.abs(out[:, k])))
        piv = out[idx, k]
        if abs(piv) > 0:
            out[:, k] *= piv.conjugate() / abs(piv)
    return out


def hermitian_eigensystem(m, tol: float = HERMITICITY_TOL) -> HermitianOperator:
    """Eigendecompose a Hermitian matrix.

    Eigenvalues come out ascending; eigenvector columns are orthonormal with
    a deterministic phase (largest component real positive).  Degenerate
    clusters are re-orthonormalized by Gram-Schmidt in index order, so the
    spectral projectors are reproducible run to run.
    """
    mat = as_matrix(m)
    if not is_hermitian(mat, tol):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    d = mat.shape[0]
    if d == 1:
        vals = np.array([mat[0, 0].real])
        vecs = np.ones((1, 1), dtype=np.complex128)
    elif d == 2:
        vals, vecs = _eig2(mat)
    else:
        vals, vecs = _jacobi(mat, tol=1e-14)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    vecs = _fix_phases(_cluster_orthonormalize(vals, vecs))
    return HermitianOperator(matrix=_frozen(mat),
                             eigenvalues=_frozen(vals),
                             eigenvectors=_frozen(vecs))
