"""Seeded random generators for specs, used by the check suites and tests."""

from __future__ import annotations

import math

import numpy as np

from .engine import EngineSpec
from .qmath import KrausChannel, UnitaryOperator, dagger, hermitian_eigensystem
from .qubit import QubitParams

BETA_CHOICES = (0.0, 0.3, 0.6, 1.0, 5.0, math.inf)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + dagger(a)) / 2.0


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish unitary: QR of a complex Gaussian matrix, phases fixed."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    q, r = np.linalg.qr(z)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


def random_projective_channel(rng: np.random.Generator,
                              dim: int) -> KrausChannel:
    """Projective measurement onto a random orthonormal basis."""
    basis = haar_unitary(rng, dim)
    kraus = tuple(np.outer(basis[:, i], basis[:, i].conj())
                  for i in range(dim))
    return KrausChannel(kraus=kraus)


def random_spec(rng: np.random.Generator, dim: int,
                beta: float | None = None) -> EngineSpec:
    """Random cycle: Gaussian Hermitians, Haar strokes, projective channel."""
    if beta is None:
        beta = float(rng.uniform(0.0, 3.0))
    return EngineSpec(
        h1=hermitian_eigensystem(random_hermitian(rng, dim)),
        h2=hermitian_eigensystem(random_hermitian(rng, dim)),
        u=UnitaryOperator(haar_unitary(rng, dim)),
        v=UnitaryOperator(haar_unitary(rng, dim)),
        channel=random_projective_channel(rng, dim),
        beta=beta,
    )


def random_qubit_params(rng: np.random.Generator,
                        betas=BETA_CHOICES) -> QubitParams:
    return QubitParams(
        nu1=float(rng.uniform(0.5, 2.0)),
        nu2=float(rng.uniform(0.5, 3.0)),
        beta=float(rng.choice(betas)),
        delta=float(rng.uniform(0.0, 1.0)),
        phi=float(rng.uniform(0.0, 2.0 * math.pi)),
        alpha=float(rng.uniform(0.0, math.pi)),
        chi=float(rng.uniform(0.0, 2.0 * math.pi)),
    )
