"""Stochastic-cycle enumeration and cumulants for finite-d unital Otto cycles.

A cycle is four strokes: unitary U (work), unital channel (heat in),
unitary V (work), reset to the thermal state of the first Hamiltonian
(heat out).  Two statistics are supported:

* ``Mode.DEPHASED`` -- the cycle is projectively monitored between strokes;
  outcomes follow the two-point-measurement joint probability, which is a
  true distribution over the d^4 stochastic cycles.
* ``Mode.UNDEPHASED`` -- unmonitored; outcomes are weighted by a
  Kirkwood-Dirac quasiprobability, which sums to one but may have negative
  or complex entries.

All cumulants are exact weighted sums over the d^4 table.  The
characteristic function is evaluated independently from its trace formula
and is used as a cross-check oracle, never as the production path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qmath import (
    CLUSTER_TOL,
    DimMismatch,
    HermitianOperator,
    KrausChannel,
    UnitaryOperator,
    apply_channel,
    dagger,
    hermitian_eigensystem,
)

REGIME_TOL = 1e-12
EFFICIENCY_TOL = 1e-12
RELIABILITY_TOL = 1e-14


class Mode(str, Enum):
    DEPHASED = "dephased"
    UNDEPHASED = "undephased"


class Regime(str, Enum):
    ENGINE = "engine"
    ACCELERATOR = "accelerator"
    HEATER = "heater"
    IDLE = "idle"


def _check_beta(beta: float) -> float:
    b = float(beta)
    if math.isnan(b) or b < 0.0:
        raise ValueError("inverse temperature must be >= 0 (or +inf)")
    return b


@dataclass(frozen=True)
class ThermalState:
    populations: np.ndarray  # in the eigenbasis order of the Hamiltonian
    log_z: float
    matrix: np.ndarray


def thermal_state(h1: HermitianOperator, beta: float) -> ThermalState:
    """Gibbs state exp(-beta H)/Z in the eigenbasis of ``h1``.

    Populations use max-shifted exponentials, so any finite beta is safe.
    beta = +inf puts all weight on the ground eigenvalue, split equally
    across a degenerate ground cluster.
    """
    beta = _check_beta(beta)
    lam = h1.eigenvalues
    lo = float(lam[0])
    if math.isinf(beta):
        mask = lam - lo <= CLUSTER_TOL * max(1.0, abs(lo))
        pops = mask.astype(float) / int(mask.sum())
        if lo > 0:
            log_z = -math.inf
        elif lo < 0:
            log_z = math.inf
        else:
            log_z = math.log(int(mask.sum()))
    else:
        shifted = np.exp(-beta * (lam - lo))
        pops = shifted / shifted.sum()
        log_z = -beta * lo + math.log(float(shifted.sum()))
    b = h1.eigenvectors
    rho = (b * pops) @ dagger(b)
    return ThermalState(populations=pops, log_z=log_z, matrix=rho)


@dataclass(frozen=True)
class EngineSpec:
    """One complete cycle: Hamiltonians, stroke unitaries, channel, bath."""

    h1: HermitianOperator
    h2: HermitianOperator
    u: UnitaryOperator
    v: UnitaryOperator
    channel: KrausChannel
    beta: float

    def __post_init__(self):
        dims = {self.h1.dim, self.h2.dim, self.u.dim, self.v.dim,
                self.channel.dim}
        if len(dims) != 1:
            raise DimMismatch(f"spec components disagree on dimension: {dims}")
        object.__setattr__(self, "beta", _check_beta(self.beta))

    @property
    def dim(self) -> int:
        return self.h1.dim


@dataclass(frozen=True)
class CycleTable:
    """All d^4 stochastic cycles, lexicographic in (n, m, k, l).

    ``weights`` are true probabilities in dephased mode and Kirkwood-Dirac
    quasiprobabilities (possibly negative/complex) in undephased mode; they
    sum to 1 in both.
    """

    mode: Mode
    dim: int
    n: np.ndarray
    m: np.ndarray
    k: np.ndarray
    l: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    weights: np.ndarray


def cycle_table(spec: EngineSpec, mode: Mode) -> CycleTable:
    """Enumerate every stochastic cycle with its (quasi)probability.

    Weights are assembled from matrix elements in the two energy eigenbases:
    with a[m,n] = <m2|U|n1>, G[l,k] = <l1|V|k2>, P_j = <.|K_j|.> in basis 2
    and Q_j[l,n] = <l1|V K_j U|n1>,

      dephased    w = p_n |a[m,n]|^2 (sum_j |P_j[k,m]|^2) |G[l,k]|^2
      undephased  w = p_n a[m,n] G[l,k] sum_j P_j[k,m] conj(Q_j[l,n])

    which are the monitored joint probability and the Kirkwood-Dirac
    weight of the corresponding projector string.
    """
    d = spec.dim
    b1, b2 = spec.h1.eigenvectors, spec.h2.eigenvectors
    u, v = spec.u.matrix, spec.v.matrix
    pops = thermal_state(spec.h1, spec.beta).populations
    a = dagger(b2) @ u @ b1
    g = dagger(b1) @ v @ b2
    p_ops = np.stack([dagger(b2) @ k @ b2 for k in spec.channel.kraus])
    if mode is Mode.DEPHASED:
        pp = (np.abs(p_ops) ** 2).sum(axis=0)
        w = np.einsum("n,mn,km,lk->nmkl",
                      pops, np.abs(a) ** 2, pp, np.abs(g) ** 2)
        w = w.astype(np.complex128)
    else:
        q_ops = np.stack([dagger(b1) @ v @ k @ u @ b1
                          for k in spec.channel.kraus])
        corr = np.einsum("jkm,jln->kmln", p_ops, q_ops.conj())
        w = np.einsum("n,mn,lk,kmln->nmkl", pops, a, g, corr)
    idx_n, idx_m, idx_k, idx_l = (x.ravel() for x in np.indices((d,) * 4))
    lam1, lam2 = spec.h1.eigenvalues, spec.h2.eigenvalues
    return CycleTable(mode=mode, dim=d,
                      n=idx_n, m=idx_m, k=idx_k, l=idx_l,
                      e1=lam1[idx_n], e2=lam2[idx_m],
                      e3=lam2[idx_k], e4=lam1[idx_l],
                      weights=w.ravel())


def moment(table: CycleTable, s: tuple[int, int, int, int]) -> complex:
    """Raw moment sum_cycles weight * e1^s1 e2^s2 e3^s3 e4^s4."""
    if any(p < 0 for p in s):
        raise ValueError("powers must be nonnegative integers")
    x = table.weights
    for e, p in zip((table.e1, table.e2, table.e3, table.e4), s):
        if p:
            x = x * e ** p
    return complex(x.sum())


def dephase_in_basis(rho: np.ndarray, h: HermitianOperator) -> np.ndarray:
    """Complete dephasing sum_i |i><i| rho |i><i| in the eigenbasis of h."""
    if rho.shape != (h.dim, h.dim):
        raise DimMismatch(f"state shape {rho.shape} vs operator dim {h.dim}")
    b = h.eigenvectors
    r = dagger(b) @ rho @ b
    return (b * np.diag(r)) @ dagger(b)


def _expi(h: HermitianOperator, gamma: float) -> np.ndarray:
    """exp(i gamma H) via the eigenbasis."""
    b = h.eigenvectors
    return (b * np.exp(1j * gamma * h.eigenvalues)) @ dagger(b)


def characteristic_function(spec: EngineSpec, mode: Mode,
                            g: tuple[float, float, float, float]) -> complex:
    """Four-variable characteristic function of the stochastic energies.

    Direct trace-formula evaluation; equals the Fourier sum of the cycle
    table.  In dephased mode the channel input and output are fully
    dephased in the eigenbasis of the second Hamiltonian, which is exactly
    the effect of the intermediate projective measurements.
    """
    g1, g2, g3, g4 = (float(x) for x in g)
    rho1 = thermal_state(spec.h1, spec.beta).matrix
    u, v = spec.u.matrix, spec.v.matrix
    core = _expi(spec.h2, g2) @ u @ _expi(spec.h1, g1) @ rho1 @ dagger(u)
    if mode is Mode.DEPHASED:
        core = dephase_in_basis(core, spec.h2)
    core = apply_channel(spec.channel, core)
    if mode is Mode.DEPHASED:
        core = dephase_in_basis(core, spec.h2)
    core = v @ (_expi(spec.h2, g3) @ core) @ dagger(v)
    return complex(np.trace(_expi(spec.h1, g4) @ core))


@dataclass(frozen=True)
class CumulantReport:
    """First/second cumulants of the four energies and of W, Q_M, Q_C.

    Work is W = E1 - E2 + E3 - E4 per cycle, heat absorbed Q_M = E3 - E2,
    heat released Q_C = E1 - E4.  In undephased mode the second cumulants
    of W and Q_M may carry an imaginary part; Q_C's is always real (its
    tiny numerical imaginary part is dropped).  ``cov`` is the 4x4
    covariance table of E1..E4; closed-form constructors leave it None.
    """

    avg_e: tuple[float, float, float, float]
    avg_w: float
    avg_qm: float
    avg_qc: float
    var_w: complex
    var_qm: complex
    var_qc: float
    cov: np.ndarray | None
    avg_sigma: float
    jarzynski: complex | None
    efficiency: float | None
    reliability_w: float | None
    regime: Regime


def assemble_report(avg_e, avg_w, avg_qm, avg_qc, var_w, var_qm, var_qc,
                    cov, beta, jarzynski) -> CumulantReport:
    """Attach the derived scalars (entropy, efficiency, regime) to cumulants."""
    if math.isinf(beta):
        if avg_qc < -REGIME_TOL:
            avg_sigma = math.inf
        elif avg_qc <= REGIME_TOL:
            avg_sigma = 0.0
        else:
            avg_sigma = -math.inf
        jarzynski = None  # exp(beta Q_C) overflows; identity not evaluated
    else:
        avg_sigma = -beta * avg_qc
    efficiency = avg_w / avg_qm if abs(avg_qm) > EFFICIENCY_TOL else None
    reliability = (avg_w / math.sqrt(var_w.real)
                   if var_w.real > RELIABILITY_TOL else None)
    if avg_w > REGIME_TOL and avg_qm > REGIME_TOL:
        regime = Regime.ENGINE
    elif avg_qm < -REGIME_TOL:
        regime = Regime.HEATER
    elif avg_qm > REGIME_TOL:
        regime = Regime.ACCELERATOR
    else:
        regime = Regime.IDLE
    return CumulantReport(avg_e=avg_e, avg_w=avg_w, avg_qm=avg_qm,
                          avg_qc=avg_qc, var_w=var_w, var_qm=var_qm,
                          var_qc=var_qc, cov=cov, avg_sigma=avg_sigma,
                          jarzynski=jarzynski, efficiency=efficiency,
                          reliability_w=reliability, regime=regime)


def cumulant_report(spec: EngineSpec, mode: Mode) -> CumulantReport:
    """Exact cumulants from the d^4 table (no numerical differentiation)."""
    t = cycle_table(spec, mode)
    wts = t.weights
    es = (t.e1, t.e2, t.e3, t.e4)
    firsts = [complex((wts * e).sum()) for e in es]
    avg_e = tuple(f.real for f in firsts)

    def cum2(x):
        m1 = (wts * x).sum()
        return complex((wts * x * x).sum() - m1 * m1)

    w = t.e1 - t.e2 + t.e3 - t.e4
    qm = t.e3 - t.e2
    qc = t.e1 - t.e4
    avg_w = float((wts * w).sum().real)
    avg_qm = float((wts * qm).sum().real)
    avg_qc = float((wts * qc).sum().real)
    cov = np.empty((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(i, 4):
            second = complex((wts * es[i] * es[j]).sum())
            cov[i, j] = cov[j, i] = second - firsts[i] * firsts[j]
    if math.isinf(spec.beta):
        jarzynski = None
    else:
        jarzynski = complex((wts * np.exp(spec.beta * qc)).sum())
    return assemble_report(avg_e, avg_w, avg_qm, avg_qc,
                           var_w=cum2(w), var_qm=cum2(qm),
                           var_qc=cum2(qc).real, cov=cov,
                           beta=spec.beta, jarzynski=jarzynski)


_GAMMA_DIRECTIONS = {
    "w": (1.0, -1.0, 1.0, -1.0),
    "qm": (0.0, -1.0, 1.0, 0.0),
    "qc": (1.0, 0.0, 0.0, -1.0),
}


def cf_cumulant_crosscheck(spec: EngineSpec, mode: Mode,
                           step: float = 1e-4) -> float:
    """Max deviation of table cumulants from finite differences of log CF.

    Central differences with one Richardson extrapolation, taken along the
    W, Q_M and Q_C directions of the characteristic function.  Returns the
    largest absolute deviation across the six cumulants; the contract is
    <= 1e-5.
    """
    rep = cumulant_report(spec, mode)
    ref = {
        "w": (complex(rep.avg_w), rep.var_w),
        "qm": (complex(rep.avg_qm), rep.var_qm),
        "qc": (complex(rep.avg_qc), complex(rep.var_qc)),
    }
    worst = 0.0
    for key, direction in _GAMMA_DIRECTIONS.items():

        def logcf(x: float) -> complex:
            gam = tuple(c * x for c in direction)
            return complex(np.log(characteristic_function(spec, mode, gam)))

        f0 = logcf(0.0)
        vals = {h: (logcf(h), logcf(-h)) for h in (step, step / 2)}

        def d1(h):
            fp, fm = vals[h]
            return (fp - fm) / (2 * h)

        def d2(h):
            fp, fm = vals[h]
            return (fp - 2 * f0 + fm) / (h * h)

        first = -1j * (4 * d1(step / 2) - d1(step)) / 3
        second = -(4 * d2(step / 2) - d2(step)) / 3
        worst = max(worst, abs(first - ref[key][0]), abs(second - ref[key][1]))
    return worst
