"""Closed-form layer for the single-qubit engine.

The working medium is one qubit with H1 = nu1 sigma_z and H2 = nu2 sigma_x.
The drive unitary U is parametrized by a transition weight delta in [0, 1]
and a phase phi; the return stroke V is the time-reversed drive (V equals
U^dagger exactly when phi = 0 or pi).  The fueling channel is a projective
measurement along the Bloch direction (alpha, chi).

Every first/second cumulant of both the monitored and unmonitored engine
is expressible through six transition probabilities; those closed forms
live here, next to the bound chains and basis-comparison identities they
imply.  All of them are computed from trace definitions against the built
operators, so the enumeration engine can confirm each expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import engine
from .engine import CumulantReport, EngineSpec, Mode, assemble_report
from .qmath import (
    DimMismatch,
    KrausChannel,
    UnitaryOperator,
    apply_channel,
    dagger,
    hermitian_eigensystem,
)

TWO_PI = 2.0 * math.pi
PROB_TOL = 1e-12


class ParamOutOfRange(ValueError):
    """Qubit parameter outside its documented range."""


class DivisionDegenerate(ArithmeticError):
    """Efficiency ratio undefined: heat absorbed vanishes at this point."""


@dataclass(frozen=True)
class QubitParams:
    """Parameters of the single-qubit cycle.

    nu1, nu2 are half-gaps of the two Hamiltonians; beta >= 0 (may be
    math.inf); delta in [0, 1] is the non-adiabatic transition weight;
    phi is the drive phase; (alpha, chi) fix the measurement direction.
    """

    nu1: float
    nu2: float
    beta: float
    delta: float
    phi: float = 0.0
    alpha: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        def bad(msg):
            raise ParamOutOfRange(msg)
        for name in ("nu1", "nu2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                bad(f"{name} must be positive and finite, got {v}")
        if math.isnan(self.beta) or self.beta < 0:
            bad(f"beta must be >= 0 or inf, got {self.beta}")
        if not 0.0 <= self.delta <= 1.0:
            bad(f"delta must lie in [0, 1], got {self.delta}")
        if not 0.0 <= self.phi < TWO_PI:
            bad(f"phi must lie in [0, 2*pi), got {self.phi}")
        if not 0.0 <= self.alpha <= math.pi:
            bad(f"alpha must lie in [0, pi], got {self.alpha}")
        if not 0.0 <= self.chi < TWO_PI:
            bad(f"chi must lie in [0, 2*pi), got {self.chi}")


def _tanh(beta: float, nu1: float) -> float:
    return 1.0 if math.isinf(beta) else math.tanh(beta * nu1)


def drive_unitary(delta: float, phi: float) -> np.ndarray:
    """Drive stroke in the computational basis (ordered excited, ground)."""
    sq = math.sqrt(1.0 - delta)
    sd = math.sqrt(delta)
    ep, em = np.exp(1j * phi), np.exp(-1j * phi)
    return np.array([[sq * em + sd, sq * ep - sd],
                     [sq * em - sd, -sq * ep - sd]]) / math.sqrt(2.0)


def measurement_projectors(alpha: float, chi: float):
    """Rank-1 projector pair along the Bloch direction (alpha, chi)."""
    c, s = math.cos(alpha / 2.0), math.sin(alpha / 2.0)
    ep, em = np.exp(1j * chi), np.exp(-1j * chi)
    p1 = np.array([[c * c, s * c * em], [s * c * ep, s * s]])
    p2 = np.array([[s * s, -s * c * em], [-s * c * ep, c * c]])
    return p1, p2


def build_qubit_spec(p: QubitParams) -> EngineSpec:
    """Assemble the full cycle description from qubit parameters.

    V is the time reversal of U (its transpose in this basis), so the
    return stroke undoes the drive up to the phase phi.
    """
    h1 = hermitian_eigensystem(np.diag([p.nu1, -p.nu1]).astype(complex))
    h2 = hermitian_eigensystem(p.nu2 * np.array([[0.0, 1.0], [1.0, 0.0]],
                                                dtype=complex))
    u = drive_unitary(p.delta, p.phi)
    channel = KrausChannel(kraus=measurement_projectors(p.alpha, p.chi))
    return EngineSpec(h1=h1, h2=h2,
                      u=UnitaryOperator(u), v=UnitaryOperator(u.T.copy()),
                      channel=channel, beta=p.beta)


@dataclass(frozen=True)
class TransitionProbs:
    """The six transition probabilities that fix all qubit cumulants.

    delta_p, theta, zeta drive the monitored engine; theta_c, zeta_sup_c,
    zeta_sub_c additionally carry the coherence surviving in the
    unmonitored one.
    """

    delta_p: float       # drive flip  |<+2|U|-1>|^2
    theta: float         # channel flip from the excited state of H2
    zeta: float          # return flip |<+1|V|-2>|^2
    theta_c: float       # channel flip from the driven excited state
    zeta_sup_c: float    # full-cycle flip of the excited state
    zeta_sub_c: float    # return-stroke flip of the channel output

    def __post_init__(self):
        for name in ("delta_p", "theta", "zeta", "theta_c",
                     "zeta_sup_c", "zeta_sub_c"):
            v = getattr(self, name)
            if not -PROB_TOL <= v <= 1.0 + PROB_TOL:
                raise ValueError(f"{name}={v} is not a probability")


def transition_probs(spec: EngineSpec) -> TransitionProbs:
    """Evaluate all six probabilities from their trace definitions."""
    if spec.dim != 2:
        raise DimMismatch("transition probabilities are defined for qubits")
    b1, b2 = spec.h1.eigenvectors, spec.h2.eigenvectors
    g1, x1 = b1[:, 0], b1[:, 1]  # ground, excited of H1 (ascending order)
    g2, x2 = b2[:, 0], b2[:, 1]
    u, v = spec.u.matrix, spec.v.matrix
    driven = apply_channel(spec.channel, u @ np.outer(x1, x1.conj()) @ dagger(u))
    channel_x2 = apply_channel(spec.channel, np.outer(x2, x2.conj()))
    return TransitionProbs(
        delta_p=float(np.abs(x2.conj() @ u @ g1) ** 2),
        theta=float((g2.conj() @ channel_x2 @ g2).real),
        zeta=float(np.abs(x1.conj() @ v @ g2) ** 2),
        theta_c=float((g2.conj() @ driven @ g2).real),
        zeta_sup_c=float((g1.conj() @ v @ driven @ dagger(v) @ g1).real),
        zeta_sub_c=float((g1.conj() @ v @ channel_x2 @ dagger(v) @ g1).real),
    )


def theta_closed(alpha: float, chi: float) -> float:
    """Channel flip probability of the projective channel, in [0, 1/2]."""
    return 0.5 * (1.0 - math.cos(chi) ** 2 * math.sin(alpha) ** 2)


# ---------------------------------------------------------------------------
# closed-form cumulant reports


def dephased_closed(tp: TransitionProbs, nu1: float, nu2: float,
                    beta: float) -> CumulantReport:
    """Monitored-engine cumulants from (delta_p, theta, zeta).

    The released-heat and work variances are written with the
    coth * tanh cancellation carried out, so beta = 0 and beta = +inf are
    exact limits rather than special cases.
    """
    t = _tanh(beta, nu1)
    dp, th, ze = tp.delta_p, tp.theta, tp.zeta
    mix = dp + ze - 2.0 * dp * ze
    qm = 2.0 * (1.0 - 2.0 * dp) * th * nu2 * t
    var_qm = 4.0 * th * nu2 ** 2 - qm ** 2
    qc = -2.0 * (th + (1.0 - 2.0 * th) * mix) * nu1 * t
    # -qc * 2 nu1 coth == 4 (th + (1-2 th) mix) nu1^2 for every beta
    qc2_stripped = 4.0 * (th + (1.0 - 2.0 * th) * mix) * nu1 ** 2
    var_qc = qc2_stripped - qc ** 2
    w = qm + qc
    var_w = (qc2_stripped + 8.0 * th * (dp + ze - 1.0) * nu1 * nu2
             + 4.0 * th * nu2 ** 2 - w ** 2)
    avg_e = (-nu1 * t,
             -nu2 * (1.0 - 2.0 * dp) * t,
             -nu2 * (1.0 - 2.0 * dp) * (1.0 - 2.0 * th) * t,
             -nu1 * t - qc)
    jarzynski = None if math.isinf(beta) else 1.0 + 0.0j
    return assemble_report(avg_e, w, qm, qc,
                           var_w=complex(var_w), var_qm=complex(var_qm),
                           var_qc=var_qc, cov=None, beta=beta,
                           jarzynski=jarzynski)


def dephased_cf_closed(tp: TransitionProbs, nu1: float, nu2: float,
                       beta: float,
                       g: tuple[float, float, float, float]) -> complex:
    """Characteristic function of the monitored qubit engine, closed form.

    Eight branches (flip / no-flip at each of the three strokes); each
    contributes coeff * [cos(x) - i sin(x) tanh(beta nu1)] where x collects
    the Fourier variables of that branch.
    """
    g1, g2, g3, g4 = g
    t = _tanh(beta, nu1)
    dp, th, ze = tp.delta_p, tp.theta, tp.zeta
    terms = (
        ((1 - dp) * (1 - th) * (1 - ze), (g1 + g4) * nu1 + (g2 + g3) * nu2),
        ((1 - dp) * (1 - th) * ze,       (g1 - g4) * nu1 + (g2 + g3) * nu2),
        ((1 - dp) * th * ze,             (g1 + g4) * nu1 + (g2 - g3) * nu2),
        ((1 - dp) * th * (1 - ze),       (g1 - g4) * nu1 + (g2 - g3) * nu2),
        (dp * th * (1 - ze),             (g1 + g4) * nu1 + (g3 - g2) * nu2),
        (dp * th * ze,                   (g1 - g4) * nu1 + (g3 - g2) * nu2),
        (dp * (1 - th) * ze,             (g1 + g4) * nu1 - (g2 + g3) * nu2),
        (dp * (1 - th) * (1 - ze),       (g1 - g4) * nu1 - (g2 + g3) * nu2),
    )
    return sum(c * complex(math.cos(x), -math.sin(x) * t) for c, x in terms)


def undephased_closed(tp: TransitionProbs, nu1: float, nu2: float,
                      beta: float) -> CumulantReport:
    """Unmonitored-engine cumulants from the six transition probabilities.

    The second cumulants of W and Q_M are their real parts (the closed
    forms do not resolve the imaginary component; the enumeration report
    does).
    """
    t = _tanh(beta, nu1)
    dp, th, ze = tp.delta_p, tp.theta, tp.zeta
    thc, zec, zc = tp.theta_c, tp.zeta_sup_c, tp.zeta_sub_c
    qc = -2.0 * zec * nu1 * t
    qm = 2.0 * (thc - dp) * nu2 * t
    w = qm + qc
    var_qc = 4.0 * zec * nu1 ** 2 - qc ** 2
    var_qm = 4.0 * th * nu2 ** 2 - qm ** 2
    var_w = (4.0 * nu1 * nu2 * (dp + ze - thc - zc)
             + 4.0 * (nu1 ** 2 * zec + nu2 ** 2 * th) - w ** 2)
    avg_e = (-nu1 * t,
             -nu2 * (1.0 - 2.0 * dp) * t,
             -nu2 * (1.0 - 2.0 * thc) * t,
             -nu1 * (1.0 - 2.0 * zec) * t)
    jarzynski = None if math.isinf(beta) else 1.0 + 0.0j
    return assemble_report(avg_e, w, qm, qc,
                           var_w=complex(var_w), var_qm=complex(var_qm),
                           var_qc=var_qc, cov=None, beta=beta,
                           jarzynski=jarzynski)


def qm_explicit_angles(p: QubitParams) -> float:
    """Heat absorbed by the unmonitored engine, written out in the angles.

    First term is the monitored engine's heat; the second is the coherence
    contribution Tr[Phi(Off2(rho2)) H2], nonzero only for 0 < delta < 1.
    """
    t = _tanh(p.beta, p.nu1)
    sa, ca = math.sin(p.alpha), math.cos(p.alpha)
    incoherent = (1.0 - 2.0 * p.delta) * (1.0 - math.cos(p.chi) ** 2 * sa ** 2)
    coherent = math.sqrt(p.delta * (1.0 - p.delta)) * sa * (
        sa * math.sin(p.phi) * math.sin(2.0 * p.chi)
        - 2.0 * ca * math.cos(p.phi) * math.cos(p.chi))
    return p.nu2 * (incoherent + coherent) * t


@dataclass(frozen=True)
class CoherenceSplit:
    """Coherence contributions: (unmonitored - monitored) averages."""

    qm_coh: float
    qc_coh: float
    w_coh: float


def coherence_decomposition(spec: EngineSpec) -> CoherenceSplit:
    """Split the mode difference of the averages into coherence traces.

    Valid for any finite dimension.  With D = diagonal part and O =
    off-diagonal part in the eigenbasis of the second Hamiltonian,

      qm_coh = Tr[Phi(O(rho2)) H2]
      qc_coh = -Tr[V (O(Phi(D(rho2))) + D(Phi(O(rho2))) + O(Phi(O(rho2)))) V† H1]

    and w_coh is their sum; each equals the corresponding unmonitored
    minus monitored average.
    """
    rho1 = engine.thermal_state(spec.h1, spec.beta).matrix
    u, v = spec.u.matrix, spec.v.matrix
    rho2 = u @ rho1 @ dagger(u)

    def diag2(x):
        return engine.dephase_in_basis(x, spec.h2)

    def off2(x):
        return x - diag2(x)

    phi = spec.channel
    qm_coh = float(np.trace(apply_channel(phi, off2(rho2)) @ spec.h2.matrix).real)
    inner = (off2(apply_channel(phi, diag2(rho2)))
             + diag2(apply_channel(phi, off2(rho2)))
             + off2(apply_channel(phi, off2(rho2))))
    qc_coh = -float(np.trace(v @ inner @ dagger(v) @ spec.h1.matrix).real)
    return CoherenceSplit(qm_coh=qm_coh, qc_coh=qc_coh,
                          w_coh=qm_coh + qc_coh)


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundsReport:
    """Relative fluctuations, reliabilities and the bound chain material.

    Fields are None where the defining denominator is degenerate.
    thm2_gap is var(Q_M) - var(W) (real parts); rf_gap_* are
    rf_w - rf_qm and rf_w - rf_qc.  When V = U† and the channel is a
    projective (Hermitian-Kraus) measurement these use their closed forms,
    otherwise the enumerated differences.
    """

    rf_w: float | None
    rf_qm: float | None
    rf_qc: float | None
    tur_bound: float | None
    appc_bound: float | None
    r_w: float | None
    r_qm: float | None
    eff: float | None
    eff_sq: float | None
    var_ratio: float | None
    thm2_gap: float
    rf_gap_w_qm: float | None
    rf_gap_w_qc: float | None
    kd_discriminant: float


def _half_gap(h) -> float:
    return 0.5 * float(h.eigenvalues[-1] - h.eigenvalues[0])


def _time_reversal_pair(spec: EngineSpec) -> bool:
    """True when V = U† and every Kraus operator is Hermitian."""
    if np.max(np.abs(spec.v.matrix - dagger(spec.u.matrix))) > 1e-12:
        return False
    return all(np.max(np.abs(k - dagger(k))) <= 1e-12
               for k in spec.channel.kraus)


def bounds_report(spec: EngineSpec, mode: Mode) -> BoundsReport:
    """Evaluate every bound-chain quantity for a qubit spec in one mode."""
    if spec.dim != 2:
        raise DimMismatch("bounds are formulated for qubit specs")
    rep = engine.cumulant_report(spec, mode)
    tp = transition_probs(spec)
    nu1, nu2 = _half_gap(spec.h1), _half_gap(spec.h2)
    t = _tanh(spec.beta, nu1)
    vw, vqm, vqc = rep.var_w.real, rep.var_qm.real, rep.var_qc

    def ratio(num, avg):
        return num / (avg * avg) if avg * avg > 1e-12 else None

    rf_w, rf_qm, rf_qc = ratio(vw, rep.avg_w), ratio(vqm, rep.avg_qm), \
        ratio(vqc, rep.avg_qc)
    if math.isinf(rep.avg_sigma):
        tur = -1.0
    elif rep.avg_sigma > 1e-12:
        tur = 2.0 / rep.avg_sigma - 1.0
    else:
        tur = None
    if abs(rep.avg_qc) > 1e-12 and t > 0:
        # 2 beta nu1 coth(beta nu1)/<Sigma> - 1 with beta cancelled
        appc = 2.0 * nu1 / (t * (-rep.avg_qc)) - 1.0
    else:
        appc = None
    r_qm = rep.avg_qm / math.sqrt(vqm) if vqm > engine.RELIABILITY_TOL else None
    eff = rep.efficiency
    var_ratio = vw / vqm if abs(vqm) > 1e-12 else None

    closed = _time_reversal_pair(spec)
    if closed and mode is Mode.UNDEPHASED:
        # (<W> + <Q_M>) coth(beta nu1), with the tanh cancelled analytically
        stripped = 2.0 * (2.0 * (tp.theta_c - tp.delta_p) * nu2
                          - tp.zeta_sup_c * nu1)
        thm2_gap = 2.0 * nu1 * stripped * (1.0 - tp.zeta_sup_c * t * t)
    elif closed and mode is Mode.DEPHASED:
        mix = tp.delta_p + tp.zeta - 2.0 * tp.delta_p * tp.zeta
        stripped = 2.0 * (2.0 * (1.0 - 2.0 * tp.delta_p) * tp.theta * nu2
                          - (tp.theta + (1.0 - 2.0 * tp.theta) * mix) * nu1)
        thm2_gap = stripped * (2.0 * nu1 + rep.avg_qc * t)
    else:
        thm2_gap = vqm - vw
    kd = tp.theta * tp.zeta_sup_c - (tp.theta_c - tp.delta_p) ** 2
    if closed and mode is Mode.UNDEPHASED and None not in (rf_w, rf_qm, rf_qc):
        scale = (rep.avg_w * rep.avg_qm) ** 2
        gap_qm = 8.0 * nu1 * nu2 ** 2 * t * (rep.avg_qm + rep.avg_w) * kd / scale
        gap_qc = ((4.0 * nu1 * nu2 * t) ** 2 * tp.zeta_sup_c * kd
                  / (rep.avg_w * rep.avg_qc) ** 2)
    else:
        gap_qm = rf_w - rf_qm if None not in (rf_w, rf_qm) else None
        gap_qc = rf_w - rf_qc if None not in (rf_w, rf_qc) else None
    return BoundsReport(rf_w=rf_w, rf_qm=rf_qm, rf_qc=rf_qc,
                        tur_bound=tur, appc_bound=appc,
                        r_w=rep.reliability_w, r_qm=r_qm,
                        eff=eff, eff_sq=None if eff is None else eff * eff,
                        var_ratio=var_ratio, thm2_gap=thm2_gap,
                        rf_gap_w_qm=gap_qm, rf_gap_w_qc=gap_qc,
                        kd_discriminant=kd)


# ---------------------------------------------------------------------------
# named-basis identities


@dataclass(frozen=True)
class BasisComparison:
    """Closed-form work identities for the x, y, z bases and the yz plane.

    Gaps are unmonitored minus monitored work.  In the yz plane the
    monitored work is basis-independent (dephased_yz_w) and the absorbed
    heat is shared by every basis (yz_plane_qm).
    """

    x_basis_w: float       # both engines, measuring along x
    y_basis_w: float
    z_basis_w: float
    yz_plane_w: float      # unmonitored work at this alpha, chi = pi/2
    y_basis_gap: float
    z_basis_gap: float
    dephased_yz_w: float
    yz_plane_qm: float


def basis_comparisons(p: QubitParams) -> BasisComparison:
    """Evaluate the named-basis identities at p's delta, phi, beta, alpha."""
    t = _tanh(p.beta, p.nu1)
    f = 4.0 * p.delta * (1.0 - p.delta) * p.nu1 * t
    w_deph = ((1.0 - 2.0 * p.delta) * p.nu2 - p.nu1) * t  # theta = 1/2 value
    y_gap = -f * math.sin(p.phi) ** 2
    z_gap = f * math.cos(p.phi) ** 2
    y_w = w_deph + y_gap
    return BasisComparison(
        x_basis_w=-f,
        y_basis_w=y_w,
        z_basis_w=w_deph + z_gap,
        yz_plane_w=y_w + f * math.cos(p.alpha) ** 2,
        y_basis_gap=y_gap,
        z_basis_gap=z_gap,
        dephased_yz_w=w_deph,
        yz_plane_qm=(1.0 - 2.0 * p.delta) * p.nu2 * t,
    )


@dataclass(frozen=True)
class OccupationProbs:
    p_eb: float  # excited-state occupation after the drive
    p_ec: float  # excited-state occupation after the channel


def occupation_probs(p: QubitParams, mode: Mode) -> OccupationProbs:
    """Excited-level occupations of H2 before and after the fueling stroke."""
    tp = transition_probs(build_qubit_spec(p))
    t = _tanh(p.beta, p.nu1)
    p_eb = 0.5 * (1.0 - (1.0 - 2.0 * tp.delta_p) * t)
    if mode is Mode.DEPHASED:
        p_ec = 0.5 * (1.0 - (1.0 - 2.0 * tp.delta_p) * (1.0 - 2.0 * tp.theta) * t)
    else:
        p_ec = 0.5 * (1.0 - (1.0 - 2.0 * tp.theta_c) * t)
    return OccupationProbs(p_eb=p_eb, p_ec=p_ec)


@dataclass(frozen=True)
class EfficiencyBounds:
    eff: float
    w_lower: float
    eff_lower: float


def efficiency_bounds(tp: TransitionProbs, nu1: float, nu2: float,
                      beta: float) -> EfficiencyBounds:
    """Unmonitored efficiency with its work and efficiency lower bounds.

    The bounds hold in the heat-engine region with nu2 >= nu1.
    """
    denom = tp.theta_c - tp.delta_p
    if abs(denom) <= 1e-12:
        raise DivisionDegenerate("theta_c - delta_p vanishes")
    t = _tanh(beta, nu1)
    return EfficiencyBounds(
        eff=1.0 - (nu1 / nu2) * tp.zeta_sup_c / denom,
        w_lower=2.0 * ((tp.theta_c - tp.zeta_sup_c) - tp.delta_p) * nu1 * t,
        eff_lower=1.0 - tp.zeta_sup_c / denom,
    )


def qubit_report(p: QubitParams, mode: Mode,
                 closed_form: bool = True) -> CumulantReport:
    """Convenience: report for qubit parameters via closed forms or tables."""
    spec = build_qubit_spec(p)
    if not closed_form:
        return engine.cumulant_report(spec, mode)
    tp = transition_probs(spec)
    if mode is Mode.DEPHASED:
        return dephased_closed(tp, p.nu1, p.nu2, p.beta)
    return undephased_closed(tp, p.nu1, p.nu2, p.beta)


def sweep_value(p: QubitParams, field: str, value: float) -> QubitParams:
    """Return params with one named field replaced (sweep plumbing)."""
    if field not in p.__dataclass_fields__:
        raise ParamOutOfRange(f"unknown parameter {field!r}")
    return replace(p, **{field: value})
