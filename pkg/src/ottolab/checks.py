"""Invariant suites behind ``otto check``.

Each suite exercises one family of invariants over seeded random fleets
and reports its worst observed deviation.  The suites are sized so the
whole run stays well under a minute on commodity hardware.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import engine, figures, qmath, qubit, runs
from .engine import Mode
from .qmath import KrausChannel, UnitaryOperator, apply_channel, dagger, \
    hermitian_eigensystem
from .qubit import QubitParams, build_qubit_spec, transition_probs
from .sampling import (
    BETA_CHOICES,
    haar_unitary,
    random_hermitian,
    random_projective_channel,
    random_qubit_params,
    random_spec,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_dev: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:32s} max_dev={self.max_dev:.3e}{extra}"


def _result(name, dev, tol, detail="") -> SuiteResult:
    return SuiteResult(name=name, passed=dev <= tol, max_dev=float(dev),
                       detail=detail)


def report_deviation(a: engine.CumulantReport,
                     b: engine.CumulantReport) -> float:
    """Largest entry-wise difference between two reports."""
    dev = 0.0
    for x, y in zip(a.avg_e, b.avg_e):
        dev = max(dev, abs(x - y))
    dev = max(dev, abs(a.avg_w - b.avg_w), abs(a.avg_qm - b.avg_qm),
              abs(a.avg_qc - b.avg_qc), abs(a.var_w - b.var_w),
              abs(a.var_qm - b.var_qm), abs(a.var_qc - b.var_qc))
    if a.cov is not None and b.cov is not None:
        dev = max(dev, float(np.max(np.abs(a.cov - b.cov))))
    if math.isinf(a.avg_sigma) or math.isinf(b.avg_sigma):
        if a.avg_sigma != b.avg_sigma:
            dev = max(dev, math.inf)
    else:
        dev = max(dev, abs(a.avg_sigma - b.avg_sigma))
    for x, y in ((a.jarzynski, b.jarzynski), (a.efficiency, b.efficiency),
                 (a.reliability_w, b.reliability_w)):
        if (x is None) != (y is None):
            dev = max(dev, math.inf)
        elif x is not None:
            dev = max(dev, abs(x - y))
    if a.regime is not b.regime:
        dev = max(dev, math.inf)
    return dev


# ---------------------------------------------------------------------------
# qmath suites


def suite_eigensystem(rng) -> SuiteResult:
    dev = 0.0
    for _ in range(60):
        d = int(rng.integers(2, 9))
        h = hermitian_eigensystem(random_hermitian(rng, d))
        recon = (h.eigenvectors * h.eigenvalues) @ dagger(h.eigenvectors)
        dev = max(dev, float(np.max(np.abs(recon - h.matrix))))
        gram = dagger(h.eigenvectors) @ h.eigenvectors - np.eye(d)
        dev = max(dev, float(np.max(np.abs(gram))))
        dev = max(dev, abs(np.trace(h.matrix).real - h.eigenvalues.sum()))
        resid = h.matrix @ h.eigenvectors - h.eigenvectors * h.eigenvalues
        dev = max(dev, float(np.max(np.abs(resid))))
    return _result("qmath-eigensystem", dev, 1e-10, "60 random Hermitians")


def suite_channels(rng, inject_nonunital=False) -> SuiteResult:
    fleet = [random_projective_channel(rng, int(rng.integers(2, 5)))
             for _ in range(25)]
    fleet.append(qmath.identity_channel(3))
    if inject_nonunital:
        bad = object.__new__(KrausChannel)
        object.__setattr__(bad, "kraus",
                           (np.diag([1.0, 0.5]).astype(complex),))
        object.__setattr__(bad, "tol", qmath.CHANNEL_TOL)
        fleet.append(bad)
    dev = 0.0
    for ch in fleet:
        eye = np.eye(ch.dim)
        tp = sum(dagger(k) @ k for k in ch.kraus)
        un = sum(k @ dagger(k) for k in ch.kraus)
        dev = max(dev, float(np.max(np.abs(tp - eye))),
                  float(np.max(np.abs(un - eye))))
        # channel output on a random density matrix stays a density matrix
        psi = rng.normal(size=ch.dim) + 1j * rng.normal(size=ch.dim)
        rho = np.outer(psi, psi.conj())
        rho = 0.5 * rho / np.trace(rho).real + 0.5 * eye / ch.dim
        out = apply_channel(ch, rho)
        dev = max(dev, abs(np.trace(out).real - 1.0),
                  float(np.max(np.abs(out - dagger(out)))),
                  max(0.0, -float(np.linalg.eigvalsh(out).min())))
    return _result("qmath-channels", dev, qmath.CHANNEL_TOL,
                    f"{len(fleet)} channels")


def suite_projective_grid(rng) -> SuiteResult:
    dev = 0.0
    ok = True
    for alpha in np.linspace(0.0, math.pi, 10):
        for chi in np.linspace(0.0, 2.0 * math.pi, 5, endpoint=False):
            p1, p2 = qubit.measurement_projectors(alpha, chi)
            ok &= qmath.validate_projective_pair(p1, p2)
    return SuiteResult("qmath-projective-grid", ok, 0.0 if ok else 1.0,
                       "50 (alpha, chi) points")


# ---------------------------------------------------------------------------
# engine suites (shared fleet)


def _engine_fleet(rng):
    specs = [build_qubit_spec(random_qubit_params(rng)) for _ in range(200)]
    specs += [random_spec(rng, int(rng.integers(3, 5))) for _ in range(20)]
    return specs


def engine_suites(rng) -> list[SuiteResult]:
    specs = _engine_fleet(rng)
    dev_norm = dev_pos = dev_jz = dev_law2 = dev_marg = 0.0
    dev_imag = dev_first = 0.0
    n_na = 0
    for spec in specs:
        d = spec.dim
        for mode in Mode:
            table = engine.cycle_table(spec, mode)
            dev_norm = max(dev_norm, abs(table.weights.sum() - 1.0))
            rep = engine.cumulant_report(spec, mode)
            dev_first = max(dev_first,
                            abs(rep.avg_w - rep.avg_qm - rep.avg_qc))
            sigma_neg = 0.0 if rep.avg_sigma == math.inf else -rep.avg_sigma
            dev_law2 = max(dev_law2, rep.avg_qc, sigma_neg)
            if rep.jarzynski is None:
                n_na += 1
            else:
                dev_jz = max(dev_jz, abs(rep.jarzynski - 1.0))
            if mode is Mode.DEPHASED:
                dev_pos = max(dev_pos, -float(table.weights.real.min()))
            else:
                grid = table.weights.reshape((d,) * 4)
                marg = grid.sum(axis=(1, 2))
                dev_marg = max(dev_marg, -float(marg.real.min()),
                               float(np.max(np.abs(marg.imag))))
                qc = table.e1 - table.e4
                m1 = (table.weights * qc).sum()
                var_qc = (table.weights * qc * qc).sum() - m1 * m1
                dev_imag = max(dev_imag, abs(var_qc.imag))
    return [
        _result("engine-normalization", dev_norm, 1e-10,
                f"{2 * len(specs)} tables"),
        _result("engine-dephased-positivity", dev_pos, 1e-12),
        _result("engine-jarzynski", dev_jz, 1e-10,
                f"N/A at beta=inf: {n_na}"),
        _result("engine-second-law", dev_law2, 1e-10),
        _result("engine-marginal-positivity", dev_marg, 1e-12),
        _result("engine-var-qc-real", dev_imag, 1e-10),
        _result("engine-first-law", dev_first, 1e-10),
    ]


def _adiabatic_spec(rng, d: int, beta: float) -> engine.EngineSpec:
    """Cycle whose strokes map energy eigenbases onto each other."""
    h1 = hermitian_eigensystem(random_hermitian(rng, d))
    h2 = hermitian_eigensystem(random_hermitian(rng, d))
    b1, b2 = h1.eigenvectors, h2.eigenvectors

    def mapping(src, dst):
        perm = np.eye(d)[:, rng.permutation(d)]
        phases = np.exp(2j * math.pi * rng.uniform(size=d))
        return UnitaryOperator((dst * phases) @ perm @ dagger(src))

    return engine.EngineSpec(h1=h1, h2=h2, u=mapping(b1, b2),
                             v=mapping(b2, b1),
                             channel=random_projective_channel(rng, d),
                             beta=beta)


def suite_mode_agreement(rng) -> SuiteResult:
    dev = 0.0
    count = 0
    for beta in (0.0, 0.7, 3.0, math.inf):
        for _ in range(3):
            p = replace(random_qubit_params(rng), delta=0.0, beta=beta)
            spec = build_qubit_spec(p)
            dev = max(dev, report_deviation(
                engine.cumulant_report(spec, Mode.DEPHASED),
                engine.cumulant_report(spec, Mode.UNDEPHASED)))
            spec3 = _adiabatic_spec(rng, 3, beta)
            dev = max(dev, report_deviation(
                engine.cumulant_report(spec3, Mode.DEPHASED),
                engine.cumulant_report(spec3, Mode.UNDEPHASED)))
            count += 2
    return _result("engine-mode-agreement", dev, 1e-10,
                   f"{count} eigenbasis-mapping cycles")


def suite_cf_crosscheck(rng) -> SuiteResult:
    dev = 0.0
    for i in range(50):
        if i % 5 == 4:
            spec = random_spec(rng, 3)
        else:
            spec = build_qubit_spec(
                random_qubit_params(rng, betas=(0.0, 0.3, 0.6, 1.0, 5.0)))
        for mode in Mode:
            dev = max(dev, engine.cf_cumulant_crosscheck(spec, mode))
    return _result("engine-cf-crosscheck", dev, 1e-5, "50 specs, both modes")


# ---------------------------------------------------------------------------
# qubit suites


def suite_oracle_equivalence(rng) -> SuiteResult:
    dev = 0.0
    for _ in range(200):
        p = random_qubit_params(rng)
        spec = build_qubit_spec(p)
        tp = transition_probs(spec)
        for mode, closed in ((Mode.DEPHASED, qubit.dephased_closed),
                             (Mode.UNDEPHASED, qubit.undephased_closed)):
            ref = engine.cumulant_report(spec, mode)
            cf = closed(tp, p.nu1, p.nu2, p.beta)
            dev = max(dev,
                      abs(cf.avg_w - ref.avg_w), abs(cf.avg_qm - ref.avg_qm),
                      abs(cf.avg_qc - ref.avg_qc),
                      abs(cf.var_w.real - ref.var_w.real),
                      abs(cf.var_qm.real - ref.var_qm.real),
                      abs(cf.var_qc - ref.var_qc))
            dev = max(dev, max(abs(x - y)
                               for x, y in zip(cf.avg_e, ref.avg_e)))
    return _result("qubit-oracle-equivalence", dev, 1e-10,
                   "200 param sets, 6 cumulants + averages")


def suite_delta_prime(rng) -> SuiteResult:
    dev = 0.0
    for delta in np.linspace(0.0, 1.0, 20):
        p = replace(random_qubit_params(rng), delta=float(delta))
        tp = transition_probs(build_qubit_spec(p))
        dev = max(dev, abs(tp.delta_p - delta), abs(tp.zeta - delta))
        dev = max(dev, abs(tp.theta - qubit.theta_closed(p.alpha, p.chi)))
    return _result("qubit-delta-prime-zeta", dev, 1e-12, "20-point delta grid")


def suite_time_reversal_identities(rng) -> SuiteResult:
    dev = 0.0
    zec_bad = 0.0
    for i in range(50):
        alpha = float(rng.uniform(0.0, math.pi))
        chi = float(rng.uniform(0.0, 2.0 * math.pi))
        if i < 10:
            p = replace(random_qubit_params(rng), phi=0.0,
                        alpha=alpha, chi=chi)
            spec = build_qubit_spec(p)
        else:
            u = haar_unitary(rng, 2)
            spec = engine.EngineSpec(
                h1=hermitian_eigensystem(np.diag([1.0, -1.0]).astype(complex)),
                h2=hermitian_eigensystem(
                    2.0 * np.array([[0, 1], [1, 0]], dtype=complex)),
                u=UnitaryOperator(u), v=UnitaryOperator(dagger(u)),
                channel=KrausChannel(
                    kraus=qubit.measurement_projectors(alpha, chi)),
                beta=float(rng.uniform(0.0, 3.0)))
        tp = transition_probs(spec)
        dev = max(dev, abs(tp.zeta_sub_c - tp.theta_c),
                  abs(tp.delta_p - tp.zeta))
        zec_bad = max(zec_bad, -tp.zeta_sup_c, tp.zeta_sup_c - 0.5)
    return _result("qubit-time-reversal-identities", max(dev, zec_bad),
                   1e-12, "50 V=U-dagger cycles")


def _engine_region_samples(rng, count, phi=0.0):
    """Qubit params whose dephased (phi=0: both) regime is Engine."""
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 40:
        attempts += 1
        p = replace(random_qubit_params(
            rng, betas=(0.3, 0.6, 1.0, 5.0, math.inf)), phi=phi)
        if p.nu2 < p.nu1:
            p = replace(p, nu1=p.nu2, nu2=p.nu1)
        spec = build_qubit_spec(p)
        tp = transition_probs(spec)
        rep = qubit.dephased_closed(tp, p.nu1, p.nu2, p.beta)
        if rep.regime is engine.Regime.ENGINE:
            out.append((p, spec, tp))
    return out


def suite_theorem1(rng) -> SuiteResult:
    dev = 0.0
    samples = _engine_region_samples(rng, 500)
    for p, spec, tp in samples:
        rep = qubit.dephased_closed(tp, p.nu1, p.nu2, p.beta)
        r_w = rep.avg_w / math.sqrt(rep.var_w.real)
        r_qm = rep.avg_qm / math.sqrt(rep.var_qm.real)
        dev = max(dev, r_w - r_qm, r_qm - 1.0)
    # saturation point: yz-plane measurement, adiabatic, zero temperature
    sat = replace(QubitParams(nu1=1.0, nu2=2.0, beta=math.inf, delta=0.0),
                  chi=math.pi / 2, alpha=0.7)
    tp = transition_probs(build_qubit_spec(sat))
    rep = qubit.dephased_closed(tp, 1.0, 2.0, math.inf)
    dev = max(dev, abs(rep.avg_w / math.sqrt(rep.var_w.real) - 1.0))
    return _result("qubit-theorem1", dev, 1e-10,
                   f"{len(samples)} engine-region points + saturation")


def suite_eq41_chain(rng) -> SuiteResult:
    dev = 0.0
    samples = _engine_region_samples(rng, 300)
    for p, spec, tp in samples:
        rep = qubit.dephased_closed(tp, p.nu1, p.nu2, p.beta)
        rf_w = rep.var_w.real / rep.avg_w ** 2
        rf_qm = rep.var_qm.real / rep.avg_qm ** 2
        rf_qc = rep.var_qc / rep.avg_qc ** 2
        dev = max(dev, rf_qm - rf_w, rf_qc - rf_qm)
        if not math.isinf(rep.avg_sigma) and rep.avg_sigma > 1e-12:
            dev = max(dev, (2.0 / rep.avg_sigma - 1.0) - rf_qc)
    return _result("qubit-eq41-chain", dev, 1e-10,
                   f"{len(samples)} engine-region points")


def suite_appc_refinement(rng) -> SuiteResult:
    dev = 0.0
    n = 0
    for _ in range(200):
        p = random_qubit_params(rng, betas=(0.3, 0.6, 1.0, 5.0))
        spec = build_qubit_spec(p)
        for mode in Mode:
            b = qubit.bounds_report(spec, mode)
            if b.rf_qc is None or b.appc_bound is None:
                continue
            n += 1
            dev = max(dev, b.appc_bound - b.rf_qc)
    return _result("qubit-appc-refinement", dev, 1e-10,
                   f"{n} finite-beta points, both modes")


def suite_theorem2(rng) -> SuiteResult:
    dev_sign = dev_gth = 0.0
    samples = []
    attempts = 0
    while len(samples) < 500 and attempts < 20000:
        attempts += 1
        p = replace(random_qubit_params(
            rng, betas=(0.3, 0.6, 1.0, 5.0, math.inf)), phi=0.0)
        spec = build_qubit_spec(p)
        rep = engine.cumulant_report(spec, Mode.UNDEPHASED)
        if rep.regime is engine.Regime.ENGINE:
            samples.append((spec, rep))
    for spec, rep in samples:
        gap = rep.var_qm.real - rep.var_w.real
        dev_sign = max(dev_sign, -gap)
        closed = qubit.bounds_report(spec, Mode.UNDEPHASED).thm2_gap
        dev_gth = max(dev_gth, abs(closed - gap))
    return _result("qubit-theorem2-gth", max(dev_sign, dev_gth), 1e-10,
                   f"{len(samples)} engine-region points, V=U-dagger")


def suite_appendix_f(rng) -> SuiteResult:
    dev = 0.0
    sign_bad = 0
    n = 0
    for _ in range(400):
        p = replace(random_qubit_params(
            rng, betas=(0.3, 0.6, 1.0, 5.0)), phi=0.0)
        spec = build_qubit_spec(p)
        rep = engine.cumulant_report(spec, Mode.UNDEPHASED)
        if min(abs(rep.avg_w), abs(rep.avg_qm), abs(rep.avg_qc)) < 0.05:
            continue
        n += 1
        b = qubit.bounds_report(spec, Mode.UNDEPHASED)
        enum_qm = b.rf_w - b.rf_qm
        enum_qc = b.rf_w - b.rf_qc
        dev = max(dev, abs(b.rf_gap_w_qm - enum_qm),
                  abs(b.rf_gap_w_qc - enum_qc))
        if rep.avg_qm + rep.avg_w >= 0 and abs(enum_qm) > 1e-10 \
                and abs(enum_qc) > 1e-10:
            same = (enum_qm > 0) == (enum_qc > 0)
            kd_side = (b.kd_discriminant > 0) == (enum_qm > 0)
            if not (same and (kd_side or abs(b.kd_discriminant) <= 1e-10)):
                sign_bad += 1
    dev = max(dev, float(sign_bad))
    return _result("qubit-appendix-f", dev, 1e-9,
                   f"{n} points with healthy denominators")


def suite_pmol(rng) -> SuiteResult:
    dev_kd = dev_rf = dev_rel = 0.0
    n = 0
    for delta in np.linspace(0.05, 0.95, 7):
        for alpha in (0.3, 0.9, 1.6, 2.3, 2.9):
            for beta in (0.6, 2.0, 10.0):
                p = QubitParams(nu1=1.0, nu2=2.0, beta=beta,
                                delta=float(delta), phi=0.0,
                                alpha=float(alpha), chi=0.0)
                spec = build_qubit_spec(p)
                b = qubit.bounds_report(spec, Mode.UNDEPHASED)
                dev_kd = max(dev_kd, abs(b.kd_discriminant))
                if b.r_w is not None:
                    dev_rel = max(dev_rel, b.r_w - 1.0)
                rep = engine.cumulant_report(spec, Mode.UNDEPHASED)
                if min(abs(rep.avg_w), abs(rep.avg_qm),
                       abs(rep.avg_qc)) < 0.05:
                    continue
                n += 1
                dev_rf = max(dev_rf, abs(b.rf_w - b.rf_qm),
                             abs(b.rf_w - b.rf_qc))
    dev = max(dev_kd, dev_rel, dev_rf)
    return _result("qubit-pmol-phi-chi-zero", dev, 1e-9,
                   f"{n} points with all three RFs defined")


def suite_phi_invariance(rng) -> SuiteResult:
    dev = 0.0
    for _ in range(8):
        base = random_qubit_params(rng, betas=(0.0, 0.6, 2.0, math.inf))
        reports = []
        for phi in (0.0, math.pi / 5, math.pi / 2, 1.1 * math.pi):
            spec = build_qubit_spec(replace(base, phi=phi))
            reports.append(engine.cumulant_report(spec, Mode.DEPHASED))
        for other in reports[1:]:
            dev = max(dev, report_deviation(reports[0], other))
    return _result("qubit-dephased-phi-invariance", dev, 1e-12, "8x4 grid")


def suite_channel_symmetry(rng) -> SuiteResult:
    dev = 0.0
    for _ in range(10):
        p = random_qubit_params(rng)
        q = replace(p, alpha=math.pi - p.alpha,
                    chi=(p.chi + math.pi) % (2.0 * math.pi))
        for mode in Mode:
            dev = max(dev, report_deviation(
                engine.cumulant_report(build_qubit_spec(p), mode),
                engine.cumulant_report(build_qubit_spec(q), mode)))
    return _result("qubit-channel-symmetry", dev, 1e-10,
                   "10 (alpha,chi) -> (pi-alpha, chi+pi) pairs")


def suite_delta0_agreement(rng) -> SuiteResult:
    dev = 0.0
    for _ in range(30):
        p = replace(random_qubit_params(rng), delta=0.0)
        spec = build_qubit_spec(p)
        dev = max(dev, report_deviation(
            engine.cumulant_report(spec, Mode.DEPHASED),
            engine.cumulant_report(spec, Mode.UNDEPHASED)))
    return _result("qubit-delta0-mode-agreement", dev, 1e-10,
                   "30 (alpha, chi, phi, beta) points")


def suite_otto_ceiling(rng) -> SuiteResult:
    dev = 0.0
    samples = _engine_region_samples(rng, 300)
    for p, spec, tp in samples:
        rep = qubit.dephased_closed(tp, p.nu1, p.nu2, p.beta)
        if rep.efficiency is not None:
            dev = max(dev, rep.efficiency - (1.0 - p.nu1 / p.nu2))
    return _result("qubit-otto-ceiling", dev, 1e-10,
                   f"{len(samples)} dephased engine-region points")


def suite_monotonicity(rng) -> SuiteResult:
    grid = np.linspace(0.0, 0.49, 25)
    dev = 0.0
    for theta in (0.1, 0.2, 0.3, 0.4, 0.5):
        alpha = math.acos(math.sqrt(2.0 * theta))
        w, eta, rel, var = [], [], [], []
        for dp in grid:
            p = QubitParams(nu1=1.0, nu2=2.0, beta=0.6, delta=float(dp),
                            phi=0.0, alpha=alpha, chi=0.0)
            tp = transition_probs(build_qubit_spec(p))
            rep = qubit.dephased_closed(tp, 1.0, 2.0, 0.6)
            w.append(rep.avg_w)
            eta.append(rep.efficiency)
            rel.append(rep.avg_w / math.sqrt(rep.var_w.real))
            var.append(rep.var_w.real)
        for series, sign in ((w, -1), (eta, -1), (rel, -1), (var, +1)):
            steps = sign * np.diff(np.asarray(series, dtype=float))
            dev = max(dev, float(-(steps.min())))
    return _result("qubit-fig3-monotonicity", dev, 0.0,
                   "5 theta values x 25 delta-prime points, strict")


def suite_rf_ordering_statistic(rng) -> SuiteResult:
    # conjectured for the time-reversal-symmetric cycle (phi = 0):
    # rf_w >= rf_qm >= rf_qc; logged with a violation counter, never asserted
    violations = 0
    kd_negative = 0
    n = 0
    for _ in range(300):
        p = replace(random_qubit_params(rng, betas=(0.3, 0.6, 1.0, 5.0)),
                    phi=0.0)
        spec = build_qubit_spec(p)
        rep = engine.cumulant_report(spec, Mode.UNDEPHASED)
        if rep.regime is not engine.Regime.ENGINE:
            continue
        b = qubit.bounds_report(spec, Mode.UNDEPHASED)
        if None in (b.rf_w, b.rf_qm, b.rf_qc):
            continue
        n += 1
        slack = 1e-9 * max(1.0, abs(b.rf_w), abs(b.rf_qm), abs(b.rf_qc))
        if b.rf_w < b.rf_qm - slack or b.rf_qm < b.rf_qc - slack:
            violations += 1
        if b.kd_discriminant < -1e-12:
            kd_negative += 1
    return SuiteResult("qubit-rf-ordering-conjecture", True, 0.0,
                       f"violations {violations}/{n}, kd<0 on {kd_negative} "
                       "(statistic, not a test)")


# ---------------------------------------------------------------------------
# cli suites


def suite_csv_determinism(rng) -> SuiteResult:
    from .config import build_run_config
    cfg = build_run_config({
        "nu1": 1.0, "nu2": 2.0, "beta": 0.8, "delta": 0.0, "phi": 0.3,
        "alpha": 0.0, "chi": 0.0, "mode": "both",
        "sweep.axis1.name": "delta", "sweep.axis1.from": 0.0,
        "sweep.axis1.to": 0.9, "sweep.axis1.steps": 7,
        "sweep.axis2.name": "alpha", "sweep.axis2.from": 0.0,
        "sweep.axis2.to": "pi", "sweep.axis2.steps": 4})
    texts = [runs.render_csv(*runs.sweep_table(cfg)) for _ in range(2)]
    same = texts[0] == texts[1]
    return SuiteResult("cli-csv-determinism", same, 0.0 if same else 1.0,
                       "repeated sweep byte comparison")


def suite_golden_figures(rng) -> SuiteResult:
    dev = 0.0
    for name in figures.FIGURES:
        cfg = figures.figure_config(name)
        text = runs.render_csv(*runs.sweep_table(cfg))
        dev = max(dev, figures.csv_max_deviation(text, figures.golden_csv(name)))
    return _result("cli-golden-figures", dev, 1e-9, "fig3..fig6 regenerated")


# ---------------------------------------------------------------------------


def run_all(seed: int = 0, inject_nonunital: bool = False,
            with_golden: bool = True) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    results = [
        suite_eigensystem(rng),
        suite_channels(rng, inject_nonunital=inject_nonunital),
        suite_projective_grid(rng),
    ]
    results += engine_suites(rng)
    results += [
        suite_mode_agreement(rng),
        suite_cf_crosscheck(rng),
        suite_oracle_equivalence(rng),
        suite_delta_prime(rng),
        suite_time_reversal_identities(rng),
        suite_theorem1(rng),
        suite_eq41_chain(rng),
        suite_appc_refinement(rng),
        suite_theorem2(rng),
        suite_appendix_f(rng),
        suite_pmol(rng),
        suite_phi_invariance(rng),
        suite_channel_symmetry(rng),
        suite_delta0_agreement(rng),
        suite_otto_ceiling(rng),
        suite_monotonicity(rng),
        suite_rf_ordering_statistic(rng),
        suite_csv_determinism(rng),
    ]
    if with_golden:
        results.append(suite_golden_figures(rng))
    return results
