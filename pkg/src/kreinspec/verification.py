"""Numerical verification harnesses for the enclosure statements.

Each harness builds (or receives) a finite-dimensional instance, computes
its spectrum, and checks the advertised containments, sign types, and
resolvent bounds, collecting any violation into a ``VerificationReport``.
The statements under test are theorems, so a non-empty failure list
signals an implementation or tolerance bug, never "an unlucky instance".
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .geometry import DiskFamilyRegion, RelBound, SpectrumModel, \
    disk_region_membership, region_to_json, smallerb_threshold, tmain_regions
from .operators import BlockOperator, KreinPerturbationProblem, assemble_block, \
    block_signature, min_relative_bound, resolvent_norm, spectral_projections

__all__ = [
    "HypothesisUnmetError",
    "VerificationReport",
    "EigenRecord",
    "fit_relative_bound",
    "region_area",
    "random_block_operator",
    "random_krein_problem",
    "verify_block_theorem",
    "verify_tmain",
    "resolvent_order_check",
    "trial_seeds",
]

DEFAULT_B_GRID = tuple(round(0.01 * k, 2) for k in range(100))


class HypothesisUnmetError(ValueError):
    """An instance fails the hypotheses of the statement under test (this is
    a rejection, not a verification failure)."""


@dataclass
class EigenRecord:
    value: complex
    contained: bool
    margin: float
    kind: str  # "nonreal" | "real"
    sign: float | None = None  # (Jf, f)/norm^2 when a sign test ran


@dataclass
class VerificationReport:
    """Outcome of one verification run; ``verified`` iff no failure list
    has entries.  Counts and margins summarize what was actually checked."""

    instance: dict
    bounds: dict
    eigenvalues: list
    nonreal_count: int = 0
    containment_failures: list = field(default_factory=list)
    resolvent_check_failures: list = field(default_factory=list)
    sign_type_failures: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return not (self.containment_failures or self.resolvent_check_failures
                    or self.sign_type_failures)

    def margin_summary(self) -> dict:
        ms = [r.margin for r in self.eigenvalues if r.kind == "nonreal"]
        if not ms:
            return {"count": 0}
        return {"count": len(ms), "min": min(ms), "max": max(ms),
                "mean": sum(ms) / len(ms)}

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "bounds": self.bounds,
            "eigenvalues": [
                {"re": r.value.real, "im": r.value.imag, "kind": r.kind,
                 "contained": r.contained, "margin": r.margin, "sign": r.sign}
                for r in self.eigenvalues
            ],
            "checks": dict(self.checks,
                           nonrealCount=self.nonreal_count,
                           containmentFailures=self.containment_failures,
                           resolventCheckFailures=self.resolvent_check_failures,
                           signTypeFailures=self.sign_type_failures,
                           indeterminate=self.indeterminate,
                           margins=self.margin_summary()),
            "verified": self.verified,
        }


def trial_seeds(root_seed: int, trials: int) -> list:
    """Deterministic per-trial seed schedule derived from one root seed."""
    return [int(s.generate_state(1)[0])
            for s in np.random.SeedSequence(root_seed).spawn(trials)]


def fit_relative_bound(t_op, s_op, b_grid=DEFAULT_B_GRID) -> list:
    """The curve b -> least admissible a over a grid of b values."""
    return [(b, min_relative_bound(t_op, s_op, b)) for b in b_grid]


def region_area(region: DiskFamilyRegion, nodes: int = 257) -> float:
    """Area of a bounded disk-family region.

    The height of the region above abscissa x is available in closed form
    (the defining polynomial is quadratic in the center), so the area is a
    single 1-D quadrature of that height profile.
    """
    if not region.centers.bounded:
        return math.inf
    a, b = region.bound.a, region.bound.b
    rho = region.radius_scale
    xmin, xmax = region.real_extent

    def height(x):
        best = np.zeros_like(x)
        for p in region.centers.points:
            best = np.maximum(best, rho * (a + b * p * p) - (x - p) ** 2)
        for lo, hi in region.centers.intervals:
            lead = 1.0 - rho * b
            tc = x / lead if lead > 0 else np.full_like(x, hi)
            tc = np.clip(tc, lo, hi)
            best = np.maximum(best, rho * (a + b * tc * tc) - (x - tc) ** 2)
            if lead <= 0:
                best = np.maximum(best, rho * (a + b * lo * lo) - (x - lo) ** 2)
        return np.sqrt(np.maximum(best, 0.0))

    xs, ws = _leggauss_cached(nodes)
    mid, half = 0.5 * (xmax + xmin), 0.5 * (xmax - xmin)
    return float(2.0 * half * np.sum(ws * height(mid + half * xs)))


@lru_cache(maxsize=16)
def _leggauss_cached(nodes: int) -> tuple:
    return np.polynomial.legendre.leggauss(nodes)


def random_block_operator(seed: int, max_dim: int = 20,
                          spectrum_scale: float = 10.0,
                          coupling_scale: float | None = None) -> BlockOperator:
    """Random diagonally coupled instance with Hermitian diagonal blocks.

    Diagonal blocks get uniform spectra inside [-spectrum_scale, spectrum_scale]
    (random sub-windows, so bounded-above/below cases all occur) and a dense
    complex coupling block with norm on the order of the diagonal scale.
    """
    rng = np.random.default_rng(seed)
    total = int(rng.integers(2, max_dim + 1))
    n_plus = int(rng.integers(1, total))
    n_minus = total - n_plus

    def hermitian_with_spectrum(n):
        lo = rng.uniform(-spectrum_scale, spectrum_scale)
        hi = rng.uniform(lo, spectrum_scale)
        d = rng.uniform(lo, hi, size=n)
        q, _ = np.linalg.qr(rng.standard_normal((n, n))
                            + 1j * rng.standard_normal((n, n)))
        return (q * d) @ q.conj().T

    sp = hermitian_with_spectrum(n_plus)
    sm = hermitian_with_spectrum(n_minus)
    if coupling_scale is None:
        coupling_scale = rng.uniform(0.1, 0.5) * (spectrum_scale + 1.0)
    m = rng.standard_normal((n_plus, n_minus)) + 1j * rng.standard_normal((n_plus, n_minus))
    m *= coupling_scale / max(np.linalg.norm(m, 2), 1e-300)
    return BlockOperator(s_plus=0.5 * (sp + sp.conj().T),
                         s_minus=0.5 * (sm + sm.conj().T), coupling=m)


def random_krein_problem(seed: int, max_dim: int = 20,
                         strength: float | None = None,
                         definite_fraction: float = 0.25) -> KreinPerturbationProblem:
    """Random signature, A0 = J P with P Hermitian positive definite, and a
    J-symmetric V; a ``definite_fraction`` of draws make J V positive
    semi-definite to exercise the real-spectrum branch."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_dim + 1))
    sig = np.ones(n)
    sig[: int(rng.integers(1, n))] = -1.0
    rng.shuffle(sig)

    def hermitian(scale):
        w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        w = 0.5 * (w + w.conj().T)
        return w * (scale / max(np.linalg.norm(w, 2), 1e-300))

    pe = rng.uniform(0.5, 3.0, size=n)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    p = (q * pe) @ q.conj().T
    p = 0.5 * (p + p.conj().T)
    if strength is None:
        strength = rng.uniform(0.05, 1.0)
    w = hermitian(strength * float(np.max(pe)))
    if rng.uniform() < definite_fraction:
        we = np.linalg.eigvalsh(w)
        w = w + (abs(we[0]) + 1e-3) * np.eye(n)
    return KreinPerturbationProblem(signature=sig, a0=sig[:, None] * p,
                                    v=sig[:, None] * w)


def _classify_eigenvalues(matrix, nonreal_tol: float = 1e-8):
    """Eigenpairs plus a non-real flag scaled by the eigenbasis conditioning."""
    evals, evecs = np.linalg.eig(matrix)
    try:
        kappa = min(float(np.linalg.cond(evecs)), 1e8)
    except np.linalg.LinAlgError:
        kappa = 1e8
    flags = np.abs(evals.imag) > nonreal_tol * (1.0 + np.abs(evals)) * kappa
    return evals, evecs, flags, kappa


def _select_pair(curve, center_sq_max: float) -> tuple:
    """Pick the (b, a) pair minimizing the largest squared disk radius."""
    return min(curve, key=lambda ba: ba[1] + ba[0] * center_sq_max)


def verify_block_theorem(block: BlockOperator, lambda_samples: int = 1000,
                         seed: int = 0, b_grid=DEFAULT_B_GRID,
                         nonreal_tol: float = 1e-8,
                         sign_tol: float = 1e-6) -> VerificationReport:
    """Check the block-matrix enclosure on one instance.

    Verified statements: every non-real eigenvalue lies where both resolvent
    factors have norm >= 1 and inside the intersection of the two fitted
    disk-family regions; real eigenvalues away from the minus-block spectrum
    with factor norm < 1 have positive sign (Jf, f) (negative for the plus
    side); and at sampled non-real lam with factor norm nu < 1 the full
    resolvent obeys norm((S-lam)^{-1}) <= (1 + nu + nu^2)/(|Im lam| (1 - nu^2)).
    """
    rng = np.random.default_rng(seed)
    full = assemble_block(block)
    j_sig = block_signature(block)
    d_plus, u_plus = np.linalg.eigh(block.s_plus)
    d_minus, u_minus = np.linalg.eigh(block.s_minus)
    m = block.coupling
    scale = max(np.linalg.norm(full, 2), 1.0)

    curve_minus = fit_relative_bound(m, block.s_minus, b_grid)
    curve_plus = fit_relative_bound(m.conj().T, block.s_plus, b_grid)
    b_minus, a_minus = _select_pair(curve_minus, float(np.max(d_minus**2)))
    b_plus, a_plus = _select_pair(curve_plus, float(np.max(d_plus**2)))

    region_minus = DiskFamilyRegion(RelBound(a_minus, b_minus),
                                    SpectrumModel.from_points(d_minus))
    region_plus = DiskFamilyRegion(RelBound(a_plus, b_plus),
                                   SpectrumModel.from_points(d_plus))

    # column-transformed couplings: norm(M (S- - lam)^{-1}) via scaled svd
    m_minus = m @ u_minus
    m_plus = m.conj().T @ u_plus

    def factor_norm_minus(lam):
        return float(np.linalg.norm(m_minus / (d_minus - lam), 2))

    def factor_norm_plus(lam):
        return float(np.linalg.norm(m_plus / (d_plus - lam), 2))

    evals, evecs, nonreal, kappa = _classify_eigenvalues(full, nonreal_tol)
    gaps = np.abs(evals[:, None] - evals[None, :]) + np.diag(np.full(len(evals), np.inf))
    min_gap = gaps.min(axis=1)

    report = VerificationReport(
        instance={"dims": list(block.dims), "seed": seed,
                  "norms": {"s_plus": float(np.linalg.norm(block.s_plus, 2)),
                            "s_minus": float(np.linalg.norm(block.s_minus, 2)),
                            "coupling": float(np.linalg.norm(m, 2))},
                  "eig_condition": kappa},
        bounds={"a_minus": a_minus, "b_minus": b_minus,
                "a_plus": a_plus, "b_plus": b_plus},
        eigenvalues=[],
    )

    sign_tested = 0
    for idx, lam in enumerate(evals):
        lam = complex(lam)
        if nonreal[idx]:
            report.nonreal_count += 1
            near_minus = float(np.min(np.abs(d_minus - lam))) <= 1e-8 * scale
            near_plus = float(np.min(np.abs(d_plus - lam))) <= 1e-8 * scale
            in_k_minus = near_minus or factor_norm_minus(lam) >= 1.0 - 1e-10
            in_k_plus = near_plus or factor_norm_plus(lam) >= 1.0 - 1e-10
            mem_minus = disk_region_membership(region_minus, lam)
            mem_plus = disk_region_membership(region_plus, lam)
            margin = max(mem_minus.margin, mem_plus.margin)
            # slack absorbs the eigensolver's own error at tangency cases
            # (e.g. 1x1 blocks put non-real eigenvalues exactly on the rim)
            ok = in_k_minus and in_k_plus and margin <= 1e-8 * scale
            report.eigenvalues.append(EigenRecord(lam, ok, margin, "nonreal"))
            if not ok:
                report.containment_failures.append(
                    {"lambda": [lam.real, lam.imag],
                     "k_minus": in_k_minus, "k_plus": in_k_plus,
                     "disks_minus": mem_minus.inside, "disks_plus": mem_plus.inside})
            continue

        lam_r = lam.real
        f = evecs[:, idx]
        sign = float(np.real(f.conj() @ (j_sig * f)) / np.real(f.conj() @ f))
        rec = EigenRecord(lam, True, 0.0, "real", sign=sign)
        report.eigenvalues.append(rec)
        clustered = min_gap[idx] <= 1e-6 * scale
        for (d_side, factor, want_pos) in (
                (d_minus, factor_norm_minus, True),
                (d_plus, factor_norm_plus, False)):
            if float(np.min(np.abs(d_side - lam_r))) <= 1e-8 * scale:
                continue  # inside the side's spectrum: no claim
            if factor(lam_r) >= 1.0 - 1e-10:
                continue  # inside the K set: no claim
            if clustered:
                report.indeterminate.append(
                    {"lambda": lam_r, "reason": "clustered eigenvalue"})
                continue
            sign_tested += 1
            good = sign > sign_tol if want_pos else sign < -sign_tol
            if not good:
                report.sign_type_failures.append(
                    {"lambda": lam_r, "sign": sign,
                     "expected": "positive" if want_pos else "negative"})

    # sampled resolvent bound
    checked = 0
    for _ in range(lambda_samples):
        x = rng.uniform(-2.0 * scale, 2.0 * scale)
        y = rng.uniform(1e-3 * scale, 2.0 * scale) * rng.choice([-1.0, 1.0])
        lam = complex(x, y)
        res = None
        for factor in (factor_norm_minus, factor_norm_plus):
            nu = factor(lam)
            if nu < 1.0 - 1e-9:
                if res is None:
                    res = resolvent_norm(full, lam)
                cap = (1.0 + nu + nu * nu) / (abs(y) * (1.0 - nu * nu))
                checked += 1
                if res > cap * (1.0 + 1e-8) + 1e-12:
                    report.resolvent_check_failures.append(
                        {"lambda": [x, y], "norm": res, "cap": cap})
    report.checks["resolvent"] = {"sampled": lambda_samples, "applicable": checked,
                                  "failures": len(report.resolvent_check_failures)}
    report.checks["signType"] = {"tested": sign_tested,
                                 "failures": len(report.sign_type_failures),
                                 "indeterminate": len(report.indeterminate)}
    return report


def verify_tmain(problem: KreinPerturbationProblem, tau: float | None = None,
                 b_grid=DEFAULT_B_GRID, nonreal_tol: float = 1e-8,
                 sign_tol: float = 1e-6) -> VerificationReport:
    """Check the perturbation enclosure for A0 + V on one instance.

    Fits the scaled relative bound of V against A0 over a grid of b values,
    keeps the pair whose plain region has least area, and verifies: non-real
    eigenvalues of A0 + V lie in the plain region (and in the rescaled one
    when its existence condition b < (tau-1)/(2 tau) holds); when the lower
    bound v of J V is >= 0 the whole spectrum is real; real eigenvalues
    beyond the region's real section carry the advertised sign.
    """
    proj = spectral_projections(problem)
    tau0 = proj.tau0
    tau = tau0 if tau is None else max(float(tau), tau0)
    v_low = problem.jv_lower_bound
    a_full = problem.a0 + problem.v
    scale = max(np.linalg.norm(a_full, 2), 1.0)
    j_sig = problem.signature

    w_op = math.sqrt((1.0 + tau) * tau) * problem.v
    curve = [(b, 0.5 * min_relative_bound(w_op, problem.a0, b)) for b in b_grid]

    report = VerificationReport(
        instance={"dims": [problem.dim],
                  "norms": {"a0": float(np.linalg.norm(problem.a0, 2)),
                            "v": float(np.linalg.norm(problem.v, 2))}},
        bounds={"tau": tau, "tau0": tau0, "v": v_low},
        eigenvalues=[],
    )

    evals, evecs, nonreal, kappa = _classify_eigenvalues(a_full, nonreal_tol)
    report.instance["eig_condition"] = kappa

    if v_low >= 0.0:
        report.bounds.update({"a": None, "b": None, "gamma": None})
        report.checks["branch"] = "jv-nonnegative"
        for lam in evals:
            lam = complex(lam)
            ok = abs(lam.imag) <= nonreal_tol * scale * kappa
            report.eigenvalues.append(
                EigenRecord(lam, ok, abs(lam.imag), "real" if ok else "nonreal"))
            if not ok:
                report.nonreal_count += 1
                report.containment_failures.append(
                    {"lambda": [lam.real, lam.imag],
                     "reason": "nonreal spectrum though J V >= 0"})
        return report

    best = None
    for b, a in curve:
        regions = tmain_regions(a, b, tau, v_low)
        area = region_area(regions["worse"])
        if best is None or area < best[0]:
            best = (area, b, a, regions)
    _, b_sel, a_sel, regions = best
    worse, better, gamma = regions["worse"], regions["better"], regions["gamma"]
    report.bounds.update({"a": a_sel, "b": b_sel, "gamma": gamma})
    report.checks["branch"] = "enclosure"
    report.checks["betterApplies"] = better is not None
    report.checks["fitCurve"] = [[b, a] for b, a in curve]
    report.checks["regions"] = {
        "worse": region_to_json(worse),
        "better": region_to_json(better) if better is not None else None,
    }

    real_section = gamma + math.sqrt(worse.radius_scale
                                     * (a_sel + b_sel * gamma * gamma))
    tight = better if better is not None else worse
    tight_section = gamma + math.sqrt(tight.radius_scale
                                      * (a_sel + b_sel * gamma * gamma))

    gaps = np.abs(evals[:, None] - evals[None, :]) + np.diag(np.full(len(evals), np.inf))
    min_gap = gaps.min(axis=1)

    sign_tested = 0
    for idx, lam in enumerate(evals):
        lam = complex(lam)
        if nonreal[idx]:
            report.nonreal_count += 1
            margin = disk_region_membership(worse, lam).margin
            if better is not None:
                margin = max(margin, disk_region_membership(better, lam).margin)
            ok = margin <= 1e-8 * scale
            report.eigenvalues.append(EigenRecord(lam, ok, margin, "nonreal"))
            if not ok:
                report.containment_failures.append(
                    {"lambda": [lam.real, lam.imag], "margin": margin})
            continue
        f = evecs[:, idx]
        sign = float(np.real(f.conj() @ (j_sig * f)) / np.real(f.conj() @ f))
        report.eigenvalues.append(EigenRecord(lam, True, 0.0, "real", sign=sign))
        if min_gap[idx] <= 1e-6 * scale:
            if abs(lam.real) > tight_section * (1.0 + 1e-6):
                report.indeterminate.append(
                    {"lambda": lam.real, "reason": "clustered eigenvalue"})
            continue
        if lam.real > tight_section * (1.0 + 1e-6) + 1e-9 * scale:
            sign_tested += 1
            if not sign > sign_tol:
                report.sign_type_failures.append(
                    {"lambda": lam.real, "sign": sign, "expected": "positive"})
        elif lam.real < -tight_section * (1.0 + 1e-6) - 1e-9 * scale:
            sign_tested += 1
            if not sign < -sign_tol:
                report.sign_type_failures.append(
                    {"lambda": lam.real, "sign": sign, "expected": "negative"})
    report.checks["realSection"] = real_section
    report.checks["signType"] = {"tested": sign_tested,
                                 "failures": len(report.sign_type_failures),
                                 "indeterminate": len(report.indeterminate)}
    return report


def resolvent_order_check(block: BlockOperator, samples: int = 1000,
                          seed: int = 0, b_grid=None) -> dict:
    """Sample the resolvent beyond the saturation threshold and report.

    Beyond |lam| > gamma + sqrt(gamma^2 + a/b) the factor norms drop below
    sqrt(b) and the resolvent obeys the first-order bound
    norm((S-lam)^{-1}) <= 3 / ((1-b) |Im lam|); elsewhere off the real axis
    the quadratic growth constant M = sup norm * |Im|^2 / (1+|lam|)^2 is
    reported empirically.
    """
    rng = np.random.default_rng(seed)
    full = assemble_block(block)
    d_plus = np.linalg.eigvalsh(block.s_plus)
    d_minus = np.linalg.eigvalsh(block.s_minus)
    gamma = max(float(np.max(d_minus)), float(-np.min(d_plus)), 0.0)
    if b_grid is None:
        b_grid = tuple(round(0.05 * k, 2) for k in range(1, 20))
    m = block.coupling
    best = None
    for b in b_grid:
        a = max(min_relative_bound(m, block.s_minus, b),
                min_relative_bound(m.conj().T, block.s_plus, b))
        thr = smallerb_threshold(RelBound(a, b), gamma)
        if best is None or thr < best[0]:
            best = (thr, a, b)
    thr, a_sel, b_sel = best

    failures = []
    m_growth = 0.0
    for _ in range(samples):
        radius = thr * rng.uniform(1.0 + 1e-9, 4.0)
        theta = rng.uniform(0.05, math.pi - 0.05) * rng.choice([-1.0, 1.0])
        lam = radius * complex(math.cos(theta), math.sin(theta))
        res = resolvent_norm(full, lam)
        cap = 3.0 / ((1.0 - b_sel) * abs(lam.imag))
        if res > cap * (1.0 + 1e-8):
            failures.append({"lambda": [lam.real, lam.imag], "norm": res, "cap": cap})
        inner = rng.uniform(0.1, 1.0) * thr * complex(
            math.cos(theta), math.sin(theta))
        if abs(inner.imag) > 1e-6:
            m_growth = max(m_growth, resolvent_norm(full, inner)
                           * inner.imag**2 / (1.0 + abs(inner)) ** 2)
    return {"threshold": thr, "a": a_sel, "b": b_sel, "gamma": gamma,
            "order1_failures": failures, "growth_constant": m_growth,
            "samples": samples}
