"""Finite-dimensional operator constructions for the enclosure machinery.

Everything here works on dense complex matrices: block operator matrices
with Hermitian diagonal and antisymmetrically coupled off-diagonal blocks,
resolvent-factor norms, minimal relative bounds, and the spectral
projections / renormalized inner product attached to a diagonalizable
operator with signature-definite symmetrization.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlockOperator",
    "KreinPerturbationProblem",
    "ProjectionData",
    "assemble_block",
    "block_signature",
    "resolvent_factor_norm",
    "resolvent_norm",
    "k_set_membership",
    "min_relative_bound",
    "spectral_projections",
    "j0_quadrature",
    "renorm_check",
]

_HERM_TOL = 1e-12


def _as_matrix(x, name: str) -> np.ndarray:
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _require_hermitian(m: np.ndarray, name: str, tol: float = _HERM_TOL):
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    scale = max(np.linalg.norm(m, 2), 1e-300)
    defect = np.linalg.norm(m - m.conj().T, 2)
    if defect > tol * scale:
        raise ValueError(f"{name} is not Hermitian: defect {defect:.3e} "
                         f"exceeds {tol:.1e} * norm")


@dataclass(frozen=True)
class BlockOperator:
    """The 2x2 operator matrix [[S+, M], [-M*, S-]] with Hermitian S+ and S-.

    With J = diag(I, -I) the product J S is Hermitian, so S is self-adjoint
    for the indefinite inner product (Jf, g).
    """

    s_plus: np.ndarray
    s_minus: np.ndarray
    coupling: np.ndarray  # maps the minus component into the plus component

    def __post_init__(self):
        sp = _as_matrix(self.s_plus, "s_plus")
        sm = _as_matrix(self.s_minus, "s_minus")
        m = _as_matrix(self.coupling, "coupling")
        _require_hermitian(sp, "s_plus")
        _require_hermitian(sm, "s_minus")
        if m.shape != (sp.shape[0], sm.shape[0]):
            raise ValueError(
                f"coupling shape {m.shape} incompatible with diagonal blocks "
                f"{sp.shape[0]}x{sp.shape[0]} and {sm.shape[0]}x{sm.shape[0]}")
        object.__setattr__(self, "s_plus", sp)
        object.__setattr__(self, "s_minus", sm)
        object.__setattr__(self, "coupling", m)

    @property
    def dims(self) -> tuple:
        return (self.s_plus.shape[0], self.s_minus.shape[0])


def assemble_block(block: BlockOperator) -> np.ndarray:
    """Dense (n+ + n-)^2 matrix [[S+, M], [-M*, S-]]."""
    m = block.coupling
    return np.block([[block.s_plus, m], [-m.conj().T, block.s_minus]])


def block_signature(block: BlockOperator) -> np.ndarray:
    """Signature vector (+1 on the plus block, -1 on the minus block)."""
    np_, nm = block.dims
    return np.concatenate([np.ones(np_), -np.ones(nm)])


def resolvent_factor_norm(t_op, s_op, lam: complex) -> float:
    """Largest singular value of T (S - lam)^{-1} for Hermitian S.

    Rejects lam closer than 1e-12 * norm(S) to the spectrum of S.
    """
    t_op = _as_matrix(t_op, "T")
    s_op = _as_matrix(s_op, "S")
    _require_hermitian(s_op, "S")
    lam = complex(lam)
    evals = np.linalg.eigvalsh(s_op)
    scale = max(np.max(np.abs(evals)), 1.0)
    if np.min(np.abs(evals - lam)) <= 1e-12 * scale:
        raise ValueError(f"lambda = {lam} is in (or too close to) the spectrum of S")
    x = np.linalg.solve((s_op - lam * np.eye(s_op.shape[0])).conj().T,
                        t_op.conj().T).conj().T
    return float(np.linalg.norm(x, 2))


def resolvent_norm(a_op, lam: complex) -> float:
    """norm of (A - lam)^{-1} = 1 / sigma_min(A - lam), for any square A."""
    a_op = _as_matrix(a_op, "A")
    shifted = a_op - complex(lam) * np.eye(a_op.shape[0])
    smin = np.linalg.svd(shifted, compute_uv=False)[-1]
    if smin == 0.0:
        raise ValueError(f"lambda = {lam} is an eigenvalue")
    return float(1.0 / smin)


def k_set_membership(t_op, s_op, lam: complex) -> bool:
    """Whether norm(T (S - lam)^{-1}) >= 1, up to a 1e-10 decision slack."""
    return resolvent_factor_norm(t_op, s_op, lam) >= 1.0 - 1e-10


def min_relative_bound(t_op, s_op, b: float) -> float:
    """Least a with norm(Tf)^2 <= a norm(f)^2 + b norm(Sf)^2 for all f.

    Equals max(0, largest eigenvalue of T*T - b S*S).
    """
    if not 0.0 <= b < 1.0:
        raise ValueError(f"b in [0, 1) required, got {b}")
    t_op = _as_matrix(t_op, "T")
    s_op = _as_matrix(s_op, "S")
    if t_op.shape[1] != s_op.shape[1]:
        raise ValueError("T and S must act on the same space")
    gram = t_op.conj().T @ t_op - b * (s_op.conj().T @ s_op)
    return float(max(0.0, np.linalg.eigvalsh(gram)[-1]))


@dataclass(frozen=True)
class KreinPerturbationProblem:
    """Signature J (diagonal +-1), A0 with J A0 Hermitian positive definite,
    and a perturbation V with J V Hermitian.

    Positive definiteness of J A0 encodes nonnegativity in the indefinite
    inner product together with the absence of a kernel.
    """

    signature: np.ndarray
    a0: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        sig = np.asarray(self.signature, dtype=float).ravel()
        if not np.all(np.isin(sig, (-1.0, 1.0))):
            raise ValueError("signature entries must be +1 or -1")
        a0 = _as_matrix(self.a0, "A0")
        v = _as_matrix(self.v, "V")
        n = sig.size
        if a0.shape != (n, n) or v.shape != (n, n):
            raise ValueError("A0 and V must be square with the signature's size")
        p = sig[:, None] * a0
        _require_hermitian(p, "J @ A0")
        pe = np.linalg.eigvalsh(p)
        scale = max(abs(pe[0]), abs(pe[-1]), 1e-300)
        if pe[0] <= 1e-10 * scale:
            raise ValueError(
                f"J @ A0 must be positive definite; smallest eigenvalue {pe[0]:.3e}")
        _require_hermitian(sig[:, None] * v, "J @ V")
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.signature.size

    @property
    def j_matrix(self) -> np.ndarray:
        return np.diag(self.signature).astype(complex)

    @property
    def jv_lower_bound(self) -> float:
        """Smallest eigenvalue of the Hermitian matrix J V."""
        return float(np.linalg.eigvalsh(self.signature[:, None] * self.v)[0])


@dataclass(frozen=True)
class ProjectionData:
    """Spectral projections of a signature-definite operator and the
    involution J0 = E+ - E- they generate."""

    e_plus: np.ndarray
    e_minus: np.ndarray
    j0: np.ndarray
    tau0: float
    signature: np.ndarray


def spectral_projections(problem: KreinPerturbationProblem) -> ProjectionData:
    """Diagonalize A0 = J P through the Hermitian congruence P^{1/2} J P^{1/2}.

    The congruence has the same inertia as J, so A0 has a real nonzero
    spectrum split by sign; E+ and E- project onto the positive and negative
    invariant subspaces, J0 = E+ - E- is an involution and tau0 = norm(J0).
    """
    sig = problem.signature
    p = sig[:, None] * problem.a0
    p = 0.5 * (p + p.conj().T)
    pe, pu = np.linalg.eigh(p)
    scale = max(abs(pe[-1]), 1e-300)
    if pe[0] <= 1e-10 * scale:
        raise ValueError("J @ A0 not positive definite")
    sqrt_p = (pu * np.sqrt(pe)) @ pu.conj().T
    inv_sqrt_p = (pu / np.sqrt(pe)) @ pu.conj().T
    h = sqrt_p @ np.diag(sig) @ sqrt_p
    h = 0.5 * (h + h.conj().T)
    d, u = np.linalg.eigh(h)
    if np.min(np.abs(d)) <= 1e-10 * max(np.max(np.abs(d)), 1e-300):
        raise ValueError("A0 has an eigenvalue too close to zero")
    w = inv_sqrt_p @ u           # eigenvectors of A0 (columns)
    w_inv = u.conj().T @ sqrt_p  # rows are left eigenvectors
    pos = (d > 0).astype(float)
    e_plus = (w * pos) @ w_inv
    e_minus = (w * (1.0 - pos)) @ w_inv
    j0 = (w * np.sign(d)) @ w_inv
    tau0 = float(np.linalg.norm(j0, 2))
    return ProjectionData(e_plus=e_plus, e_minus=e_minus, j0=j0, tau0=tau0,
                          signature=sig)


def j0_quadrature(a0, upper: float | None = None, tol: float = 1e-6,
                  max_doublings: int = 6) -> np.ndarray:
    """Truncated resolvent integral (1/pi) int_0^T ((A0+it)^-1 + (A0-it)^-1) dt.

    Geometric Gauss-Legendre panels between a scale-derived lower edge and
    T = 1e6 * norm(A0) by default; node counts double until the matrix
    stabilizes entrywise below tol/10.
    """
    a0 = _as_matrix(a0, "A0")
    n = a0.shape[0]
    norm = max(np.linalg.norm(a0, 2), 1e-300)
    if upper is None:
        upper = 1e6 * norm
    smin = np.linalg.svd(a0, compute_uv=False)[-1]
    if smin <= 0.0:
        raise ValueError("A0 must be invertible")
    edges = [0.0, min(smin, upper)]
    while edges[-1] < upper:
        edges.append(min(edges[-1] * 2.0, upper))
    eye = np.eye(n)

    def integral(nodes_per_panel: int) -> np.ndarray:
        xs, ws = np.polynomial.legendre.leggauss(nodes_per_panel)
        acc = np.zeros((n, n), dtype=complex)
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            for xk, wk in zip(xs, ws):
                t = mid + half * xk
                acc += (wk * half) * (np.linalg.inv(a0 - 1j * t * eye)
                                      + np.linalg.inv(a0 + 1j * t * eye))
        return acc / math.pi

    nodes = 8
    prev = integral(nodes)
    for _ in range(max_doublings):
        nodes *= 2
        cur = integral(nodes)
        if np.max(np.abs(cur - prev)) < 0.1 * tol:
            return cur
        prev = cur
    raise ArithmeticError("resolvent quadrature did not stabilize")


def renorm_check(data: ProjectionData, trials: int = 100,
                 rng: np.random.Generator | None = None,
                 slack: float = 1e-8) -> bool:
    """Check the renormalization inequalities on random vectors and matrices.

    With the scalar product (f, g)_0 = (J J0 f, g) (its Gram matrix must be
    positive definite) the inequalities are

        norm_0(T) <= tau0 * norm(T),
        tau0^{-1} norm(f)^2 <= norm_0(f)^2 <= tau0 * norm(f)^2,
        norm_0(E+- f)^2 <= (1 + tau0)/2 * norm(f)^2,
        norm(E+- f)^2 <= (1 + tau0)/2 * norm_0(f)^2.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    gram = data.signature[:, None] * data.j0
    gram = 0.5 * (gram + gram.conj().T)
    ge, gu = np.linalg.eigh(gram)
    if ge[0] <= 0.0:
        raise ValueError("Gram matrix J @ J0 is not positive definite; "
                         "projection data is inconsistent")
    g_half = (gu * np.sqrt(ge)) @ gu.conj().T
    g_half_inv = (gu / np.sqrt(ge)) @ gu.conj().T
    n = gram.shape[0]
    tau0 = data.tau0
    cap = (1.0 + tau0) / 2.0

    def norm0_sq(f):
        return float(np.real(f.conj() @ (gram @ f)))

    for _ in range(trials):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nf = float(np.real(f.conj() @ f))
        n0 = norm0_sq(f)
        if n0 > tau0 * nf * (1.0 + slack) or n0 < nf / tau0 * (1.0 - slack):
            return False
        for proj in (data.e_plus, data.e_minus):
            pf = proj @ f
            if norm0_sq(pf) > cap * nf * (1.0 + slack):
                return False
            if float(np.real(pf.conj() @ pf)) > cap * n0 * (1.0 + slack):
                return False
        t = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        norm0_t = np.linalg.norm(g_half @ t @ g_half_inv, 2)
        if norm0_t > tau0 * np.linalg.norm(t, 2) * (1.0 + slack):
            return False
    return True
