"""Symplectic linear algebra.

The standard structure matrix is ``J = [[0, -I_n], [I_n, 0]]`` and a real
``2n x 2n`` matrix ``M`` is symplectic when ``M.T @ J @ M == J``.  Matrices
are plain ``numpy`` arrays; the helpers here check, build and analyse them.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import RunConfig, resolve
from .errors import ContractError, DimensionError, NumericalConsistencyError, ParameterError

TWO_PI = 2.0 * math.pi


def J(n: int) -> np.ndarray:
    """Standard ``2n x 2n`` structure matrix."""
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = -np.eye(n)
    out[n:, :n] = np.eye(n)
    return out


def half_dim(M) -> int:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] % 2:
        raise DimensionError(f"symplectic matrices have even dimension, got {M.shape[0]}")
    return M.shape[0] // 2


def symplectic_defect(M) -> float:
    M = np.asarray(M, dtype=float)
    Jn = J(half_dim(M))
    return float(np.max(np.abs(M.T @ Jn @ M - Jn)))


def is_symplectic(M, tol: float | None = None) -> bool:
    """True iff ``max|M^T J M - J| <= tol`` (default ``sympl_tol``)."""
    tol = resolve(None).sympl_tol if tol is None else tol
    return symplectic_defect(M) <= tol


def check_symplectic(M, config: RunConfig | None = None, what="matrix") -> np.ndarray:
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    # relative to the entry scale so that long iterates are not rejected
    scale = max(1.0, float(np.max(np.abs(M))) ** 2)
    if symplectic_defect(M) > cfg.sympl_tol * scale:
        raise ContractError(f"{what} is not symplectic (defect {symplectic_defect(M):.3e})")
    return M


def diamond(*mats) -> np.ndarray:
    """Symplectic direct sum in the interleaved block layout.

    Each ``2m_k x 2m_k`` argument is split into ``m_k x m_k`` blocks
    ``[[A_k, B_k], [C_k, D_k]]``; the result carries all ``A`` blocks on the
    upper-left diagonal, all ``B`` blocks upper-right, and so on.
    """
    if not mats:
        raise ParameterError("diamond needs at least one matrix")
    mats = [np.asarray(m, dtype=float) for m in mats]
    dims = [half_dim(m) for m in mats]
    n = sum(dims)
    out = np.zeros((2 * n, 2 * n))
    off = 0
    for m, k in zip(mats, dims):
        sl = slice(off, off + k)
        sh = slice(n + off, n + off + k)
        out[sl, sl] = m[:k, :k]
        out[sl, sh] = m[:k, k:]
        out[sh, sl] = m[k:, :k]
        out[sh, sh] = m[k:, k:]
        off += k
    return out


def diamond_symplectic(*mats, config: RunConfig | None = None) -> np.ndarray:
    """:func:`diamond` with a symplecticity check on every argument."""
    for i, m in enumerate(mats):
        check_symplectic(m, config, what=f"argument {i}")
    return diamond(*mats)


def diamond_power(M, k: int) -> np.ndarray:
    return diamond(*([M] * k))


def undiamond(M, dims) -> list[np.ndarray]:
    """Split an interleaved ⋄-product back into factors of half-dimensions ``dims``."""
    M = np.asarray(M)
    n = half_dim(M)
    if sum(dims) != n:
        raise DimensionError("factor dimensions do not add up")
    out, off = [], 0
    for k in dims:
        idx = np.r_[off:off + k, n + off:n + off + k]
        out.append(M[np.ix_(idx, idx)])
        off += k
    return out


# ---------------------------------------------------------------------------
# angles


def canonical_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta >= TWO_PI - 1e-13:
        theta = 0.0
    return theta


def rational_over_pi(theta: float, config: RunConfig | None = None) -> Fraction | None:
    """Return ``theta/pi`` as an exact fraction if it is one, else ``None``.

    A float is declared rational when a fraction with denominator at most
    ``max_denominator`` lies within ``rational_tol`` of it.
    """
    cfg = resolve(config)
    x = theta / math.pi
    q = Fraction(x).limit_denominator(cfg.max_denominator)
    if abs(x - float(q)) <= cfg.rational_tol:
        return q
    return None


def as_angle(value) -> tuple[float, Fraction | None]:
    """Accept radians (float) or a multiple of pi (Fraction / 'p/q' string)."""
    if isinstance(value, Fraction):
        return float(value) * math.pi, value
    if isinstance(value, str):
        f = Fraction(value)
        return float(f) * math.pi, f
    return float(value), None


# ---------------------------------------------------------------------------
# basic normal forms


@dataclass(frozen=True)
class NormalFormFactor:
    """One of the basic normal forms ``D(λ)``, ``N1(λ, b)``, ``R(θ)``, ``N2(θ, b)``.

    ``angle`` is in radians; ``angle_over_pi`` keeps rational angles exact.
    For ``N2`` the 2x2 block ``b`` is stored as a tuple ``(b1, b2, b3, b4)``.
    """

    kind: str
    lam: float | None = None
    b: float | tuple | None = None
    angle: float | None = None
    angle_over_pi: Fraction | None = None

    def __post_init__(self):
        k = self.kind
        if k == "D":
            if self.lam not in (2, -2):
                raise ParameterError("D(λ) needs λ = ±2")
        elif k == "N1":
            if self.lam not in (1, -1) or self.b not in (1, 0, -1):
                raise ParameterError("N1(λ, b) needs λ = ±1 and b ∈ {1, 0, -1}")
        elif k in ("R", "N2"):
            if self.angle is None:
                raise ParameterError(f"{k} needs an angle")
            th = canonical_angle(self.angle)
            if min(abs(th), abs(th - math.pi), abs(TWO_PI - th)) < 1e-12:
                raise ParameterError(f"{k}(θ) needs θ ∉ {{0, π}}")
            if k == "N2":
                if self.b is None or len(self.b) != 4:
                    raise ParameterError("N2 needs a 2x2 block b")
                if self.b[1] == self.b[2]:
                    raise ParameterError("N2 block needs b2 ≠ b3")
        else:
            raise ParameterError(f"unknown normal form kind {k!r}")

    @classmethod
    def D(cls, lam):
        return cls("D", lam=lam)

    @classmethod
    def N1(cls, lam, b):
        return cls("N1", lam=lam, b=b)

    @classmethod
    def R(cls, theta):
        rad, frac = as_angle(theta)
        return cls("R", angle=rad, angle_over_pi=frac)

    @classmethod
    def N2(cls, theta, b=None, sign: int = 1):
        """``N2(θ, b)``; without ``b`` a valid block with ``sign(b2 - b3) = sign`` is built."""
        rad, frac = as_angle(theta)
        if b is None:
            b = n2_block(rad, sign)
        b = tuple(float(x) for x in np.asarray(b, dtype=float).ravel())
        return cls("N2", b=b, angle=rad, angle_over_pi=frac)

    @property
    def dim(self) -> int:
        return 4 if self.kind == "N2" else 2

    def matrix(self) -> np.ndarray:
        return make_normal_form(self)

    def label(self) -> str:
        if self.kind == "D":
            return f"D({self.lam:g})"
        if self.kind == "N1":
            return f"N1({self.lam:g},{self.b:g})"
        ang = f"{self.angle_over_pi}π" if self.angle_over_pi is not None else f"{self.angle:.12g}"
        if self.kind == "R":
            return f"R({ang})"
        sgn = "+" if self.b[1] > self.b[2] else "-"
        return f"N2({ang},{sgn})"


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def n2_block(theta: float, sign: int = 1) -> np.ndarray:
    """A block ``b`` making ``[[R(θ), b], [0, R(θ)]]`` symplectic with ``sign(b2-b3) = sign``.

    Symplecticity forces ``b = R(θ) S`` with ``S`` symmetric; then
    ``b2 - b3 = -sin θ · tr S``.
    """
    s = math.sin(theta)
    tr = -float(np.sign(sign)) / s
    S = np.array([[tr / 2, 0.0], [0.0, tr / 2]])
    return rotation(theta) @ S


def make_normal_form(f: NormalFormFactor) -> np.ndarray:
    if f.kind == "D":
        return np.diag([float(f.lam), 1.0 / f.lam])
    if f.kind == "N1":
        return np.array([[float(f.lam), float(f.b)], [0.0, float(f.lam)]])
    R = rotation(f.angle)
    if f.kind == "R":
        return R
    b = np.asarray(f.b, dtype=float).reshape(2, 2)
    M = np.zeros((4, 4))
    M[:2, :2] = R
    M[2:, 2:] = R
    M[:2, 2:] = b
    if not is_symplectic(M, 1e-9):
        raise ParameterError("N2 block b does not give a symplectic matrix (need b^T R symmetric)")
    return M


def compose(factors) -> np.ndarray:
    """⋄-product of a sequence of factors (``NormalFormFactor`` or matrices)."""
    mats = [f.matrix() if isinstance(f, NormalFormFactor) else np.asarray(f, float) for f in factors]
    return diamond(*mats)


# ---------------------------------------------------------------------------
# spectrum


@dataclass(frozen=True)
class UnitEigenvalue:
    angle: float
    algebraic_mult: int
    geometric_mult: int
    angle_over_pi: Fraction | None = None

    @property
    def omega(self) -> complex:
        return cmath.exp(1j * self.angle)

    @property
    def rational(self) -> bool:
        return self.angle_over_pi is not None


@dataclass(frozen=True)
class UnitSpectrum:
    eigenvalues: tuple
    elliptic_height: int
    ambiguous: tuple = field(default=())

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self):
        return len(self.eigenvalues)

    def angles(self):
        return [u.angle for u in self.eigenvalues]

    def find(self, omega: complex, tol: float = 1e-9):
        for u in self.eigenvalues:
            if abs(u.omega - omega) <= tol:
                return u
        return None


def _clusters(vals: np.ndarray, tol: float) -> list[list[int]]:
    parent = list(range(len(vals)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= tol:
                parent[root(i)] = root(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(vals)):
        groups.setdefault(root(i), []).append(i)
    return list(groups.values())


def eigen_clusters(M, config: RunConfig | None = None) -> list[tuple[complex, int]]:
    """Eigenvalue clusters as ``(mean, size)``; clusters absorb Jordan-block splitting."""
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    vals = np.linalg.eigvals(M)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    out = []
    for g in _clusters(vals, cfg.cluster_tol * scale):
        out.append((complex(np.mean(vals[g])), len(g)))
    return out


def nu_omega(M, omega: complex, config: RunConfig | None = None) -> int:
    """Complex kernel dimension of ``M - ωI``, counted by small singular values."""
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    # bounded by the number of eigenvalues near ω; keeps large, non-normal
    # iterates from reporting spurious kernel
    window = max(10 * cfg.cluster_tol, 1e-12 * scale)
    alg = int(np.sum(np.abs(np.linalg.eigvals(M) - omega) <= window))
    if alg == 0:
        return 0
    sv = np.linalg.svd(M - omega * np.eye(M.shape[0]), compute_uv=False)
    return min(alg, int(np.sum(sv <= cfg.rank_tol * scale)))


def unit_spectrum(M, config: RunConfig | None = None) -> UnitSpectrum:
    """Unit-circle eigenvalues with algebraic and geometric multiplicities.

    Conjugate pairs are reported separately, sorted by angle in ``[0, 2π)``.
    Clusters whose modulus sits just outside ``circle_tol`` are listed in
    ``ambiguous`` and excluded from the spectrum.
    """
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    half_dim(M)
    found, ambiguous = [], []
    for mean, size in eigen_clusters(M, cfg):
        dist = abs(abs(mean) - 1.0)
        if dist > cfg.circle_tol:
            if dist < 10 * cfg.circle_tol:
                ambiguous.append(mean)
            continue
        theta = canonical_angle(cmath.phase(mean))
        frac = rational_over_pi(theta, cfg)
        if frac is not None:
            frac = frac % 2
            theta = float(frac) * math.pi
        omega = cmath.exp(1j * theta)
        geo = nu_omega(M, omega, cfg)
        found.append(UnitEigenvalue(theta, size, max(1, min(geo, size)), frac))
    if ambiguous:
        warnings.warn(f"eigenvalues ambiguously close to the unit circle: {ambiguous}", RuntimeWarning)
    found.sort(key=lambda u: u.angle)
    e = sum(u.algebraic_mult for u in found)
    return UnitSpectrum(tuple(found), e, tuple(ambiguous))


def elliptic_height(M, config: RunConfig | None = None) -> int:
    return unit_spectrum(M, config).elliptic_height


def is_hyperbolic(M, config=None) -> bool:
    return elliptic_height(M, config) == 0


def is_elliptic(M, config=None) -> bool:
    return elliptic_height(M, config) == np.asarray(M).shape[0]


def is_nondegenerate(M, config=None) -> bool:
    """``1 ∉ σ(M)``; the matrix-level form of the bumpy condition."""
    return nu_omega(M, 1.0, config) == 0


def d_omega(M, omega: complex, config: RunConfig | None = None) -> float:
    """``(-1)^(n-1) conj(ω)^n det(M - ωI)``, which is real for symplectic ``M``."""
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    n = half_dim(M)
    if abs(abs(omega) - 1.0) > 1e-9:
        raise ParameterError(f"ω must lie on the unit circle, |ω| = {abs(omega)}")
    val = (-1) ** (n - 1) * np.conj(omega) ** n * np.linalg.det(M - omega * np.eye(2 * n))
    val = complex(val)
    # imaginary residue is judged against the Hadamard bound of the determinant
    rows = np.linalg.norm(M - omega * np.eye(2 * n), axis=1)
    scale = max(1.0, float(np.prod(rows)))
    if abs(val.imag) > cfg.d_omega_imag_tol * scale:
        raise NumericalConsistencyError(f"D_ω has imaginary residue {val.imag:.3e}")
    return val.real


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
    """A random element of Sp(2n) built as a product of exponentials."""
    from scipy.linalg import expm

    out = np.eye(2 * n)
    for _ in range(2):
        S = rng.normal(size=(2 * n, 2 * n))
        S = (S + S.T) / 2
        out = out @ expm(scale * J(n) @ S / max(1.0, np.linalg.norm(S, 2)))
    return out


def hamiltonian(X) -> np.ndarray:
    """Nearest element of ``sp(2n)``, written as ``J S`` with ``S`` symmetric."""
    X = np.asarray(X, dtype=float)
    Jn = J(half_dim(X))
    S = -Jn @ X
    S = (S + S.T) / 2
    return Jn @ S
