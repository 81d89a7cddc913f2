"""Splitting numbers ``S±_M(ω)``.

``S±_M(ω)`` is the jump of the ω-index of any path ending at ``M`` when ω
is rotated slightly counterclockwise (``+``) or clockwise (``-``).  The value
does not depend on the path, so a canonical generator is built from the
polar factorisation ``M = P O``: first ``O`` is reached inside the
orthogonal-symplectic subgroup, then ``P^t`` is applied on the left.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .config import RunConfig, resolve
from .core import (
    TWO_PI,
    J,
    NormalFormFactor,
    canonical_angle,
    check_symplectic,
    eigen_clusters,
    half_dim,
    hamiltonian,
    nu_omega,
    unit_spectrum,
)
from .errors import ContractError, EngineInconsistencyError, NumericalConsistencyError, ParameterError
from .paths import Arc, Segment, SymplecticPath, from_generators, index_omega_many


@dataclass(frozen=True)
class SplittingPair:
    s_plus: int
    s_minus: int
    omega: complex

    def __post_init__(self):
        if self.s_plus < 0 or self.s_minus < 0:
            raise EngineInconsistencyError(f"negative splitting number ({self.s_plus}, {self.s_minus}) at ω={self.omega}")

    def as_tuple(self) -> tuple[int, int]:
        return self.s_plus, self.s_minus

    def __eq__(self, other):
        if isinstance(other, SplittingPair):
            return self.as_tuple() == other.as_tuple() and abs(self.omega - other.omega) < 1e-9
        if isinstance(other, tuple):
            return self.as_tuple() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_tuple())


# ---------------------------------------------------------------------------
# generators


def polar_decomposition(M) -> tuple[np.ndarray, np.ndarray]:
    """``M = P O`` with ``P`` symmetric positive definite and ``O`` orthogonal; both symplectic."""
    M = np.asarray(M, dtype=float)
    w, V = np.linalg.eigh(M @ M.T)
    P = (V * np.sqrt(w)) @ V.T
    O = np.linalg.solve(P, M)
    return P, O


def _log_spd(P: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh((P + P.T) / 2)
    return hamiltonian((V * np.log(w)) @ V.T)


def _log_orthosymplectic(O: np.ndarray) -> np.ndarray:
    """Real logarithm of an orthogonal symplectic matrix through its unitary model ``A + iB``."""
    n = half_dim(O)
    A, B = O[:n, :n], O[n:, :n]
    U = A + 1j * B
    # U is unitary, hence normal: a complex Schur form is diagonal
    from scipy.linalg import schur

    T, Z = schur(U, output="complex")
    ang = np.angle(np.diag(T))
    L = (Z * (1j * ang)) @ Z.conj().T
    K, Lm = L.real, L.imag
    X = np.block([[K, -Lm], [Lm, K]])
    return hamiltonian(X)


def canonical_generator(M, config: RunConfig | None = None) -> SymplecticPath:
    """Path from ``I`` to ``M``: ``exp(t log O)`` then ``P^t O``."""
    cfg = resolve(config)
    M = check_symplectic(M, cfg)
    P, O = polar_decomposition(M)
    XO, XP = _log_orthosymplectic(O), _log_spd(P)
    path = from_generators([(0.5, XO), (0.5, XP)], cfg)
    _check_end(path, M, cfg)
    return path


def alternate_generators(M, rng: np.random.Generator | None = None,
                         config: RunConfig | None = None) -> list[SymplecticPath]:
    """Two further paths to ``M``: stretch first then rotate, and a detour through a random point."""
    cfg = resolve(config)
    M = check_symplectic(M, cfg)
    rng = np.random.default_rng(12345) if rng is None else rng
    P, O = polar_decomposition(M)
    XO, XP = _log_orthosymplectic(O), _log_spd(P)
    Pinv = np.linalg.inv(P)
    # P then exp(u P XO P^-1) P = P exp(u XO)
    stretched = from_generators([(0.5, XP), (0.5, P @ XO @ Pinv)], cfg)
    # detour: I -> Q along exp(uY), then β(u) Q where β is the canonical path to M Q^{-1}
    n = half_dim(M)
    S = rng.normal(size=(2 * n, 2 * n))
    Y = 0.8 * J(n) @ ((S + S.T) / 2) / max(1.0, np.linalg.norm(S, 2))
    Q = expm(Y)
    beta = canonical_generator(M @ np.linalg.inv(Q), cfg)
    segs = [Segment(np.eye(2 * n), Y, 0.3)]
    scale = 0.7 / beta.tau
    segs += [Segment(s.start @ Q, s.gen, s.duration * scale) for s in beta.segments]
    detour = SymplecticPath(segs, cfg)
    out = [stretched, detour]
    for p in out:
        _check_end(p, M, cfg)
    return out


def _check_end(path: Arc, M: np.ndarray, cfg: RunConfig):
    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(path.end - M)) > 1e3 * cfg.sympl_tol * scale:
        raise ContractError("generator does not end at M")


# ---------------------------------------------------------------------------
# splitting numbers


def _unit(omega) -> complex:
    w = complex(omega)
    if abs(abs(w) - 1.0) > 1e-9:
        raise ParameterError(f"ω must lie on the unit circle, got {w}")
    return w / abs(w)


def _angular_gap(M: np.ndarray, omega: complex, cfg: RunConfig) -> float:
    theta = cmath.phase(omega)
    gaps = []
    for u in unit_spectrum(M, cfg):
        d = abs((u.angle - theta + math.pi) % TWO_PI - math.pi)
        if d > 1e-8:
            gaps.append(d)
    return min(gaps) if gaps else math.pi


def _in_spectrum(M: np.ndarray, omega: complex, cfg: RunConfig) -> bool:
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    return any(abs(mu - omega) <= 10 * cfg.cluster_tol * scale for mu, _ in eigen_clusters(M, cfg))


def splitting_numbers(M, omega, generator: Arc | None = None, config: RunConfig | None = None) -> SplittingPair:
    """``S±_M(ω) = i_{ω e^{±iε}}(γ) - i_ω(γ)`` for a path γ ending at ``M``.

    ε starts at ``min(split_eps_max, gap/4)`` and the result must agree at ε/10.
    """
    cfg = resolve(config)
    M = check_symplectic(M, cfg)
    w = _unit(omega)
    if generator is not None:
        _check_end(generator, M, cfg)
    if not _in_spectrum(M, w, cfg):
        return SplittingPair(0, 0, w)
    path = generator if generator is not None else canonical_generator(M, cfg)
    eps = min(cfg.split_eps_max, _angular_gap(M, w, cfg) / 4)
    rots = [w, w * cmath.exp(1j * eps), w * cmath.exp(-1j * eps),
            w * cmath.exp(1j * eps / 10), w * cmath.exp(-1j * eps / 10)]
    r = [x.value for x in index_omega_many(path, rots, cfg)]
    plus, minus = (r[1] - r[0], r[2] - r[0]), (r[3] - r[0], r[4] - r[0])
    if plus != minus:
        raise NumericalConsistencyError(
            f"splitting numbers at ω={w} change under ε refinement: {plus} at ε={eps:.3g}, {minus} at ε/10"
        )
    pair = SplittingPair(plus[0], plus[1], w)
    nu = nu_omega(M, w, cfg)
    if pair.s_plus > nu or pair.s_minus > nu:
        raise EngineInconsistencyError(f"splitting numbers {pair.as_tuple()} exceed ν_ω = {nu}")
    return pair


# ---------------------------------------------------------------------------
# table for basic normal forms

_REP_ANGLE = Fraction(2, 5)  # representative angle (in units of π) in (0, π)


def _key(f: NormalFormFactor, which: int):
    """Table key; ``which`` is +1 for the eigenvalue ``e^{iθ}`` and -1 for its conjugate."""
    if f.kind == "D":
        return ("D", int(f.lam))
    if f.kind == "N1":
        return ("N1", int(f.lam), int(f.b))
    upper = canonical_angle(f.angle) < math.pi
    if f.kind == "R":
        return ("R", upper, which)
    sign = 1 if f.b[1] > f.b[2] else -1
    return ("N2", upper, sign, which)


def _representatives():
    reps = [NormalFormFactor.D(2), NormalFormFactor.D(-2)]
    reps += [NormalFormFactor.N1(lam, b) for lam in (1, -1) for b in (1, 0, -1)]
    for th in (_REP_ANGLE, 2 - _REP_ANGLE):
        reps.append(NormalFormFactor.R(th))
        reps += [NormalFormFactor.N2(th, sign=s) for s in (1, -1)]
    return reps


def _factor_eigs(f: NormalFormFactor):
    """``(which, ω)`` for the unit eigenvalues of a factor."""
    if f.kind == "D":
        return []
    if f.kind == "N1":
        return [(0, complex(f.lam))]
    return [(1, cmath.exp(1j * f.angle)), (-1, cmath.exp(-1j * f.angle))]


class _Table:
    def __init__(self):
        self._lock = threading.Lock()
        self._entries = None
        self._rows = None

    def entries(self, config: RunConfig | None = None):
        if self._entries is None:
            with self._lock:
                if self._entries is None:
                    self._build(resolve(config))
        return self._entries

    def rows(self, config: RunConfig | None = None):
        self.entries(config)
        return self._rows

    def _build(self, cfg: RunConfig):
        entries, rows = {}, []
        for f in _representatives():
            M = f.matrix()
            eigs = _factor_eigs(f)
            if not eigs:
                entries[_key(f, 0)] = (0, 0)
                rows.append((f, None, 0, 0))
            for which, w in eigs:
                p = splitting_numbers(M, w, config=cfg)
                entries[_key(f, which)] = p.as_tuple()
                rows.append((f, canonical_angle(cmath.phase(w)), p.s_plus, p.s_minus))
        _validate(entries, rows, cfg)
        self._rows = rows
        self._entries = entries


def _validate(entries, rows, cfg):
    # N1(1, b) at 1: S+ = 1 for b >= 0 and 0 for b < 0
    for b in (1, 0, -1):
        want = 1 if b >= 0 else 0
        if entries[("N1", 1, b)][0] != want:
            raise EngineInconsistencyError(f"table entry N1(1,{b}) at 1 has S+ = {entries[('N1', 1, b)][0]}")
    for f, ang, sp, sm in rows:
        if ang is None:
            continue
        nu = nu_omega(f.matrix(), cmath.exp(1j * ang), cfg)
        if sp > nu or sm > nu:
            raise EngineInconsistencyError(f"table entry {f.label()} exceeds the nullity bound")
    # conjugate symmetry: S+(ω) = S-(ω̄)
    for key, (sp, sm) in entries.items():
        if key[0] in ("R", "N2"):
            twin = key[:-1] + (-key[-1],)
            if entries[twin] != (sm, sp):
                raise EngineInconsistencyError(f"conjugate symmetry fails for {key}")


_TABLE = _Table()


def build_table(config: RunConfig | None = None) -> None:
    """Generate the table now (it is otherwise built on first lookup)."""
    _TABLE.entries(config)


def splitting_table(f: NormalFormFactor, omega) -> SplittingPair:
    """Frozen ``S±_f(ω)`` for a basic normal form."""
    w = _unit(omega)
    entries = _TABLE.entries()
    for which, mu in _factor_eigs(f):
        if abs(mu - w) <= 1e-9:
            return SplittingPair(*entries[_key(f, which)], w)
    return SplittingPair(0, 0, w)


def table_rows() -> list[dict]:
    """Every tabulated factor with its unit eigenvalues and splitting numbers."""
    out = []
    for f, ang, sp, sm in _TABLE.rows():
        frac = None
        if ang is not None:
            frac = Fraction(ang / math.pi).limit_denominator(1000)
        out.append({
            "factor": f.label(),
            "omega_angle": ang,
            "omega_angle_over_pi": None if frac is None else str(frac),
            "s_plus": sp,
            "s_minus": sm,
        })
    return out


def splitting_of_product(factors, omega) -> SplittingPair:
    """Table-based ``S±`` of a ⋄-product, by additivity over the factors."""
    w = _unit(omega)
    sp = sm = 0
    for f in factors:
        p = splitting_table(f, w)
        sp += p.s_plus
        sm += p.s_minus
    return SplittingPair(sp, sm, w)
