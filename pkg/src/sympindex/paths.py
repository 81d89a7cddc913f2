"""Symplectic paths and the ω-index as a signed intersection number.

A path is stored as a chain of exponential segments

    γ(t) = exp(r(u) X_k) A_k,      u = (t - t_k) / h_k ∈ [0, 1],

with ``A_k = γ(t_k)``, ``X_k`` in ``sp(2n)`` and ``r`` an optional monotone
reparametrisation of ``[0, 1]`` (used only for the reference arc ξ_n).
Hamiltonian generators ``(duration, B)`` become ``X_k = h_k J B`` and sampled
paths are interpolated by ``X_k = log(γ(t_{k+1}) γ(t_k)^{-1})``.

The index at ``ω`` counts signed zeros of ``t ↦ D_ω((γ∗ξ_n)(t))``.  Before
counting, the concatenated path is right-multiplied by a small generic loop
``P(t)`` of exponentials that is the identity at both ends; this is a
homotopy with fixed end points, so the count is unchanged, while tangencies
and passages through the singular part of the hypersurface are broken up.
Each zero is located by Brent's method and signed by comparing the direction
of the path with the co-orientation ``s ↦ M e^{sJ}``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, logm
from scipy.optimize import brentq

from .config import RunConfig, resolve
from .core import (
    J,
    check_symplectic,
    diamond,
    diamond_power,
    eigen_clusters,
    half_dim,
    hamiltonian,
    nu_omega,
)
from .errors import ContractError, DegeneracyError, ParameterError


@dataclass(frozen=True)
class Segment:
    start: np.ndarray
    gen: np.ndarray
    duration: float
    reparam: Callable[[float], float] | None = None

    def at(self, u: float) -> np.ndarray:
        s = u if self.reparam is None else self.reparam(u)
        return expm(s * self.gen) @ self.start

    @property
    def end(self) -> np.ndarray:
        return expm(self.gen) @ self.start


class Arc:
    """A continuous arc in Sp(2n) made of exponential segments."""

    def __init__(self, segments: Sequence[Segment]):
        if not segments:
            raise ParameterError("an arc needs at least one segment")
        self.segments = tuple(segments)
        self.n = half_dim(self.segments[0].start)
        self._times = np.concatenate([[0.0], np.cumsum([s.duration for s in self.segments])])
        self._end = None

    @property
    def tau(self) -> float:
        return float(self._times[-1])

    @property
    def start(self) -> np.ndarray:
        return self.segments[0].start

    @property
    def end(self) -> np.ndarray:
        if self._end is None:
            self._end = self.segments[-1].end
        return self._end

    def __call__(self, t: float) -> np.ndarray:
        if t < -1e-12 or t > self.tau + 1e-12:
            raise ParameterError(f"t={t} outside [0, {self.tau}]")
        if t >= self.tau:
            return self.end
        k = int(np.searchsorted(self._times, t, side="right") - 1)
        k = min(max(k, 0), len(self.segments) - 1)
        seg = self.segments[k]
        return seg.at((t - self._times[k]) / seg.duration)

    def sample(self, ts) -> np.ndarray:
        return np.stack([self(t) for t in ts])

    def scaled(self, tau: float) -> "Arc":
        f = tau / self.tau
        segs = [Segment(s.start, s.gen, s.duration * f, s.reparam) for s in self.segments]
        return type(self)._raw(segs)

    @classmethod
    def _raw(cls, segments):
        obj = cls.__new__(cls)
        Arc.__init__(obj, segments)
        return obj

    def right_multiply(self, C) -> "Arc":
        """Pointwise ``γ(t) C``."""
        C = np.asarray(C, dtype=float)
        segs = [Segment(s.start @ C, s.gen, s.duration, s.reparam) for s in self.segments]
        return Arc._raw(segs)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, tau={self.tau:g}, segments={len(self.segments)})"


class SymplecticPath(Arc):
    """A path in Sp(2n) on ``[0, τ]`` starting at the identity."""

    def __init__(self, segments: Sequence[Segment], config: RunConfig | None = None):
        super().__init__(segments)
        cfg = resolve(config)
        if np.max(np.abs(self.start - np.eye(2 * self.n))) > cfg.sympl_tol:
            raise ContractError("a symplectic path must start at the identity")
        for seg in self.segments:
            check_symplectic(seg.start, cfg, what="path sample")

    @classmethod
    def _raw(cls, segments):
        obj = cls.__new__(cls)
        Arc.__init__(obj, segments)
        return obj


# ---------------------------------------------------------------------------
# constructors


def from_hamiltonian(segments, tau: float | None = None, config: RunConfig | None = None) -> SymplecticPath:
    """Solve ``γ' = J B(t) γ``, ``γ(0) = I`` for piecewise constant symmetric ``B``.

    ``segments`` is a list of ``(duration, B)`` pairs.
    """
    if not segments:
        raise ParameterError("need at least one segment")
    segs, A = [], None
    for dur, B in segments:
        B = np.asarray(B, dtype=float)
        n = half_dim(B)
        if dur <= 0:
            raise ParameterError("segment durations must be positive")
        if np.max(np.abs(B - B.T)) > 1e-12 * max(1.0, np.max(np.abs(B))):
            raise ParameterError("generator B must be symmetric")
        if A is None:
            A = np.eye(2 * n)
        X = dur * (J(n) @ B)
        segs.append(Segment(A, X, float(dur)))
        A = expm(X) @ A
    total = sum(s.duration for s in segs)
    if tau is not None and abs(total - tau) > 1e-9 * max(1.0, tau):
        raise ParameterError(f"durations sum to {total}, expected τ = {tau}")
    return SymplecticPath(segs, config)


def from_generators(pieces, config: RunConfig | None = None) -> SymplecticPath:
    """Chain of ``(duration, X)`` with ``X ∈ sp(2n)``; each piece applies ``exp(u X)`` on the left."""
    segs, A = [], None
    for dur, X in pieces:
        X = np.asarray(X, dtype=float)
        if A is None:
            A = np.eye(X.shape[0])
        segs.append(Segment(A, X, float(dur)))
        A = expm(X) @ A
    return SymplecticPath(segs, config)


def from_samples(times, matrices, config: RunConfig | None = None) -> SymplecticPath:
    """Sampled path, interpolated by one-parameter subgroups between samples."""
    cfg = resolve(config)
    times = np.asarray(times, dtype=float)
    mats = [check_symplectic(m, cfg, what=f"sample {i}") for i, m in enumerate(matrices)]
    if len(mats) < 2 or len(times) != len(mats):
        raise ParameterError("need at least two samples with matching times")
    if times[0] != 0.0 or np.any(np.diff(times) <= 0):
        raise ParameterError("sample times must start at 0 and increase")
    segs = []
    for k in range(len(mats) - 1):
        a, b = mats[k], mats[k + 1]
        if np.max(np.abs(b - a)) > cfg.step_bound:
            raise ContractError(
                f"samples {k} and {k + 1} differ by more than step_bound={cfg.step_bound}; refine the sampling"
            )
        L = logm(b @ np.linalg.inv(a))
        X = hamiltonian(np.real(L))
        segs.append(Segment(a, X, float(times[k + 1] - times[k])))
    return SymplecticPath(segs, cfg)


def constant_path(n: int, tau: float = 1.0) -> SymplecticPath:
    return SymplecticPath([Segment(np.eye(2 * n), np.zeros((2 * n, 2 * n)), tau)])


def rotation_path(theta: float, tau: float = 1.0) -> SymplecticPath:
    """``t ↦ R(tθ/τ)`` in Sp(2)."""
    return from_hamiltonian([(tau, (theta / tau) * np.eye(2))])


def diamond_paths(*paths: Arc) -> Arc:
    """Pointwise ⋄-product of paths on a common parameter interval."""
    tau = paths[0].tau
    if any(abs(p.tau - tau) > 1e-12 * max(1, tau) for p in paths):
        raise ParameterError("⋄-product needs paths on the same interval")
    cuts = sorted(set(np.round(np.concatenate([p._times for p in paths]), 13)))
    segs = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 1e-13:
            continue
        gens, starts = [], []
        for p in paths:
            k = int(np.searchsorted(p._times, (a + b) / 2, side="right") - 1)
            seg = p.segments[k]
            if seg.reparam is not None:
                raise ParameterError("⋄-product of reparametrised arcs is not supported")
            frac = (b - a) / seg.duration
            u0 = (a - p._times[k]) / seg.duration
            gens.append(frac * seg.gen)
            starts.append(seg.at(u0))
        segs.append(Segment(diamond(*starts), diamond(*gens), b - a))
    cls = SymplecticPath if all(isinstance(p, SymplecticPath) for p in paths) else Arc
    return cls._raw(segs)


def xi_path(n: int, tau: float = 1.0) -> Arc:
    """Reference arc ``t ↦ diag(2 - t/τ, (2 - t/τ)^{-1})^{⋄n}`` from ``D(2)^{⋄n}`` to ``I``."""
    if n < 1 or tau <= 0:
        raise ParameterError("need n ≥ 1 and τ > 0")
    H = np.diag([1.0] * n + [-1.0] * n)
    start = diamond_power(np.diag([2.0, 0.5]), n)
    # exp(r X) start = diag(2 - u, ...) with X = -ln2 H  =>  r(u) = 1 - log2(2 - u)
    seg = Segment(start, -math.log(2.0) * H, float(tau), lambda u: 1.0 - math.log2(2.0 - u))
    return Arc._raw([seg])


def concat(first: Arc, second: Arc, config: RunConfig | None = None) -> Arc:
    """``second ∗ first``: ``first`` on ``[0, τ/2]`` at double speed, then ``second``."""
    cfg = resolve(config)
    scale = max(1.0, float(np.max(np.abs(second.start))))
    if np.max(np.abs(first.end - second.start)) > cfg.sympl_tol * scale:
        raise ContractError("concatenation needs first(τ) = second(0)")
    tau = second.tau
    segs = list(first.scaled(tau / 2).segments) + list(second.scaled(tau / 2).segments)
    return Arc._raw(segs)


def iterate_path(path: SymplecticPath, m: int) -> SymplecticPath:
    """``γ^m(jτ + s) = γ(s) γ(τ)^j`` on ``[0, mτ]``."""
    if int(m) != m or m < 1:
        raise ParameterError("iteration count must be a positive integer")
    E = path.end
    segs, P = [], np.eye(2 * path.n)
    for _ in range(int(m)):
        segs += [Segment(s.start @ P, s.gen, s.duration, s.reparam) for s in path.segments]
        P = P @ E
    return SymplecticPath._raw(segs)


def nullity(path: Arc, omega: complex, config: RunConfig | None = None) -> int:
    return nu_omega(path.end, omega, config)


# ---------------------------------------------------------------------------
# crossing engine


@dataclass
class IndexResult:
    value: int
    omega: complex
    nullity: int
    crossings: list = field(default_factory=list)
    branches: dict = field(default_factory=dict)
    seed: int = 0

    def __int__(self):
        return self.value


class _Expo:
    """Fast ``exp(s X)`` for many ``s`` via an eigendecomposition when it is well conditioned."""

    def __init__(self, X: np.ndarray):
        self.X = X
        self.diag = None
        if np.max(np.abs(X)) == 0.0:
            self.zero = True
            return
        self.zero = False
        lam, V = np.linalg.eig(X)
        if np.linalg.cond(V) < 1e6:
            Vi = np.linalg.inv(V)
            if np.max(np.abs((V * lam) @ Vi - X)) < 1e-10 * max(1.0, np.max(np.abs(X))):
                self.diag = (lam, V, Vi)

    def __call__(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        d = self.X.shape[0]
        if self.zero:
            return np.broadcast_to(np.eye(d), (len(s), d, d)).copy()
        if self.diag is not None:
            lam, V, Vi = self.diag
            E = np.exp(np.outer(s, lam))
            return np.einsum("ij,tj,jk->tik", V, E, Vi).real
        return np.stack([expm(x * self.X) for x in s])


class _Engine:
    """Samples of the perturbed concatenation ``(γ∗ξ_n)(t) P(t)``, shared across ω."""

    def __init__(self, path: Arc, cfg: RunConfig, seed: int):
        self.cfg = cfg
        self.n = n = path.n
        full = concat(xi_path(n, path.tau), path, cfg)
        self.segs = full.segments
        self.K = len(self.segs)
        self.end = path.end
        rng = np.random.default_rng(seed)
        a = cfg.perturbation_amplitude
        self.amp = a
        self.Y = []
        for _ in range(2):
            for _attempt in range(20):
                S = rng.normal(size=(2 * n, 2 * n))
                S = (S + S.T) / 2
                Y = J(n) @ S / np.linalg.norm(S, 2)
                ex = _Expo(Y)
                if ex.diag is not None:
                    break
            self.Y.append(ex)
        self.seg_exp = [_Expo(s.gen) for s in self.segs]
        self.step = min(cfg.step_bound, a / 4)
        self._sample_main()

    # perturbation weights on the global parameter t ∈ [0, K]
    def weights(self, t):
        t = np.asarray(t, dtype=float)
        w = np.sin(0.5 * np.pi * np.minimum(t, 1.0))
        return self.amp * w * (1 + 0.3 * np.sin(1.3 * t)), 0.7 * self.amp * w * np.cos(0.9 * t)

    def perturb(self, t, phis=None):
        p1, p2 = self.weights(t) if phis is None else phis
        return np.einsum("tij,tjk->tik", self.Y[0](np.atleast_1d(p1)), self.Y[1](np.atleast_1d(p2)))

    def main_at(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty((len(t), 2 * self.n, 2 * self.n))
        k = np.clip(np.floor(t).astype(int), 0, self.K - 1)
        for kk in np.unique(k):
            idx = np.nonzero(k == kk)[0]
            seg = self.segs[kk]
            u = t[idx] - kk
            if seg.reparam is not None:
                u = np.array([seg.reparam(x) for x in u])
            out[idx] = self.seg_exp[kk](u) @ seg.start
        return out @ self.perturb(t)

    def _sample_main(self):
        ts = []
        for k, seg in enumerate(self.segs):
            speed = np.linalg.norm(seg.gen, 2) + 2 * self.amp
            c = max(2, int(math.ceil(speed / self.step)), int(math.ceil(self.cfg.min_samples / self.K)))
            ts.append(k + np.arange(c) / c)
        ts.append([float(self.K)])
        self.t_main = np.concatenate(ts)
        self.G_main = self.main_at(self.t_main)

    def tail(self, delta: float):
        """Tail ``s ↦ γ(τ) Q^{1-s} e^{sδJ}`` on global parameters ``[K, K+1]``."""
        p1, p2 = self.weights(float(self.K))
        Jn = J(self.n)
        E = self.end

        def at(t):
            s = np.atleast_1d(np.asarray(t, dtype=float)) - self.K
            Q = self.perturb(None, ((1 - s) * p1, (1 - s) * p2))
            R = np.stack([expm(x * delta * Jn) for x in s]) if delta else np.eye(2 * self.n)
            return E @ Q @ R

        span = self.amp * 1.6 + abs(delta)
        fine = abs(delta) / 8 if delta else self.step
        c = max(self.cfg.min_samples, int(math.ceil(span / min(self.step, fine))))
        ts = self.K + np.linspace(0.0, 1.0, c + 1)[1:]
        return at, ts, at(ts)

    def evaluator(self, delta):
        tail_at, t_tail, G_tail = self.tail(delta)

        def at(t):
            t = np.atleast_1d(np.asarray(t, dtype=float))
            out = np.empty((len(t), 2 * self.n, 2 * self.n))
            m = t <= self.K
            if m.any():
                out[m] = self.main_at(t[m])
            if (~m).any():
                out[~m] = tail_at(t[~m])
            return out

        seg_speed = np.array([np.linalg.norm(s.gen, 2) * (1 / math.log(2) if s.reparam else 1.0) for s in self.segs])
        tail_speed = 1.6 * self.amp + abs(delta)

        def speed(t):
            # bound on |d/dt| of the unperturbed factor, plus the perturbation loop
            t = np.asarray(t, dtype=float)
            k = np.clip(np.floor(t).astype(int), 0, self.K - 1)
            base = np.where(t > self.K, tail_speed, seg_speed[k])
            return base + 6 * self.amp

        ts = np.concatenate([self.t_main, t_tail])
        Gs = np.concatenate([self.G_main, G_tail])
        return at, ts, Gs, speed


def _d_batch(G: np.ndarray, omega: complex) -> np.ndarray:
    n = G.shape[-1] // 2
    I = np.eye(2 * n)
    if abs(omega.imag) < 1e-15:
        w = omega.real
        return (-1) ** (n - 1) * w**n * np.linalg.det(G - w * I)
    det = np.linalg.det(G - omega * I)
    return ((-1) ** (n - 1) * np.conj(omega) ** n * det).real


def _probe(G: np.ndarray, omega: complex):
    """``D_ω`` and the smallest singular value of ``G - ωI`` for a batch."""
    shifted = G - omega * np.eye(G.shape[-1])
    sig = np.linalg.svd(shifted, compute_uv=False)[:, -1]
    return _d_batch(G, omega), sig


def _count(at, ts, Gs, speed, omega, cfg) -> list[tuple[float, int]]:
    """Signed zeros of ``f(t) = D_ω(at(t))`` starting from samples ``(ts, Gs)``.

    Between nearby parameters the path changes by factors on both sides,
    ``G(t) = L G(a) R`` with ``|log L| + |log R| ≤ v |t - a|``, so
    ``G(t) - ωI`` can only be singular when the smallest singular value of
    ``G(a) - ωI`` is at most ``e^{v|t-a|} - 1``.  An interval is free of
    zeros when this fails from both ends; other intervals are halved until
    certified or shorter than ``crossing_resolution``.  Sign changes on the
    final partition are then located and signed.
    """
    ts = np.asarray(ts, dtype=float)
    f, sig = _probe(Gs, omega)
    a, b = ts[:-1], ts[1:]
    fa, fb, sa, sb = f[:-1], f[1:], np.log1p(sig[:-1]), np.log1p(sig[1:])
    final = []
    budget = cfg.refine_budget
    while len(a):
        if np.any(fa == 0.0) or np.any(fb == 0.0):
            i = int(np.nonzero((fa == 0.0) | (fb == 0.0))[0][0])
            raise DegeneracyError("sample landed on the hypersurface", (float(a[i]), float(b[i])))
        v = 1.25 * speed((a + b) / 2)
        done = (sa + sb > v * (b - a)) | (b - a <= cfg.crossing_resolution)
        if budget <= 0:
            done[:] = True
        final.append((a[done], b[done], fa[done], fb[done]))
        keep = ~done
        if not keep.any():
            break
        a, b, fa, fb, sa, sb = (x[keep] for x in (a, b, fa, fb, sa, sb))
        mid = (a + b) / 2
        budget -= len(mid)
        fm, sm = _probe(at(mid), omega)
        sm = np.log1p(sm)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        fa, fb = np.concatenate([fa, fm]), np.concatenate([fm, fb])
        sa, sb = np.concatenate([sa, sm]), np.concatenate([sm, sb])

    def g(t):
        return float(_d_batch(at(t), omega)[0])

    crossings = []
    for A, B, FA, FB in final:
        for i in np.nonzero((FA < 0) != (FB < 0))[0]:
            crossings.append(_classify(g, at, A[i], B[i], FA[i], FB[i], omega, cfg))
    crossings.sort()
    return crossings


def _classify(f, at, a, b, fa, fb, omega, cfg):
    t0 = brentq(f, a, b, xtol=cfg.bisection_tol, rtol=4 * np.finfo(float).eps, maxiter=200)
    direction = 1 if fb > fa else -1
    M = at(t0)[0]
    co = _coorientation(M, omega)
    if co is None:
        co = _coorientation_fd(M, omega)
    if co is None:
        raise DegeneracyError("co-orientation test is tangential at a crossing", (a, b))
    return (t0, direction * co)


def _coorientation(M, omega):
    """Sign of ``d/ds D_ω(M e^{sJ})`` at ``s = 0`` from the adjugate of ``M - ωI``.

    Near a simple zero ``adj(A) ≈ det(U) det(V^H) Π_{j<last} σ_j · v u^H`` for
    ``A = U Σ V^H``, so the derivative ``tr(adj(A) M J)`` reduces to one
    bilinear form in the last singular vectors.  Returns ``None`` when the
    smallest singular value is not isolated.
    """
    n = M.shape[0] // 2
    A = M - omega * np.eye(2 * n)
    U, S, Vh = np.linalg.svd(A)
    if S[-2] <= 1e3 * S[-1] or S[-2] <= 1e-13 * S[0]:
        return None
    u, v = U[:, -1], Vh[-1].conj()
    val = np.linalg.det(U) * np.linalg.det(Vh) * (u.conj() @ M @ J(n) @ v)
    val *= (-1) ** (n - 1) * np.conj(omega) ** n
    if abs(val.real) <= 1e-8 * abs(val):
        return None
    return 1 if val.real > 0 else -1


def _coorientation_fd(M, omega):
    n = M.shape[0] // 2
    Jn = J(n)
    # near a Jordan block the eigenvalue moves like sqrt(s), so fall back to smaller steps
    for h in (1e-5, 1e-4, 1e-3, 1e-6, 1e-7, 1e-8):
        E = expm(h * Jn)
        gp = _d_batch((M @ E)[None], omega)[0]
        gm = _d_batch((M @ np.linalg.inv(E))[None], omega)[0]
        if (gp < 0) != (gm < 0):
            return 1 if gp > gm else -1
    return None


def _gap(E: np.ndarray, omega: complex, cfg: RunConfig) -> float:
    others = [abs(mu - omega) for mu, _ in eigen_clusters(E, cfg) if abs(mu - omega) > cfg.cluster_tol * 10]
    return min(others) if others else 2.0


def index_omega_many(path: Arc, omegas, config: RunConfig | None = None) -> list[IndexResult]:
    """ω-index of ``path`` at several points of the unit circle, sharing path samples."""
    cfg = resolve(config)
    omegas = [complex(w) for w in omegas]
    for w in omegas:
        if abs(abs(w) - 1) > 1e-9:
            raise ParameterError(f"ω must lie on the unit circle, got {w}")
    last = None
    for attempt in range(cfg.perturbation_retries):
        seed = cfg.perturbation_seed + attempt
        try:
            engine = _Engine(path, cfg, seed)
            return [_index_one(engine, w, cfg, seed) for w in omegas]
        except DegeneracyError as exc:
            last = exc
    raise DegeneracyError(f"crossing count unresolved after {cfg.perturbation_retries} perturbations: {last}",
                          getattr(last, "interval", None))


def _index_one(engine: _Engine, omega: complex, cfg: RunConfig, seed: int) -> IndexResult:
    E = engine.end
    nu = nu_omega(E, omega, cfg)
    if nu == 0:
        at, ts, Gs, speed = engine.evaluator(0.0)
        cr = _count(at, ts, Gs, speed, omega, cfg)
        return IndexResult(sum(s for _, s in cr), omega, 0, cr, seed=seed)
    # degenerate end: smallest index among the two rotational pushes off the hypersurface
    delta = min(cfg.endpoint_delta, _gap(E, omega, cfg) / 4)
    for _ in range(cfg.endpoint_escalations + 1):
        vals = {}
        for sgn in (1, -1):
            got = []
            for d in (delta, delta / 4):
                at, ts, Gs, speed = engine.evaluator(sgn * d)
                if nu_omega(Gs[-1], omega, cfg):
                    raise DegeneracyError("end point still degenerate after rotation push")
                cr = _count(at, ts, Gs, speed, omega, cfg)
                got.append((sum(s for _, s in cr), cr))
            if got[0][0] != got[1][0]:
                break
            vals[sgn] = got[0]
        # the push s ↦ E e^{sJ} is positive, so the branches differ by exactly ν; a larger
        # gap means the push also dragged a nearby eigenvalue (Jordan blocks move like √δ)
        if len(vals) == 2 and vals[1][0] - vals[-1][0] == nu:
            lo = min(vals, key=lambda s: vals[s][0])
            return IndexResult(vals[lo][0], omega, nu, vals[lo][1],
                               branches={"+": vals[1][0], "-": vals[-1][0]}, seed=seed)
        delta /= 10
    raise DegeneracyError("degenerate end point: index not stable under shrinking the push")


def index_omega(path: Arc, omega: complex = 1.0, config: RunConfig | None = None, full: bool = False):
    """ω-index ``i_ω(γ)`` of a path; with ``full=True`` returns the :class:`IndexResult`."""
    res = index_omega_many(path, [omega], config)[0]
    return res if full else res.value


def unit(theta: float) -> complex:
    return cmath.exp(1j * theta)
