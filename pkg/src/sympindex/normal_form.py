"""Basic-normal-form representatives with the same unit-circle invariants.

The target is not a conjugacy normal form.  A decomposition reproduces, at
every unit eigenvalue ω, the nullity ``ν_ω``, the algebraic multiplicity and
the splitting numbers ``S±(ω)``; everything off the unit circle goes into a
remainder ``G`` written in a symplectic basis of its invariant subspace.

At ``ω = ±1`` the counts of ``N1(±1, b)`` blocks follow from ``ν``, the
algebraic multiplicity ``a`` and ``S+``.  At ``ω = e^{iθ}``, ``θ ∈ (0, π)``,
rotations contribute ``(1, 1)`` to ``(a, ν)`` and ``N2`` blocks ``(2, 1)``,
so their numbers are ``2ν - a`` and ``a - ν``; the splitting numbers then
separate ``R(θ)`` from ``R(2π - θ)`` and trivial from non-trivial ``N2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur

from .config import RunConfig, resolve
from .core import (
    J,
    NormalFormFactor,
    check_symplectic,
    compose,
    diamond,
    half_dim,
    nu_omega,
    unit_spectrum,
)
from .errors import DecompositionError
from .splitting import SplittingPair, splitting_numbers, splitting_of_product, splitting_table


def _solve_pm1(nu: int, a: int, s_plus: int, lam: int):
    """Counts of ``N1(λ, b)`` blocks at ``λ = ±1`` as ``(carrying, identity, empty)``.

    ``carrying`` blocks have ``S± = 1`` and ``ν = 1`` (``b = 1`` at 1, ``b = -1``
    at -1), ``identity`` blocks are ``±I_2`` and ``empty`` ones have ``S± = 0``.
    """
    if a % 2:
        raise DecompositionError(f"odd algebraic multiplicity {a} at {lam}", lam, (s_plus,))
    p0 = nu - a // 2
    pc = s_plus - p0
    pe = a // 2 - s_plus
    if min(p0, pc, pe) < 0:
        raise DecompositionError(
            f"no N1({lam}, b) pattern with ν={nu}, a={a}, S+={s_plus}; larger Jordan blocks are not supported",
            lam, (s_plus, s_plus),
        )
    if 2 * s_plus - nu != pc - pe:
        raise DecompositionError("block counts fail the consistency relation", lam, (s_plus, s_plus))
    return pc, p0, pe


def eigen1_block_counts(M, config: RunConfig | None = None) -> tuple[int, int, int]:
    """``(p_minus, p_zero, p_plus)``: numbers of ``N1(1,1)``, ``I_2`` and ``N1(1,-1)`` blocks."""
    cfg = resolve(config)
    M = check_symplectic(M, cfg)
    u = unit_spectrum(M, cfg).find(1.0)
    if u is None:
        return 0, 0, 0
    sp = splitting_numbers(M, 1.0, config=cfg).s_plus
    return _solve_pm1(nu_omega(M, 1.0, cfg), u.algebraic_mult, sp, 1)


@dataclass
class NormalFormDecomposition:
    factors: list
    remainder_G: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def dims(self) -> int:
        return sum(f.dim for f in self.factors) + self.remainder_G.shape[0]

    def recompose(self) -> np.ndarray:
        mats = [f.matrix() for f in self.factors]
        if self.remainder_G.size:
            mats.append(self.remainder_G)
        return diamond(*mats)

    def labels(self) -> list[str]:
        return [f.label() for f in self.factors]

    def to_dict(self) -> dict:
        G = self.remainder_G
        return {
            "factors": self.labels(),
            "remainder": G.tolist(),
            "remainder_spectrum": [[float(z.real), float(z.imag)] for z in np.linalg.eigvals(G)] if G.size else [],
            "provenance": self.provenance,
        }


def _factors_pm1(lam: int, counts) -> list:
    pc, p0, pe = counts
    carrying, empty = (1, -1) if lam == 1 else (-1, 1)
    return ([NormalFormFactor.N1(lam, carrying)] * pc + [NormalFormFactor.N1(lam, 0)] * p0
            + [NormalFormFactor.N1(lam, empty)] * pe)


def _n2_sign(theta, trivial: bool) -> int:
    """Sign of ``b2 - b3`` for which ``N2(θ, b)`` has ``S± = (1, 1)`` (trivial) or ``(0, 0)``."""
    want = (1, 1) if trivial else (0, 0)
    for s in (1, -1):
        f = NormalFormFactor.N2(theta, sign=s)
        if splitting_table(f, cmath.exp(1j * f.angle)).as_tuple() == want:
            return s
    raise DecompositionError("no N2 representative with the requested splitting", theta, want)


def _rotation_factors(u, s: SplittingPair):
    """Factors carrying the eigenvalue ``e^{iθ}``, ``θ ∈ (0, π)``."""
    a, nu = u.algebraic_mult, u.geometric_mult
    k = a - nu
    rot = 2 * nu - a
    diff = s.s_minus - s.s_plus  # #R(θ) - #R(2π - θ)
    if rot < 0 or (rot + diff) % 2:
        raise DecompositionError(f"unsupported Jordan structure at angle {u.angle}", u.omega, s.as_tuple())
    x, y = (rot + diff) // 2, (rot - diff) // 2
    t2 = s.s_plus + s.s_minus - rot
    if min(x, y) < 0 or t2 % 2 or not 0 <= t2 // 2 <= k:
        raise DecompositionError(
            f"splitting signature {s.as_tuple()} does not match any R/N2 combination with a={a}, ν={nu}",
            u.omega, s.as_tuple(),
        )
    t = t2 // 2
    theta = u.angle_over_pi if u.angle_over_pi is not None else u.angle
    conj = 2 - u.angle_over_pi if u.angle_over_pi is not None else 2 * math.pi - u.angle
    out = [NormalFormFactor.R(theta)] * x + [NormalFormFactor.R(conj)] * y
    if k:
        out += [NormalFormFactor.N2(theta, sign=_n2_sign(theta, True))] * t
        out += [NormalFormFactor.N2(theta, sign=_n2_sign(theta, False))] * (k - t)
    return out, {"x_R": x, "x_R_conj": y, "N2_trivial": t, "N2_nontrivial": k - t}


def _symplectic_basis(V: np.ndarray) -> np.ndarray:
    """Columns ``[e_1..e_m, f_1..f_m]`` spanning ``V`` with ``B^T J B = J_m``."""
    n = V.shape[0] // 2
    Jn = J(n)
    vecs = [V[:, i] for i in range(V.shape[1])]
    es, fs = [], []
    while vecs:
        vals = [abs(vecs[0] @ Jn @ w) for w in vecs[1:]]
        if not vals or max(vals) < 1e-10:
            raise DecompositionError("off-circle invariant subspace is not symplectic", None, ())
        j = 1 + int(np.argmax(vals))
        e, f = vecs[0], vecs[j]
        c = e @ Jn @ f
        f = -f / c  # e^T J f = -1, matching the standard basis
        rest = [w for i, w in enumerate(vecs) if i not in (0, j)]
        proj = []
        for w in rest:
            # remove the components along e and f in the symplectic sense
            w = w + (w @ Jn @ f) * e - (w @ Jn @ e) * f
            proj.append(w)
        es.append(e)
        fs.append(f)
        vecs = proj
    return np.column_stack(es + fs)


def _coordinate_basis(V: np.ndarray, tol: float = 1e-9):
    """Coordinate pairs ``(e_i, e_{n+i})`` spanning ``V`` exactly, if such pairs exist."""
    n = V.shape[0] // 2
    Q, _ = np.linalg.qr(V)
    picks = []
    for i in range(n):
        E = np.zeros((2 * n, 2))
        E[i, 0] = E[n + i, 1] = 1.0
        if np.max(np.abs(E - Q @ (Q.T @ E))) < tol:
            picks.append(i)
    if 2 * len(picks) != V.shape[1]:
        return None
    cols = [np.eye(2 * n)[:, i] for i in picks] + [np.eye(2 * n)[:, n + i] for i in picks]
    return np.column_stack(cols)


def _off_circle_part(M: np.ndarray, cfg: RunConfig) -> np.ndarray:
    n = half_dim(M)
    tol = max(cfg.circle_tol, 1e-6)

    def off(re, im):
        return abs(abs(complex(re, im)) - 1.0) > tol

    T, Z, k = schur(M, output="real", sort=off)
    if k == 0:
        return np.zeros((0, 0))
    if k == 2 * n:
        return M.copy()
    V = Z[:, :k]
    B = _coordinate_basis(V)
    if B is None:
        B = _symplectic_basis(V)
    m = k // 2
    Jm, Jn = J(m), J(n)
    G = -Jm @ B.T @ Jn @ M @ B
    return G


def decompose(M, config: RunConfig | None = None) -> NormalFormDecomposition:
    """Basic normal forms matching ``M`` at every unit eigenvalue, plus the off-circle remainder."""
    cfg = resolve(config)
    M = check_symplectic(M, cfg)
    spec = unit_spectrum(M, cfg)
    factors, prov = [], {}
    for u in spec:
        if math.pi < u.angle:
            continue  # handled together with its conjugate
        s = splitting_numbers(M, u.omega, config=cfg)
        key = str(u.angle_over_pi) + "π" if u.angle_over_pi is not None else f"{u.angle:.12g}"
        info = {"a": u.algebraic_mult, "nu": u.geometric_mult, "s_plus": s.s_plus, "s_minus": s.s_minus}
        if u.angle == 0.0 or u.angle == math.pi:
            lam = 1 if u.angle == 0.0 else -1
            if s.s_plus != s.s_minus:
                raise DecompositionError(f"S+ ≠ S- at real eigenvalue {lam}", lam, s.as_tuple())
            counts = _solve_pm1(u.geometric_mult, u.algebraic_mult, s.s_plus, lam)
            info["counts"] = {"carrying": counts[0], "identity": counts[1], "empty": counts[2]}
            factors += _factors_pm1(lam, counts)
        else:
            new, counts = _rotation_factors(u, s)
            info["counts"] = counts
            factors += new
        prov[key] = info
    G = _off_circle_part(M, cfg)
    dec = NormalFormDecomposition(factors, G, prov)
    if dec.dims != M.shape[0]:
        raise DecompositionError(f"factor dimensions add up to {dec.dims}, expected {M.shape[0]}", None, ())
    return dec


def invariant_report(M, dec: NormalFormDecomposition, config: RunConfig | None = None) -> dict:
    """Compare ν_ω, algebraic multiplicities, splitting numbers and e(·) of ``M`` and its recomposition."""
    cfg = resolve(config)
    M = np.asarray(M, dtype=float)
    R = dec.recompose()
    sm, sr = unit_spectrum(M, cfg), unit_spectrum(R, cfg)
    rows, ok = [], sm.elliptic_height == sr.elliptic_height and len(sm) == len(sr)
    for u in sm:
        v = sr.find(u.omega, 1e-7)
        s_in = splitting_numbers(M, u.omega, config=cfg).as_tuple()
        s_out = splitting_of_product(dec.factors, u.omega).as_tuple()
        match = v is not None and (v.algebraic_mult, v.geometric_mult) == (u.algebraic_mult, u.geometric_mult) \
            and s_in == s_out
        ok = ok and match
        rows.append({
            "angle": u.angle,
            "nu": [u.geometric_mult, None if v is None else v.geometric_mult],
            "algebraic": [u.algebraic_mult, None if v is None else v.algebraic_mult],
            "splitting": [list(s_in), list(s_out)],
            "match": bool(match),
        })
    return {"ok": bool(ok), "e": [sm.elliptic_height, sr.elliptic_height], "eigenvalues": rows}


def recompose(dec: NormalFormDecomposition) -> np.ndarray:
    return dec.recompose()


__all__ = [
    "NormalFormDecomposition",
    "decompose",
    "eigen1_block_counts",
    "invariant_report",
    "recompose",
    "compose",
]
