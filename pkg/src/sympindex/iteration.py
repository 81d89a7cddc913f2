"""Index profile on the unit circle and the iterated index.

The map ``θ ↦ i_{e^{iθ}}(γ)`` is an integer step function whose only
possible breakpoints are the unit-eigenvalue angles of ``γ(τ)`` (and 0).
Knowing it on each open arc and at each breakpoint gives every iterate by
summing over roots of unity, and the mean index as its circle average.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .config import RunConfig, resolve
from .core import TWO_PI, unit_spectrum
from .errors import EngineInconsistencyError, ParameterError
from .paths import Arc, index_omega, index_omega_many, iterate_path, unit


@dataclass(frozen=True)
class Breakpoint:
    angle: float
    angle_over_pi: Fraction | None
    value: int
    nullity: int
    algebraic_mult: int = 0


@dataclass(frozen=True)
class OmegaIndexProfile:
    """Step function ``θ ↦ i_{e^{iθ}}``.

    ``arc_values[k]`` is the value on the open arc from breakpoint ``k`` to
    breakpoint ``k+1`` (the last arc ends at 2π).  Breakpoint 0 is always
    present.
    """

    n: int
    breakpoints: tuple
    arc_values: tuple
    elliptic_height: int

    # -- evaluation -------------------------------------------------------
    def value_at(self, theta: float, tol: float = 1e-10) -> int:
        theta = theta % TWO_PI
        for k, bp in enumerate(self.breakpoints):
            if abs(theta - bp.angle) <= tol or abs(theta - bp.angle - TWO_PI) <= tol:
                return bp.value
        for k in range(len(self.breakpoints) - 1, -1, -1):
            if theta > self.breakpoints[k].angle:
                return self.arc_values[k]
        return self.arc_values[-1]

    def jumps(self, k: int) -> tuple[int, int]:
        """``(S+, S-)`` at breakpoint ``k`` read off the profile."""
        bp = self.breakpoints[k]
        above = self.arc_values[k]
        below = self.arc_values[k - 1]
        return above - bp.value, below - bp.value

    def splitting_at(self, theta: float, tol: float = 1e-10) -> tuple[int, int]:
        for k, bp in enumerate(self.breakpoints):
            if abs(theta % TWO_PI - bp.angle) <= tol:
                return self.jumps(k)
        return 0, 0

    @property
    def i1(self) -> int:
        return self.breakpoints[0].value

    @property
    def nu1(self) -> int:
        return self.breakpoints[0].nullity

    @property
    def rational(self) -> bool:
        return all(bp.angle_over_pi is not None for bp in self.breakpoints)

    # -- mean index -------------------------------------------------------
    def mean_index(self):
        """Circle average; a ``Fraction`` when every breakpoint angle is a rational multiple of π."""
        bps = self.breakpoints
        if self.rational:
            total = Fraction(0)
            for k, bp in enumerate(bps):
                nxt = bps[k + 1].angle_over_pi if k + 1 < len(bps) else Fraction(2)
                total += (nxt - bp.angle_over_pi) * self.arc_values[k]
            return total / 2
        total = 0.0
        for k, bp in enumerate(bps):
            nxt = bps[k + 1].angle if k + 1 < len(bps) else TWO_PI
            total += (nxt - bp.angle) * self.arc_values[k]
        return total / TWO_PI

    # -- Bott sums --------------------------------------------------------
    def _is_root(self, bp: Breakpoint, m: int) -> bool:
        if bp.angle_over_pi is None:
            return False
        f = bp.angle_over_pi * m / 2
        return f.denominator == 1

    @staticmethod
    def _roots_between(a, b, m: int) -> int:
        # number of integers k with a < 2πk/m < b, angles given as θ/π (exact) or radians;
        # each end is scaled on its own so a rational end stays exact
        x = a * m / 2 if isinstance(a, Fraction) else a * m / TWO_PI
        y = b * m / 2 if isinstance(b, Fraction) else b * m / TWO_PI
        return math.ceil(y) - math.floor(x) - 1

    def bott_index(self, m: int) -> int:
        """``i(γ, m) = Σ_{ω^m = 1} i_ω(γ)``."""
        if m < 1:
            raise ParameterError("m must be positive")
        total = 0
        bps = self.breakpoints
        for k, bp in enumerate(bps):
            if self._is_root(bp, m):
                total += bp.value
            a = bp.angle_over_pi if bp.angle_over_pi is not None else bp.angle
            if k + 1 < len(bps):
                nb = bps[k + 1]
                b = nb.angle_over_pi if nb.angle_over_pi is not None else nb.angle
            else:
                b = Fraction(2)
            total += self.arc_values[k] * self._roots_between(a, b, m)
        return total

    def bott_nullity(self, m: int) -> int:
        return sum(bp.nullity for bp in self.breakpoints if self._is_root(bp, m))

    def index(self, m: int) -> tuple[int, int]:
        return self.bott_index(m), self.bott_nullity(m)

    # -- serialisation ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "elliptic_height": self.elliptic_height,
            "breakpoints": [
                {
                    "angle": bp.angle,
                    "angle_over_pi": None if bp.angle_over_pi is None else str(bp.angle_over_pi),
                    "value": bp.value,
                    "nullity": bp.nullity,
                    "algebraic_mult": bp.algebraic_mult,
                }
                for bp in self.breakpoints
            ],
            "arc_values": list(self.arc_values),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OmegaIndexProfile":
        bps = []
        for b in d["breakpoints"]:
            frac = None if b.get("angle_over_pi") is None else Fraction(b["angle_over_pi"])
            angle = float(frac) * math.pi if frac is not None else float(b["angle"])
            bps.append(Breakpoint(angle, frac, int(b["value"]), int(b["nullity"]), int(b.get("algebraic_mult", 0))))
        if not bps or bps[0].angle != 0.0:
            raise ParameterError("profile must start with the breakpoint at angle 0")
        if len(d["arc_values"]) != len(bps):
            raise ParameterError("need one arc value per breakpoint")
        return cls(int(d["n"]), tuple(bps), tuple(int(v) for v in d["arc_values"]), int(d["elliptic_height"]))


def omega_profile(path: Arc, config: RunConfig | None = None) -> OmegaIndexProfile:
    cfg = resolve(config)
    spec = unit_spectrum(path.end, cfg)
    angles = {0.0: (Fraction(0), 0)}
    for u in spec:
        angles[u.angle] = (u.angle_over_pi, u.algebraic_mult)
    bp_angles = sorted(angles)
    ends = bp_angles[1:] + [TWO_PI]
    mids = [(a + b) / 2 for a, b in zip(bp_angles, ends)]
    res = index_omega_many(path, [unit(a) for a in bp_angles] + [unit(a) for a in mids], cfg)
    k = len(bp_angles)
    bps = tuple(
        Breakpoint(a, angles[a][0], res[i].value, res[i].nullity, angles[a][1]) for i, a in enumerate(bp_angles)
    )
    return OmegaIndexProfile(path.n, bps, tuple(r.value for r in res[k:]), spec.elliptic_height)


def as_profile(obj, config: RunConfig | None = None) -> OmegaIndexProfile:
    return obj if isinstance(obj, OmegaIndexProfile) else omega_profile(obj, config)


@dataclass(frozen=True)
class IterationTable:
    rows: tuple  # (m, i, nu)
    mean_index: object

    def to_dict(self) -> dict:
        mi = self.mean_index
        return {
            "rows": [{"m": m, "i": i, "nu": nu} for m, i, nu in self.rows],
            "mean_index": str(mi) if isinstance(mi, Fraction) else mi,
            "mean_index_float": float(mi),
        }


def direct_index(path: Arc, m: int, config: RunConfig | None = None) -> tuple[int, int]:
    """``(i_1(γ^m), ν_1(γ^m))`` by counting crossings along the iterated path."""
    it = iterate_path(path, m)
    r = index_omega(it, 1.0, config, full=True)
    return r.value, r.nullity


def index_iterates(path: Arc, m_max: int, config: RunConfig | None = None, profile=None,
                   cross_check: bool = True) -> IterationTable:
    """Rows ``(m, i(γ,m), ν(γ,m))`` for ``m ≤ m_max``.

    Every row comes from the Bott sum over the profile; with ``cross_check`` it
    is also recomputed on the iterated path and a mismatch raises
    :class:`EngineInconsistencyError`.
    """
    cfg = resolve(config)
    if m_max < 1:
        raise ParameterError("m_max must be at least 1")
    prof = profile if profile is not None else omega_profile(path, cfg)
    rows = [(m, *prof.index(m)) for m in range(1, m_max + 1)]
    if cross_check:
        ms = list(range(1, m_max + 1))
        if cfg.workers > 1:
            with ThreadPoolExecutor(cfg.workers) as ex:
                direct = list(ex.map(lambda m: direct_index(path, m, cfg), ms))
        else:
            direct = [direct_index(path, m, cfg) for m in ms]
        for (m, i, nu), (di, dnu) in zip(rows, direct):
            if (i, nu) != (di, dnu):
                raise EngineInconsistencyError(
                    f"Bott sum gives (i, ν) = ({i}, {nu}) at m={m} but the iterated path gives ({di}, {dnu})"
                )
    return IterationTable(tuple(rows), prof.mean_index())


def mean_index(path_or_profile, config: RunConfig | None = None, check_upto: int = 64):
    """Mean index; exact ``Fraction`` when all unit-eigenvalue angles are rational multiples of π."""
    prof = as_profile(path_or_profile, config)
    mi = prof.mean_index()
    for m in range(1, check_upto + 1):
        if abs(prof.bott_index(m) / m - float(mi)) > 2 * prof.n / m + 1e-12:
            raise EngineInconsistencyError(f"|i(γ,{m})/{m} - î| exceeds 2n/m")
    return mi


@dataclass(frozen=True)
class GapReport:
    baseline: int  # i(γ,1) - e/2
    slacks: tuple  # (m, slack)

    @property
    def violations(self):
        return [(m, s) for m, s in self.slacks if s < 0]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"baseline": self.baseline, "slacks": [list(x) for x in self.slacks], "ok": self.ok}


def iteration_gap_check(path_or_profile, m_max: int, config: RunConfig | None = None) -> GapReport:
    """Slack of ``i(m+1) - i(m) - ν(m) ≥ i(1) - e/2`` for ``1 ≤ m < m_max``."""
    if m_max < 2:
        raise ParameterError("m_max must be at least 2")
    prof = as_profile(path_or_profile, config)
    base = prof.i1 - prof.elliptic_height // 2
    idx = [prof.index(m) for m in range(1, m_max + 1)]
    slacks = tuple((m, idx[m][0] - idx[m - 1][0] - idx[m - 1][1] - base) for m in range(1, m_max))
    return GapReport(base, slacks)
