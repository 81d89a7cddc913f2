"""Common index jump certificates.

A certificate is ``(N, M, (m_j, χ_j))`` with

    m_j = ([N / (M î_j)] + χ_j) M,      χ_j ∈ {0, 1},

where ``M`` clears the denominators of every rational eigenvalue angle
``θ/π``.  Candidates are found by scanning ``N`` upward: for a rational
mean index ``N/(M î_j)`` must be an integer (then ``χ_j = 0``), for an
irrational one its fractional part must sit just below 1 (``χ_j = 1``) or
essentially at 0 (``χ_j = 0``).  Each candidate is then checked against the
index inequalities at ``2m_j`` and ``2m_j ± 1`` using Bott sums over the
ω-index profile, so correctness never rests on the search heuristic.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import RunConfig, resolve
from .errors import ClassificationError, ExhaustionError, ParameterError, PreconditionError
from .iteration import OmegaIndexProfile, as_profile, iteration_gap_check

# ---------------------------------------------------------------------------
# common multiple


def _profiles(paths, cfg) -> list[OmegaIndexProfile]:
    if not paths:
        raise ParameterError("need at least one path")
    return [as_profile(p, cfg) for p in paths]


def common_multiple(paths, config: RunConfig | None = None) -> int:
    """Least ``M ≥ 1`` with ``M θ/π ∈ Z`` for every rational unit-eigenvalue angle of every path."""
    cfg = resolve(config)
    M = 1
    for prof in _profiles(paths, cfg):
        for bp in prof.breakpoints:
            frac = bp.angle_over_pi
            if frac is None:
                continue
            if frac.denominator > cfg.max_denominator:
                raise ClassificationError(
                    f"angle {frac}π has denominator above the cutoff {cfg.max_denominator}"
                )
            M = math.lcm(M, frac.denominator)
    return M


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Check:
    name: str
    path: int
    lhs: int
    rhs: int
    slack: int

    @property
    def ok(self) -> bool:
        return self.slack >= 0


@dataclass
class JumpReport:
    structural: list = field(default_factory=list)  # (path, message) of failures
    checks: list = field(default_factory=list)
    all_m: str = "certified"  # or "inconclusive"
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and all(c.ok for c in self.checks)

    @property
    def min_slack(self):
        return min((c.slack for c in self.checks), default=None)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "structural_failures": [list(x) for x in self.structural],
            "all_m": self.all_m,
            "min_slack": self.min_slack,
            "checks": [
                {"name": c.name, "path": c.path, "lhs": c.lhs, "rhs": c.rhs, "slack": c.slack, "ok": c.ok}
                for c in self.checks
            ],
            "notes": list(self.notes),
        }


@dataclass
class JumpCertificate:
    N: int
    M_common: int
    m: tuple
    chi: tuple
    eps_used: float
    mean_indices: tuple = ()
    verification: JumpReport | None = None

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "M_common": self.M_common,
            "m": list(self.m),
            "chi": list(self.chi),
            "eps_used": self.eps_used,
            "mean_indices": [str(x) if isinstance(x, Fraction) else x for x in self.mean_indices],
            "verification": None if self.verification is None else self.verification.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "JumpCertificate":
        mis = []
        for x in d.get("mean_indices", []):
            mis.append(Fraction(x) if isinstance(x, str) else float(x))
        return cls(int(d["N"]), int(d["M_common"]), tuple(int(v) for v in d["m"]),
                   tuple(int(v) for v in d["chi"]), float(d.get("eps_used", 0.0)), tuple(mis))


def _floor_ratio(N: int, M: int, mi) -> int:
    if isinstance(mi, Fraction):
        return math.floor(Fraction(N) / (M * mi))
    return math.floor(N / (M * mi))


def structural_check(cert: JumpCertificate, mean_indices) -> list:
    """Failures of ``m_j = ([N/(M î_j)] + χ_j) M`` and of the rational-case conditions."""
    out = []
    if len(cert.m) != len(mean_indices) or len(cert.chi) != len(mean_indices):
        return [(-1, "certificate and path list have different lengths")]
    for j, (mj, chi, mi) in enumerate(zip(cert.m, cert.chi, mean_indices)):
        if chi not in (0, 1):
            out.append((j, f"χ = {chi} is not 0 or 1"))
            continue
        want = (_floor_ratio(cert.N, cert.M_common, mi) + chi) * cert.M_common
        if mj != want or mj < 1:
            out.append((j, f"m = {mj} but ([N/(Mî)] + χ)M = {want}"))
        if isinstance(mi, Fraction):
            q = Fraction(cert.N) / (cert.M_common * mi)
            if q.denominator != 1 or chi != 0:
                out.append((j, f"rational î: N/(Mî) = {q} must be an integer with χ = 0"))
            elif 2 * mj * mi != 2 * cert.N:
                out.append((j, "rational î: 2 m î ≠ 2N"))
    return out


def verify_jump(cert: JumpCertificate, paths, n: int | None = None, bumpy: bool = False,
                config: RunConfig | None = None, profiles=None) -> JumpReport:
    """Check a certificate against the index inequalities at ``2m_j`` and ``2m_j ± 1``.

    ``n`` is the sphere dimension (path half-dimension plus one by default).
    The statements for all ``m ≥ 1`` follow from the ``m = 1`` case once the
    iteration gap slacks are nonnegative; otherwise they are reported as
    inconclusive.
    """
    cfg = resolve(config)
    profs = profiles if profiles is not None else _profiles(paths, cfg)
    if n is None:
        n = profs[0].n + 1
    mis = [p.mean_index() for p in profs]
    rep = JumpReport(structural=structural_check(cert, mis))
    if rep.structural:
        return rep
    N2 = 2 * cert.N
    for j, (prof, mj) in enumerate(zip(profs, cert.m)):
        e = prof.elliptic_height
        i1, nu1 = prof.i1, prof.nu1
        s_plus = prof.splitting_at(0.0)[0] if nu1 else 0
        i_mid, nu_mid = prof.index(2 * mj)
        i_lo, nu_lo = prof.index(2 * mj - 1)
        i_hi, _ = prof.index(2 * mj + 1)

        def add(name, lhs, rhs):
            rep.checks.append(Check(name, j, lhs, rhs, lhs - rhs))

        def add_le(name, lhs, rhs):
            rep.checks.append(Check(name, j, lhs, rhs, rhs - lhs))

        if 2 * (e // 2) != e:
            rep.structural.append((j, f"odd elliptic height {e}"))
        add("i(2m) >= 2N - e/2", i_mid, N2 - e // 2)
        add_le("i(2m)+nu(2m) <= 2N + e/2", i_mid + nu_mid, N2 + e // 2)
        add_le("i(2m-1)+nu(2m-1) <= 2N - (i(1) + 2S+(1) - nu(1))", i_lo + nu_lo, N2 - (i1 + 2 * s_plus - nu1))
        add("i(2m+1) >= 2N + i(1)", i_hi, N2 + i1)
        add("i(2m) >= 2N - (n-1)", i_mid, N2 - (n - 1))
        add_le("i(2m)+nu(2m) <= 2N + (n-1)", i_mid + nu_mid, N2 + (n - 1))
        if bumpy:
            add_le("i(2m-1)+nu(2m-1) <= 2N - (n-1)", i_lo + nu_lo, N2 - (n - 1))
            bad = [m for m in (2 * mj - 1, 2 * mj, 2 * mj + 1) if prof.bott_nullity(m) and m >= 1]
            bad += [m for m in range(1, cfg.gap_m_max + 1) if prof.bott_nullity(m)]
            if bad:
                rep.structural.append((j, f"bumpy mode but ν(γ, m) > 0 for m in {sorted(set(bad))}"))
        else:
            add_le("i(2m-1)+nu(2m-1) <= 2N", i_lo + nu_lo, N2)
        add("i(2m+1) >= 2N + (n-1)", i_hi, N2 + (n - 1))
        gap = iteration_gap_check(prof, cfg.gap_m_max, cfg)
        if gap.baseline < 0 or not gap.ok:
            rep.all_m = "inconclusive"
            rep.notes.append(f"path {j}: iteration gap slack negative; all-m claims not certified")
    return rep


# ---------------------------------------------------------------------------
# search


def _scan_chunk(ks: np.ndarray, L: int, M: int, irr: list, eps: float):
    """Candidate ``N = L k`` and the χ for each irrational path, vectorised over ``k``."""
    N = ks * L
    mask = np.ones(len(ks), dtype=bool)
    chis = []
    for mi in irr:
        x = N / (M * mi)
        fr = x - np.floor(x)
        hi = fr >= 1.0 - eps
        lo = fr <= eps * 1e-3
        mask &= hi | lo
        chis.append(np.where(hi, 1, 0))
    idx = np.nonzero(mask)[0]
    return [(int(N[i]), tuple(int(c[i]) for c in chis)) for i in idx]


@dataclass
class SearchStats:
    scanned: int = 0
    candidates: int = 0
    rejected: int = 0
    step: int = 1
    n_max: int = 0

    def to_dict(self):
        return dict(self.__dict__)


def find_jump(paths, how_many: int | None = None, eps: float | None = None, n_max: int | None = None,
              n: int | None = None, bumpy: bool = False, config: RunConfig | None = None,
              stats: SearchStats | None = None) -> list[JumpCertificate]:
    """First ``how_many`` verified certificates in increasing ``N ≤ n_max``."""
    cfg = resolve(config)
    how_many = cfg.jump_count if how_many is None else how_many
    eps = cfg.jump_eps if eps is None else eps
    n_max = cfg.jump_n_max if n_max is None else n_max
    if how_many < 1 or not 0 < eps < 1 or n_max < 1:
        raise ParameterError("need how_many ≥ 1, 0 < ε < 1 and N_max ≥ 1")
    profs = _profiles(paths, cfg)
    n = profs[0].n + 1 if n is None else n
    M = common_multiple(profs, cfg)
    mis = [p.mean_index() for p in profs]
    for j, mi in enumerate(mis):
        if float(mi) <= 0:
            raise PreconditionError(f"path {j} has mean index {mi} ≤ 0")
        if float(mi) <= n - 1:
            warnings.warn(f"path {j} has mean index {float(mi):.6g} ≤ n-1 = {n - 1}", RuntimeWarning)
    L = 1
    for mi in mis:
        if isinstance(mi, Fraction):
            L = math.lcm(L, (M * mi).numerator)
    irr_idx = [j for j, mi in enumerate(mis) if not isinstance(mi, Fraction)]
    irr = [float(mis[j]) for j in irr_idx]
    stats = SearchStats(step=L, n_max=n_max) if stats is None else stats
    stats.step, stats.n_max = L, n_max

    def make(N, chis):
        chi_by = dict(zip(irr_idx, chis))
        ms, cs = [], []
        for j, mi in enumerate(mis):
            c = chi_by.get(j, 0)
            ms.append((_floor_ratio(N, M, mi) + c) * M)
            cs.append(c)
        return JumpCertificate(N, M, tuple(ms), tuple(cs), eps, tuple(mis))

    def verify(item):
        cert = make(*item)
        if min(cert.m) < 1:
            return None
        cert.verification = verify_jump(cert, None, n, bumpy, cfg, profiles=profs)
        return cert if cert.verification.ok else None

    out: list[JumpCertificate] = []
    k_max = n_max // L
    chunk = max(1, cfg.jump_chunk)
    workers = max(1, cfg.workers)
    starts = list(range(1, k_max + 1, chunk))
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for b in range(0, len(starts), workers):
            batch = starts[b:b + workers]
            ranges = [np.arange(s, min(s + chunk, k_max + 1), dtype=np.int64) for s in batch]
            fn = lambda ks: _scan_chunk(ks, L, M, irr, eps)  # noqa: E731
            found = list(pool.map(fn, ranges)) if pool else [fn(r) for r in ranges]
            for ks, cands in zip(ranges, found):
                stats.scanned += len(ks)
                stats.candidates += len(cands)
                # verify lazily in ascending N so the result does not depend on workers
                step = 4 * workers
                for a in range(0, len(cands), step):
                    part = cands[a:a + step]
                    certs = list(pool.map(verify, part)) if pool else [verify(c) for c in part]
                    for c in certs:
                        if c is None:
                            stats.rejected += 1
                            continue
                        out.append(c)
                        if len(out) == how_many:
                            return out
    finally:
        if pool:
            pool.shutdown()
    raise ExhaustionError(
        f"found {len(out)} of {how_many} certificates with N ≤ {n_max}", {**stats.to_dict(), "found": len(out)}
    )
