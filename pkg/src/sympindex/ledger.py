"""Counting ledger for finite ensembles of closed-geodesic models.

The variational facts about the energy functional enter only through their
consequences for finite data:

* a critical module in degree ``q`` at ``c^m`` needs
  ``i(c^m) ≤ q ≤ i(c^m) + ν(c^m)``;
* the critical values ``κ_i`` attached to the class degrees
  ``2i + dim_z - 2`` are pairwise distinct;
* models carrying such degrees share one ratio ``î(c)/L(c)``;
* ``L(c^m) = m L(c)``, ``î(c^m) = m î(c)`` and ``L = √(2E)``.

Given a jump certificate the ledger assigns the degrees in the window above
``2N`` to distinct models, and audits rational mean indices: two rational
visible models would need ``2 m_j î_j = 2N = 2 m_k î_k`` and, through the
common ratio, equal energies, which distinct critical values forbid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .config import RunConfig, resolve
from .errors import ParameterError, PreconditionError
from .index_jump import JumpCertificate
from .iteration import OmegaIndexProfile, as_profile


@dataclass
class GeodesicModel:
    """One prime closed geodesic: its index data, length and energy."""

    id: str
    length: float
    energy: float
    path: object = None
    profile: OmegaIndexProfile | None = None
    prime: bool = True

    def __post_init__(self):
        if self.path is None and self.profile is None:
            raise ParameterError(f"model {self.id!r} needs a path or a profile")
        if self.length <= 0 or self.energy <= 0:
            raise ParameterError(f"model {self.id!r} needs positive length and energy")

    def index_data(self, config: RunConfig | None = None) -> OmegaIndexProfile:
        if self.profile is None:
            self.profile = as_profile(self.path, config)
        return self.profile

    def index(self, m: int, config: RunConfig | None = None) -> tuple[int, int]:
        return self.index_data(config).index(m)

    def mean_index(self, config: RunConfig | None = None):
        return self.index_data(config).mean_index()

    def energy_of(self, m: int) -> float:
        return m * m * self.energy


@dataclass
class GeodesicEnsemble:
    models: list
    n: int
    dim_z: int | None = None
    pinched: bool = True
    bumpy: bool = False
    reversibility: float = 1.0
    curvature: tuple | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError("sphere dimension must be at least 2")
        if self.dim_z is None:
            self.dim_z = self.n + 1
        ids = [m.id for m in self.models]
        if len(set(ids)) != len(ids):
            raise ParameterError("model ids must be distinct")

    def model(self, mid: str) -> GeodesicModel:
        for m in self.models:
            if m.id == mid:
                return m
        raise KeyError(mid)

    def profiles(self, config: RunConfig | None = None):
        return [m.index_data(config) for m in self.models]


# ---------------------------------------------------------------------------
# hypotheses


def hypothesis_check(ens: GeodesicEnsemble, config: RunConfig | None = None) -> dict:
    """Per-model threshold, nondegeneracy and length/energy checks (report only)."""
    cfg = resolve(config)
    n = ens.n
    violations, rows = [], []
    for mdl in ens.models:
        prof = mdl.index_data(cfg)
        mi = prof.mean_index()
        row = {"id": mdl.id, "i": prof.i1, "nu": prof.nu1, "mean_index": _num(mi),
               "e": prof.elliptic_height}
        if ens.pinched:
            if prof.i1 < n - 1:
                violations.append((mdl.id, f"i(c) = {prof.i1} < n-1 = {n - 1}"))
            if not mi > n - 1:
                violations.append((mdl.id, f"mean index {_num(mi)} is not > n-1 = {n - 1}"))
        if ens.bumpy:
            bad = [m for m in range(1, cfg.gap_m_max + 1) if prof.bott_nullity(m)]
            if bad:
                violations.append((mdl.id, f"degenerate iterates m = {bad}"))
        if abs(mdl.length - math.sqrt(2 * mdl.energy)) > cfg.length_tol * max(1.0, mdl.length):
            violations.append((mdl.id, f"L = {mdl.length} but √(2E) = {math.sqrt(2 * mdl.energy)}"))
        rows.append(row)
    return {"ok": not violations, "models": rows, "violations": [list(v) for v in violations]}


# ---------------------------------------------------------------------------
# degree windows


def window_bounds(N: int, n: int, bumpy: bool = False) -> tuple[int, int]:
    return (2 * N - (n - 1) if bumpy else 2 * N), 2 * N + n - 1


def window_degrees(N: int, n: int, dim_z: int | None = None, bumpy: bool = False) -> list[tuple[int, int]]:
    """Pairs ``(i, q)`` with ``q = 2i + dim_z - 2`` strictly inside the window."""
    if N < 1 or n < 2:
        raise ParameterError("need N ≥ 1 and n ≥ 2")
    dim_z = n + 1 if dim_z is None else dim_z
    lo, hi = window_bounds(N, n, bumpy)
    i0 = max(1, (lo - dim_z + 2) // 2)
    out = []
    i = i0
    while 2 * i + dim_z - 2 < hi:
        q = 2 * i + dim_z - 2
        if q > lo:
            out.append((i, q))
        i += 1
    return out


def expected_window_count(n: int, bumpy: bool = False) -> int:
    return n - 2 if bumpy else n // 2 - 1


# ---------------------------------------------------------------------------
# visibility


@dataclass
class CriticalAssignment:
    N: int
    degrees: list  # (i, q)
    assignment: dict  # q -> (model id, m, energy)
    candidates: dict  # q -> [model ids]
    rejected: list = field(default_factory=list)  # (q, model id, m): iterates other than 2m_j
    witness: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.witness

    @property
    def visible(self) -> list:
        return sorted({v[0] for v in self.assignment.values()})

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "degrees": [list(d) for d in self.degrees],
            "assignment": {str(q): list(v) for q, v in sorted(self.assignment.items())},
            "candidates": {str(q): v for q, v in sorted(self.candidates.items())},
            "rejected": [list(r) for r in self.rejected],
            "feasible": self.feasible,
            "witness": list(self.witness),
        }


def _match(degrees, cands):
    """Maximum matching of degrees to distinct models (augmenting paths, fixed order)."""
    owner: dict[str, int] = {}

    def augment(q, seen):
        for mid in cands[q]:
            if mid in seen:
                continue
            seen.add(mid)
            if mid not in owner or augment(owner[mid], seen):
                owner[mid] = q
                return True
        return False

    for q in degrees:
        augment(q, set())
    return {q: mid for mid, q in owner.items()}


def visible_map(ens: GeodesicEnsemble, cert: JumpCertificate, config: RunConfig | None = None,
                sweep: int | None = None) -> CriticalAssignment:
    """Assign each window degree to a model whose ``2m_j``-th iterate can carry it."""
    cfg = resolve(config)
    if len(cert.m) != len(ens.models):
        raise ParameterError("certificate does not match the ensemble")
    sweep = cfg.gap_m_max if sweep is None else sweep
    degs = window_degrees(cert.N, ens.n, ens.dim_z, ens.bumpy)
    qs = [q for _, q in degs]
    cands = {q: [] for q in qs}
    rejected = []
    for mdl, mj in zip(ens.models, cert.m):
        prof = mdl.index_data(cfg)
        for m in range(max(1, 2 * mj - sweep), 2 * mj + sweep + 1):
            i, nu = prof.index(m)
            for q in qs:
                if i <= q <= i + nu:
                    if m == 2 * mj:
                        cands[q].append(mdl.id)
                    else:
                        rejected.append((q, mdl.id, m))
    match = _match(qs, cands)
    mj_of = {mdl.id: mj for mdl, mj in zip(ens.models, cert.m)}
    assignment = {}
    for q, mid in match.items():
        m = 2 * mj_of[mid]
        assignment[q] = (mid, m, ens.model(mid).energy_of(m))
    witness = []
    missing = [q for q in qs if q not in assignment]
    if missing:
        witness.append(f"degrees {missing} cannot be carried by distinct models: "
                       "inconsistent with finitely many prime closed geodesics")
    seen: dict = {}
    for q, (mid, m, en) in sorted(assignment.items()):
        for q2, en2 in seen.items():
            if abs(en - en2) <= 1e-12 * max(en, en2):
                witness.append(f"degrees {q2} and {q} sit at the same critical value {en}; "
                               "critical values must be distinct")
        seen[q] = en
    return CriticalAssignment(cert.N, degs, assignment, cands, rejected, witness)


# ---------------------------------------------------------------------------
# ratio and rationality


def sigma_ratio_check(ens: GeodesicEnsemble, visible, config: RunConfig | None = None) -> dict:
    """All visible models must share ``î(c)/L(c) = 2σ``."""
    cfg = resolve(config)
    visible = list(visible)
    if not visible:
        raise ParameterError("need at least one visible model")
    ratios = {mid: float(ens.model(mid).mean_index(cfg)) / ens.model(mid).length for mid in visible}
    vals = list(ratios.values())
    spread = max(vals) - min(vals)
    ok = spread <= cfg.ratio_tol * max(1.0, max(abs(v) for v in vals))
    return {"ok": bool(ok), "ratios": ratios, "two_sigma": sum(vals) / len(vals) if ok else None,
            "spread": spread}


def rational_average_audit(ens: GeodesicEnsemble, certs, config: RunConfig | None = None) -> dict:
    """Replay the rationality argument for each certificate.

    For every pair of visible models with rational mean index the report
    shows ``2 m_j î_j = 2N = 2 m_k î_k`` next to ``2σ √(2 κ_j)`` and
    ``2σ √(2 κ_k)``; distinct critical values make the two lines
    incompatible, so at most one visible model can have a rational mean
    index.
    """
    cfg = resolve(config)
    if not certs:
        raise ParameterError("need at least one certificate")
    bound = ens.n - 3 if ens.bumpy else ens.n // 2 - 2
    rows = []
    for cert in certs:
        vm = visible_map(ens, cert, cfg)
        vis = vm.visible
        sig = sigma_ratio_check(ens, vis, cfg) if vis else {"ok": True, "two_sigma": None}
        if not sig["ok"]:
            raise PreconditionError(f"visible models at N={cert.N} do not share î/L; audit needs a common σ")
        two_sigma = sig["two_sigma"]
        mj_of = {mdl.id: mj for mdl, mj in zip(ens.models, cert.m)}
        rational = [mid for mid in vis if isinstance(ens.model(mid).mean_index(cfg), Fraction)]
        contradictions = []
        for a in range(len(rational)):
            for b in range(a + 1, len(rational)):
                j, k = rational[a], rational[b]
                mij, mik = ens.model(j).mean_index(cfg), ens.model(k).mean_index(cfg)
                lhs_j, lhs_k = 2 * mj_of[j] * mij, 2 * mj_of[k] * mik
                kap_j = ens.model(j).energy_of(2 * mj_of[j])
                kap_k = ens.model(k).energy_of(2 * mj_of[k])
                contradictions.append({
                    "pair": [j, k],
                    "equal_via_jump": [str(lhs_j), str(2 * cert.N), str(lhs_k)],
                    "jump_equality_holds": lhs_j == 2 * cert.N == lhs_k,
                    "via_sigma": [two_sigma * math.sqrt(2 * kap_j), two_sigma * math.sqrt(2 * kap_k)],
                    "kappas": [kap_j, kap_k],
                })
        forced = max(0, len(vis) - 1)
        observed = len(vis) - len(rational)
        rows.append({
            "N": cert.N,
            "visible": vis,
            "assignment_feasible": vm.feasible,
            "witness": vm.witness,
            "two_sigma": two_sigma,
            "rational_visible": rational,
            "contradictions": contradictions,
            "forced_irrational": forced,
            "observed_irrational": observed,
            "bound": bound,
            "meets_bound": forced >= bound,
        })
    return {
        "bound": bound,
        "certificates": rows,
        "contradiction_found": any(r["contradictions"] for r in rows),
        "forced_irrational": min(r["forced_irrational"] for r in rows),
        "ok": all(r["meets_bound"] and r["assignment_feasible"] for r in rows),
    }


def kappa_sequence(ens: GeodesicEnsemble, horizon: int) -> dict:
    """Energies ``E(c^m) = m² E(c)`` for ``m ≤ horizon``, ascending, with coincidences flagged."""
    if horizon < 1:
        raise ParameterError("horizon must be at least 1")
    vals = sorted((mdl.energy_of(m), mdl.id, m) for mdl in ens.models for m in range(1, horizon + 1))
    dups = []
    for (e1, a, m1), (e2, b, m2) in zip(vals, vals[1:]):
        if abs(e2 - e1) <= 1e-12 * max(abs(e1), abs(e2)):
            dups.append([[a, m1], [b, m2], e1])
    return {"values": [list(v) for v in vals], "duplicates": dups,
            "verdict": "inconsistent with finitely many prime closed geodesics" if dups else "distinct"}


def _num(x):
    return str(x) if isinstance(x, Fraction) else float(x)
