"""Tolerances and search limits shared by every module.

All knobs live on a frozen :class:`RunConfig`.  Module-level functions take
an optional ``config`` argument and fall back to :data:`DEFAULT`.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, fields

ENV_PREFIX = "SYMPINDEX_"


@dataclass(frozen=True)
class RunConfig:
    # linear algebra
    sympl_tol: float = 1e-9
    circle_tol: float = 1e-9
    cluster_tol: float = 1e-6
    rank_tol: float = 1e-8
    d_omega_imag_tol: float = 1e-9
    # rational recognition of angles (in units of pi)
    rational_tol: float = 1e-10
    max_denominator: int = 1000
    # crossing engine
    step_bound: float = 0.1
    min_samples: int = 24
    bisection_tol: float = 1e-12
    crossing_resolution: float = 1e-7
    refine_budget: int = 200_000
    perturbation_amplitude: float = 0.2
    perturbation_seed: int = 0
    perturbation_retries: int = 3
    endpoint_delta: float = 0.05
    endpoint_escalations: int = 2
    # splitting numbers
    split_eps_max: float = 1e-2
    # common index jump search
    jump_eps: float = 0.05
    jump_n_max: int = 10_000_000
    jump_count: int = 3
    jump_chunk: int = 200_000
    gap_m_max: int = 32
    # ledger
    ratio_tol: float = 1e-9
    length_tol: float = 1e-9
    # execution
    workers: int = 1
    output: str = "table"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name.endswith("_tol") and not v > 0:
                raise ValueError(f"tolerance {f.name} must be positive, got {v}")
        if self.output not in ("table", "json"):
            raise ValueError("output must be 'table' or 'json'")

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **kw)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name: f for f in fields(cls)}
        kw = {}
        for key, value in data.items():
            if key not in known:
                raise KeyError(f"unknown config field {key!r}")
            kw[key] = _coerce(known[key], value)
        return cls(**kw)

    @classmethod
    def load(cls, path=None, environ=None) -> "RunConfig":
        """Defaults, then the JSON file at ``path``, then ``SYMPINDEX_*`` env vars."""
        data = {}
        if path is not None:
            with open(path) as fh:
                data.update(json.load(fh))
        environ = os.environ if environ is None else environ
        for f in fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in environ:
                data[f.name] = environ[key]
        return cls.from_mapping(data)


def _coerce(f, value):
    typ = f.type if isinstance(f.type, type) else {"float": float, "int": int, "str": str}[f.type]
    if typ is int:
        return int(float(value)) if isinstance(value, str) else int(value)
    return typ(value)


DEFAULT = RunConfig()


def resolve(config: RunConfig | None) -> RunConfig:
    return DEFAULT if config is None else config
