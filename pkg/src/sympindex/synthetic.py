"""Synthetic geodesic models built from ⋄-products of rotation paths.

A factor ``t ↦ R(tθ)`` with ``θ ∈ (π, 2π)`` has index 1 and mean index
``θ/π ∈ (1, 2)``, so ``n - 1`` such factors give a path in ``Sp(2n - 2)``
with ``i = n - 1`` and ``î > n - 1``, the thresholds the ledger checks.
Rational ``θ/π`` gives degenerate iterates; irrational angles keep every
iterate nondegenerate.  Lengths are set to ``î / (2σ)`` so all models share
the ratio ``î/L``.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .io import rotations_doc


def mean_of(angles) -> float:
    return sum(float(a) if isinstance(a, Fraction) else a / math.pi for a in angles)


def model_doc(mid: str, angles, two_sigma: float = 1.0) -> dict:
    """Ensemble model entry for ``⋄_k R(tθ_k)``; ``Fraction`` angles are multiples of π, floats radians."""
    mi = mean_of(angles)
    length = mi / two_sigma
    return {"id": mid, "length": length, "energy": length * length / 2, "path": rotations_doc(angles)}


def random_angles(rng: np.random.Generator, count: int, rational: bool, denominators=(2, 4)) -> list:
    """Angles in ``(π, 2π)``: exact fractions of π, or radians kept away from rational multiples."""
    out = []
    for _ in range(count):
        if rational:
            q = int(rng.choice(denominators))
            p = int(rng.integers(q + 1, 2 * q))
            out.append(Fraction(p, q))
        else:
            x = float(rng.uniform(1.05, 1.95))
            # nudge off low-denominator fractions so iterates stay nondegenerate
            if abs(x - float(Fraction(x).limit_denominator(50))) < 1e-3:
                x += 3e-3
            out.append(x * math.pi)
    return out


def ensemble_doc(n: int, models: list, bumpy: bool = False, pinched: bool = True) -> dict:
    return {"n": n, "dim_z": n + 1, "pinched": pinched, "bumpy": bumpy, "models": models}


def random_ensemble_doc(rng: np.random.Generator, n: int, p: int, rational_models: int = 1,
                        bumpy: bool = False, two_sigma: float = 1.0, denominators=(2, 4)) -> dict:
    """``p`` models in ``Sp(2n - 2)``; the first ``rational_models`` have only rational angles.

    Irrational models mix in rational factors unless ``bumpy``.  Small
    ``denominators`` keep the common multiple of the rational mean indices
    small, which is what makes jump certificates cheap to find.
    """
    models = []
    for j in range(p):
        if j < rational_models and not bumpy:
            angs = random_angles(rng, n - 1, True, denominators)
        elif bumpy:
            angs = random_angles(rng, n - 1, False)
        else:
            k = int(rng.integers(1, n))  # at least one irrational factor
            angs = random_angles(rng, n - 1 - k, True, denominators) + random_angles(rng, k, False)
        models.append(model_doc(f"c{j + 1}", angs, two_sigma))
    return ensemble_doc(n, models, bumpy)
