"""JSON documents for matrices, paths, ensembles and certificates.

Angles are written either as numbers (radians) or as strings ``"p/q"``
meaning ``(p/q)·π``; the string form keeps rational angles exact.

Matrix document::

    {"matrix": [[...], ...]}            or  {"factors": ["N1(1,1)", "R(2/5π)", "D(-2)"]}

Path document (``kind`` selects the constructor)::

    {"kind": "hamiltonian", "segments": [{"duration": 1.0, "B": [[...]]}]}
    {"kind": "rotations", "angles": ["3/2", 4.44]}          # ⋄ of t ↦ R(tθ)
    {"kind": "generators", "segments": [{"duration": 1.0, "X": [[...]]}]}
    {"kind": "samples", "times": [...], "matrices": [[[...]]]}
    {"kind": "diamond", "paths": [<path>, ...]}

Ensemble document::

    {"n": 6, "dim_z": 7, "pinched": true, "bumpy": false,
     "models": [{"id": "c1", "length": 7.5, "energy": 28.125, "path": <path>}]}

A model may carry ``"profile"`` (the output of ``OmegaIndexProfile.to_dict``)
instead of a path.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from fractions import Fraction

import numpy as np

from .core import NormalFormFactor, as_angle, compose
from .errors import DocumentError, SymplecticError
from .iteration import OmegaIndexProfile
from .ledger import GeodesicEnsemble, GeodesicModel
from .paths import (
    diamond_paths,
    from_generators,
    from_hamiltonian,
    from_samples,
    rotation_path,
)

_FACTOR = re.compile(r"^\s*(D|N1|R|N2)\s*\((.*)\)\s*$")


def load_json(path_or_text, where: str = "document"):
    """Parse JSON from a file path or a string, with line and column on failure."""
    text = path_or_text
    if not str(path_or_text).lstrip().startswith(("{", "[")):
        try:
            with open(path_or_text) as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read: {exc}", where) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", where) from exc


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True, default=_default)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


# ---------------------------------------------------------------------------
# helpers


def _get(doc, key, where, kind=None):
    if not isinstance(doc, dict):
        raise DocumentError("expected an object", where)
    if key not in doc:
        raise DocumentError(f"missing field {key!r}", where)
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise DocumentError(f"field {key!r} has the wrong type", f"{where}.{key}")
    return val


def _matrix(val, where) -> np.ndarray:
    try:
        M = np.asarray(val, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"not a numeric matrix: {exc}", where) from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DocumentError(f"expected a square matrix, got shape {M.shape}", where)
    return M


def parse_angle(val, where="angle"):
    """Radians (number) or ``"p/q"`` meaning ``(p/q)π``; returns ``(radians, Fraction | None)``."""
    if isinstance(val, bool) or not isinstance(val, (int, float, str)):
        raise DocumentError("angle must be a number (radians) or a 'p/q' string (multiple of π)", where)
    try:
        return as_angle(val)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad angle {val!r}", where) from exc


def angle_arg(val: str):
    """Command-line angle: ``'p/q'`` or ``'p/qπ'`` or ``'p/q pi'`` is a multiple of π, a bare float is radians."""
    s = val.strip().replace("π", "").replace("pi", "").strip()
    try:
        if "/" in s or val.strip().endswith(("π", "pi")):
            return as_angle(s if "/" in s else str(Fraction(s)))
        return as_angle(float(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad angle {val!r}", "omega") from exc


def parse_factor(label: str, where="factor") -> NormalFormFactor:
    m = _FACTOR.match(label)
    if not m:
        raise DocumentError(f"unknown factor {label!r}", where)
    kind, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
    try:
        if kind == "D":
            return NormalFormFactor.D(int(float(args[0])))
        if kind == "N1":
            return NormalFormFactor.N1(int(float(args[0])), int(float(args[1])))
        theta = _factor_angle(args[0])
        if kind == "R":
            return NormalFormFactor.R(theta)
        sign = {"+": 1, "-": -1}.get(args[1]) if len(args) > 1 else 1
        if sign is None:
            raise DocumentError("N2 sign must be '+' or '-'", where)
        return NormalFormFactor.N2(theta, sign=sign)
    except (IndexError, ValueError, ZeroDivisionError, SymplecticError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"bad factor {label!r}: {exc}", where) from exc


def _factor_angle(s: str):
    t = s.replace("π", "").replace("pi", "").strip()
    if t != s.strip() or "/" in t:
        return Fraction(t) if t else Fraction(1)
    return float(t)


# ---------------------------------------------------------------------------
# matrices and paths


def parse_matrix(doc, where="matrix") -> np.ndarray:
    if isinstance(doc, list):
        return _matrix(doc, where)
    if isinstance(doc, dict) and "matrix" in doc:
        return _matrix(doc["matrix"], f"{where}.matrix")
    if isinstance(doc, dict) and "factors" in doc:
        facs = _get(doc, "factors", where, list)
        return compose([parse_factor(f, f"{where}.factors[{i}]") for i, f in enumerate(facs)])
    raise DocumentError("expected 'matrix' or 'factors'", where)


def parse_path(doc, where="path"):
    kind = _get(doc, "kind", where, str)
    try:
        if kind == "hamiltonian":
            segs = _get(doc, "segments", where, list)
            pieces = [(float(_get(s, "duration", f"{where}.segments[{i}]")),
                       _matrix(_get(s, "B", f"{where}.segments[{i}]"), f"{where}.segments[{i}].B"))
                      for i, s in enumerate(segs)]
            return from_hamiltonian(pieces, doc.get("tau"))
        if kind == "generators":
            segs = _get(doc, "segments", where, list)
            pieces = [(float(_get(s, "duration", f"{where}.segments[{i}]")),
                       _matrix(_get(s, "X", f"{where}.segments[{i}]"), f"{where}.segments[{i}].X"))
                      for i, s in enumerate(segs)]
            return from_generators(pieces)
        if kind == "rotations":
            angs = _get(doc, "angles", where, list)
            if not angs:
                raise DocumentError("need at least one angle", f"{where}.angles")
            tau = float(doc.get("tau", 1.0))
            paths = [rotation_path(parse_angle(a, f"{where}.angles[{i}]")[0], tau) for i, a in enumerate(angs)]
            return paths[0] if len(paths) == 1 else diamond_paths(*paths)
        if kind == "samples":
            times = _get(doc, "times", where, list)
            mats = [_matrix(m, f"{where}.matrices[{i}]") for i, m in enumerate(_get(doc, "matrices", where, list))]
            return from_samples(times, mats)
        if kind == "diamond":
            subs = _get(doc, "paths", where, list)
            return diamond_paths(*[parse_path(p, f"{where}.paths[{i}]") for i, p in enumerate(subs)])
    except DocumentError:
        raise
    except (SymplecticError, ValueError, TypeError) as exc:
        raise DocumentError(str(exc), where) from exc
    raise DocumentError(f"unknown path kind {kind!r}", f"{where}.kind")


def rotations_doc(angles) -> dict:
    """Path document for the ⋄-product of rotation paths."""
    out = []
    for a in angles:
        out.append(str(a) if isinstance(a, Fraction) else float(a))
    return {"kind": "rotations", "angles": out}


# ---------------------------------------------------------------------------
# ensembles


def parse_ensemble(doc, where="ensemble") -> GeodesicEnsemble:
    n = _get(doc, "n", where, int)
    models = []
    for i, md in enumerate(_get(doc, "models", where, list)):
        w = f"{where}.models[{i}]"
        mid = str(_get(md, "id", w))
        length = md.get("length")
        energy = md.get("energy")
        if length is None and energy is None:
            raise DocumentError("need 'length' or 'energy'", w)
        if length is None:
            length = math.sqrt(2 * float(energy))
        if energy is None:
            energy = float(length) ** 2 / 2
        path = parse_path(md["path"], f"{w}.path") if "path" in md else None
        prof = None
        if "profile" in md:
            try:
                prof = OmegaIndexProfile.from_dict(md["profile"])
            except (KeyError, TypeError, ValueError) as exc:
                raise DocumentError(f"bad profile: {exc}", f"{w}.profile") from exc
        try:
            models.append(GeodesicModel(mid, float(length), float(energy), path, prof, bool(md.get("prime", True))))
        except SymplecticError as exc:
            raise DocumentError(str(exc), w) from exc
    try:
        return GeodesicEnsemble(models, n, doc.get("dim_z"), bool(doc.get("pinched", True)),
                                bool(doc.get("bumpy", False)), float(doc.get("reversibility", 1.0)),
                                tuple(doc["curvature"]) if doc.get("curvature") else None)
    except SymplecticError as exc:
        raise DocumentError(str(exc), where) from exc


def load_ensemble(path_or_text) -> GeodesicEnsemble:
    return parse_ensemble(load_json(path_or_text, "ensemble"))


def bundled(name: str) -> dict:
    """A bundled ensemble document from the package data directory."""
    from importlib import resources

    try:
        text = resources.files("sympindex").joinpath("data", f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise DocumentError(f"no bundled ensemble {name!r}", "bundled") from exc
    return json.loads(text)


def bundled_names() -> list[str]:
    from importlib import resources

    return sorted(p.name[:-5] for p in resources.files("sympindex").joinpath("data").iterdir()
                  if p.name.endswith(".json"))
