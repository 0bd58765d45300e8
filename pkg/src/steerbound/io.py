"""JSON inequality and grid specification files.

Inequality file::

    {
      "d": 2, "n_x": 2, "n_y": 2,
      "coefficients": "mub-correlation:2",      # or [[a, b, x, y, c], ...]
                                                # or {"correlator": [[x, y, sign], ...]}
      "targets": "mub-pair",                    # or [[[ [re, im], ... ] per b] per y]
      "epsilons": 0.005,                        # or [[eps_by per b] per y]
      "beta0": 1.7071,                          # optional
      "back_map": [2, -3]                       # optional
    }

Named functionals: ``mub-correlation:n``, ``qubit-three-setting``,
``elegant-bell``. Named targets: ``computational``, ``mub-pair``,
``wh-mubs:n``, ``pauli-xyz``, ``pauli-xzy``. Indices are 0-based and
complex numbers are ``[re, im]`` pairs.
"""

import json
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .scenario import (ImprecisionProfile, SteeringFunctional, TargetMeasurements,
                       correlator_to_probability_form, elegant_bell, mub_correlation,
                       qubit_three_setting)
from .targets import claims_mub, family_by_label


class SpecError(ValueError):
    """Invalid specification file; ``field`` names the offending entry."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass
class InequalitySpec:
    d: int
    n_x: int
    n_y: int
    coefficients: object
    targets: object
    epsilons: object = 0.0
    beta0: float | None = None
    back_map: list | None = None

    def functional(self):
        c = self.coefficients
        try:
            if isinstance(c, str):
                f = named_functional(c, self.d)
            elif isinstance(c, dict) and "correlator" in c:
                signs = {(int(x), int(y)): int(s) for x, y, s in c["correlator"]}
                f = correlator_to_probability_form(signs, self.n_x, self.n_y, d=self.d)
            elif isinstance(c, list):
                f = SteeringFunctional(self.d, self.n_x, self.n_y,
                                       tuple(tuple(r) for r in c),
                                       back_map=tuple(self.back_map) if self.back_map else None)
            else:
                raise SpecError("expected a name, a list of [a, b, x, y, c] or a correlator object",
                                "coefficients")
        except SpecError:
            raise
        except (ValueError, TypeError, KeyError) as exc:
            raise SpecError(str(exc), "coefficients") from exc
        if (f.d, f.n_x, f.n_y) != (self.d, self.n_x, self.n_y):
            raise SpecError(f"functional has (d, n_x, n_y) = {(f.d, f.n_x, f.n_y)}, "
                            f"file says {(self.d, self.n_x, self.n_y)}", "coefficients")
        if self.back_map and f.back_map is None:
            f = SteeringFunctional(f.d, f.n_x, f.n_y, f.terms, back_map=tuple(self.back_map))
        return f

    def target_measurements(self):
        t = self.targets
        if isinstance(t, str):
            try:
                fam = family_by_label(t, self.d, self.n_y)
            except ValueError as exc:
                raise SpecError(str(exc), "targets") from exc
            if fam.n < self.n_y:
                raise SpecError(f"family {t!r} has {fam.n} bases, need n_y={self.n_y}", "targets")
            return TargetMeasurements(tuple(tuple(basis) for basis in fam.bases[:self.n_y]))
        if not isinstance(t, list) or len(t) != self.n_y:
            raise SpecError(f"expected a label or one list of kets per input (n_y={self.n_y})", "targets")
        rows = []
        for y, row in enumerate(t):
            kets = []
            for b, amps in enumerate(row):
                if amps is None:
                    kets.append(None)
                    continue
                k = np.array([complex(re, im) for re, im in amps])
                norm = np.linalg.norm(k)
                if abs(norm - 1) > TOL.spec_unit_norm:
                    raise SpecError(f"target ket is not unit norm (norm {norm:.12g}) at (b={b}, y={y})",
                                    f"targets[{y}][{b}]")
                kets.append(k)
            rows.append(tuple(kets))
        try:
            return TargetMeasurements(tuple(rows))
        except ValueError as exc:
            raise SpecError(str(exc), "targets") from exc

    def imprecision(self):
        e = self.epsilons
        try:
            if isinstance(e, (int, float)):
                return ImprecisionProfile(np.full((self.d, self.n_y), float(e)))
            arr = np.array(e, dtype=float)
            if arr.shape != (self.n_y, self.d):
                raise SpecError(f"expected shape [n_y][d] = {(self.n_y, self.d)}, got {arr.shape}",
                                "epsilons")
            return ImprecisionProfile(arr.T)
        except SpecError:
            raise
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), "epsilons") from exc

    def claims_mub(self):
        return isinstance(self.targets, str) and claims_mub(self.targets)

    def to_dict(self):
        out = {"d": self.d, "n_x": self.n_x, "n_y": self.n_y,
               "coefficients": self.coefficients, "targets": self.targets,
               "epsilons": self.epsilons}
        if self.beta0 is not None:
            out["beta0"] = self.beta0
        if self.back_map is not None:
            out["back_map"] = self.back_map
        return out

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2)


def named_functional(name, d):
    if name.startswith("mub-correlation:"):
        return mub_correlation(d, int(name.split(":", 1)[1]))
    if name == "qubit-three-setting":
        return qubit_three_setting()
    if name == "elegant-bell":
        return elegant_bell()
    raise SpecError(f"unknown functional {name!r}", "coefficients")


_REQUIRED = ("d", "n_x", "n_y", "coefficients", "targets")


def _int_field(data, key):
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise SpecError("must be a positive integer", key)
    return v


def parse_inequality(data):
    if not isinstance(data, dict):
        raise SpecError("top level must be a JSON object")
    for key in _REQUIRED:
        if key not in data:
            raise SpecError("missing required field", key)
    unknown = set(data) - set(_REQUIRED) - {"epsilons", "beta0", "back_map"}
    if unknown:
        raise SpecError(f"unknown fields {sorted(unknown)}")
    beta0 = data.get("beta0")
    if beta0 is not None and (isinstance(beta0, bool) or not isinstance(beta0, (int, float)) or beta0 <= 0):
        raise SpecError("must be a positive number", "beta0")
    return InequalitySpec(_int_field(data, "d"), _int_field(data, "n_x"), _int_field(data, "n_y"),
                          data["coefficients"], data["targets"], data.get("epsilons", 0.0),
                          None if beta0 is None else float(beta0), data.get("back_map"))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_inequality(path):
    return parse_inequality(_load_json(path))


@dataclass
class GridSpec:
    d: int
    functional: str
    axis1: list
    axis2: list
    targets: str = "mub-pair"

    def __post_init__(self):
        for name in ("axis1", "axis2"):
            axis = getattr(self, name)
            if not axis or any(not 0 <= v <= 1 for v in axis) or any(b < a for a, b in zip(axis, axis[1:])):
                raise SpecError("values must lie in [0, 1] in ascending order", name)

    def to_dict(self):
        return {"d": self.d, "functional": self.functional, "targets": self.targets,
                "axis1": list(self.axis1), "axis2": list(self.axis2)}


def default_axis(n=28, lo=1e-4, hi=0.1):
    """0 followed by ``n - 1`` geometrically spaced points from ``lo`` to ``hi``."""
    return [0.0] + [float(v) for v in np.geomspace(lo, hi, n - 1)]


def parse_grid(data):
    if not isinstance(data, dict) or "d" not in data:
        raise SpecError("grid file needs at least the field 'd'")
    axis = default_axis(int(data.get("size", 28)))
    return GridSpec(int(data["d"]), data.get("functional", "mub-correlation:2"),
                    [float(v) for v in data.get("axis1", axis)],
                    [float(v) for v in data.get("axis2", axis)],
                    data.get("targets", "mub-pair"))


def load_grid(path):
    return parse_grid(_load_json(path))
