"""Declarative builders for n-indexed functions, measures, and bodies.

A recipe is a plain JSON-friendly dict. Numeric fields accept either a
literal number or a power-law parameter

    {"base": b, "scale": s, "decay": d}  ->  b + s * n**(-d)

evaluated at an index n, or at the limit (n = None): positive decay
converges to the base, zero decay to base + scale, and negative decay
has no limit value, which is reported as an error rather than guessed.
"""

from __future__ import annotations

import math

from . import geometry
from .errors import InvalidSpecError
from .integration import ScalarFn
from .measures import FiniteMeasure, GridDensity, Space
from .multivalued import BoxBody, Multifunction
from .testfunctions import BumpSpec, constant_one, coordinate_clip, point_indicator, urysohn

PARAM_KEYS = {"base", "scale", "decay"}


def param_value(spec, n: int | None) -> float:
    """Evaluate a literal or power-law parameter at index n (None = limit)."""
    if isinstance(spec, bool):
        raise InvalidSpecError("parameter must be numeric")
    if isinstance(spec, (int, float)):
        return float(spec)
    if not isinstance(spec, dict) or not set(spec) <= PARAM_KEYS:
        raise InvalidSpecError(f"bad parameter spec: {spec!r}")
    base = float(spec.get("base", 0.0))
    scale = float(spec.get("scale", 0.0))
    decay = float(spec.get("decay", 0.0))
    if n is None:
        if scale == 0.0 or decay > 0.0:
            return base
        if decay == 0.0:
            return base + scale
        raise InvalidSpecError("parameter grows without bound; no limit value")
    if n < 1:
        raise InvalidSpecError("index must be at least 1")
    return base + scale * float(n) ** (-decay)


def _params(values, n):
    return tuple(param_value(v, n) for v in values)


# ---------------------------------------------------------------------------
# scalar functions


def build_function(spec: dict, space: Space, n: int | None = None) -> ScalarFn:
    """Build a scalar integrand from a recipe dict.

    Kinds: constant, affine, box_indicator, bump, coordinate_clip,
    point_indicator. Affine recipes deliberately declare no Lipschitz
    constant so the quadrature certifies them by level comparison,
    which is exact for affine integrands.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpecError(f"function spec needs a kind: {spec!r}")
    kind = spec["kind"]
    if kind == "constant":
        c = param_value(spec.get("value", 0.0), n)
        if c == 1.0:
            return constant_one()
        return ScalarFn(fn=lambda p: c, name=geometry.fmt_float(c), lipschitz=0.0)
    if kind == "affine":
        coeffs = _params(spec.get("coeffs", ()), n)
        if len(coeffs) != space.dim:
            raise InvalidSpecError("affine coeffs must match the space dimension")
        offset = param_value(spec.get("offset", 0.0), n)
        return ScalarFn(
            fn=lambda p: offset + math.fsum(c * x for c, x in zip(coeffs, p)),
            name=spec.get("name", "affine"))
    if kind == "box_indicator":
        lo = _params(spec["lower"], n)
        hi = _params(spec["upper"], n)
        if len(lo) != space.dim or len(hi) != space.dim:
            raise InvalidSpecError("indicator corners must match the space dimension")
        if any(a >= b for a, b in zip(lo, hi)):
            raise InvalidSpecError("indicator box is empty at this index")
        height = param_value(spec.get("height", 1.0), n)
        top = space.upper if space.kind == "box" else None

        def fn(p):
            return height if geometry.point_in_box(p, lo, hi, top) else 0.0

        return ScalarFn(fn=fn, name=spec.get("name", f"ind{geometry.fmt_box(lo, hi)}"),
                        support=(lo, hi))
    if kind == "bump":
        b = BumpSpec(core_lower=_params(spec["core_lower"], n),
                     core_upper=_params(spec["core_upper"], n),
                     outer_lower=_params(spec["outer_lower"], n),
                     outer_upper=_params(spec["outer_upper"], n))
        return urysohn(b)
    if kind == "coordinate_clip":
        return coordinate_clip(space, int(spec.get("axis", 0)))
    if kind == "point_indicator":
        return point_indicator(_params(spec["point"], n))
    raise InvalidSpecError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# measures


def build_measure(spec: dict, space: Space, n: int | None = None) -> FiniteMeasure:
    """Build a finite measure from a recipe dict.

    Kinds: dirac, lebesgue, density_grid, atoms, sum, zero. Weights and
    coordinates accept power-law parameters, so one recipe usually
    covers the whole sequence and its limit.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpecError(f"measure spec needs a kind: {spec!r}")
    kind = spec["kind"]
    if kind == "zero":
        return FiniteMeasure.zero(space)
    if kind == "dirac":
        point = _params(spec["point"], n)
        weight = param_value(spec.get("weight", 1.0), n)
        return FiniteMeasure.dirac(space, point, weight)
    if kind == "lebesgue":
        height = param_value(spec.get("height", 1.0), n)
        cells = spec.get("cells_per_axis")
        return FiniteMeasure.lebesgue(space, height=height, cells_per_axis=cells)
    if kind == "density_grid":
        values = _params(spec["values"], n)
        if "grid" in spec:
            breakpoints = tuple(tuple(float(x) for x in axis) for axis in spec["grid"])
        else:
            cells = int(spec.get("cells_per_axis", space.grid))
            breakpoints = GridDensity.uniform(space, 1.0, cells).breakpoints
        density = GridDensity(breakpoints=breakpoints, values=values)
        return FiniteMeasure.with_density(space, density)
    if kind == "atoms":
        atoms = [(_params(point, n), param_value(weight, n))
                 for point, weight in spec["atoms"]]
        return FiniteMeasure.from_atoms(space, atoms)
    if kind == "sum":
        parts = [build_measure(part, space, n) for part in spec["parts"]]
        if not parts:
            return FiniteMeasure.zero(space)
        out = parts[0]
        for part in parts[1:]:
            out = out.add(part)
        return out
    raise InvalidSpecError(f"unknown measure kind {kind!r}")


# ---------------------------------------------------------------------------
# box-valued bodies


def build_multifunction(spec: dict, space: Space, n: int | None = None) -> Multifunction:
    """Build a box-valued map whose endpoint coordinates are function
    recipes, kept in lower <= upper order pointwise."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpecError(f"multifunction spec needs a kind: {spec!r}")
    if spec["kind"] != "box_of":
        raise InvalidSpecError(f"unknown multifunction kind {spec['kind']!r}")
    lower_specs = spec["lower"]
    upper_specs = spec["upper"]
    if len(lower_specs) != len(upper_specs) or not lower_specs:
        raise InvalidSpecError("box_of needs matching endpoint lists")
    lowers = [build_function(s, space, n) for s in lower_specs]
    uppers = [build_function(s, space, n) for s in upper_specs]

    def fn(p):
        return BoxBody(tuple(f(p) for f in lowers), tuple(f(p) for f in uppers))

    return Multifunction(fn=fn, dim=len(lowers), name=spec.get("name", "Gamma"))
