"""Scalar integration against finite measures, with explicit error bounds.

Integrals split into an exact atomic part and a quadrature part for the
density: midpoint rule on dyadic subdivisions of the density cells. The
reported bound covers only the quadrature error; it is the declared
modulus bound when the integrand carries a Lipschitz constant, else a
Richardson-style difference between consecutive depths, floored so a
zero difference never reads as a zero-error claim.

Superlevel quantities refine cells until the per-cell mass falls below a
relative threshold, then decide membership at cell midpoints with a
strict inequality, so ties sit outside the superlevel set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import fsum
from typing import Callable

from . import geometry
from .errors import IntegrabilityError, InvalidSpecError
from .measures import BorelSet, FiniteMeasure

#: Error bounds are floored at this times (1 + |value| + mass).
BOUND_FLOOR = 1e-14


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the quadrature and superlevel kernels.

    depth
        Dyadic splits per axis inside each density cell; the midpoint
        rule runs on the resulting subcells.
    superlevel_rel_mass
        Refinement stops once a cell's mass drops below this fraction of
        max(1, total mass).
    superlevel_max_cells
        Hard cap on evaluated cells per superlevel call; past it the
        remaining queue is decided at current resolution.
    integrability_depth
        Base depth for the integrability probe's depth ladder.
    """

    depth: int = 3
    superlevel_rel_mass: float = 1e-3
    superlevel_max_cells: int = 1 << 18
    integrability_depth: int = 4

    def __post_init__(self):
        if self.depth < 0 or self.integrability_depth < 1:
            raise InvalidSpecError("quadrature depths must be nonnegative")
        if not (0 < self.superlevel_rel_mass <= 1):
            raise InvalidSpecError("superlevel_rel_mass must be in (0, 1]")
        if self.superlevel_max_cells < 1:
            raise InvalidSpecError("superlevel_max_cells must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class ScalarFn:
    """A real-valued integrand.

    lipschitz, when given, is a sup-norm Lipschitz constant used for a
    certified midpoint error bound. support, when given, is a box
    outside of which the function is zero; quadrature clips to it.
    """

    fn: Callable
    name: str = "f"
    lipschitz: float | None = None
    support: tuple | None = None

    def __post_init__(self):
        if self.lipschitz is not None and (self.lipschitz < 0 or not math.isfinite(self.lipschitz)):
            raise InvalidSpecError("lipschitz constant must be finite and >= 0")
        if self.support is not None:
            lo, hi = self.support
            if len(lo) != len(hi) or any(a > b for a, b in zip(lo, hi)):
                raise InvalidSpecError("support corners out of order")

    def __call__(self, p) -> float:
        try:
            v = float(self.fn(p))
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise IntegrabilityError(f"{self.name} failed to evaluate: {exc}",
                                     location=tuple(p)) from exc
        if not math.isfinite(v):
            raise IntegrabilityError(f"{self.name} is not finite", location=tuple(p))
        return v


def pos_part(f: ScalarFn) -> ScalarFn:
    return ScalarFn(fn=lambda p: max(f(p), 0.0), name=f"{f.name}+",
                    lipschitz=f.lipschitz, support=f.support)


def neg_part(f: ScalarFn) -> ScalarFn:
    return ScalarFn(fn=lambda p: max(-f(p), 0.0), name=f"{f.name}-",
                    lipschitz=f.lipschitz, support=f.support)


def abs_fn(f: ScalarFn) -> ScalarFn:
    return ScalarFn(fn=lambda p: abs(f(p)), name=f"|{f.name}|",
                    lipschitz=f.lipschitz, support=f.support)


@dataclass
class FunctionSequence:
    """Lazily generated integrand sequence f_1, f_2, ..., memoized."""

    generator: Callable[[int], ScalarFn]
    n_max: int
    name: str = "f_n"
    _memo: dict = field(default_factory=dict, repr=False)

    def at(self, n: int) -> ScalarFn:
        if n < 1:
            raise InvalidSpecError("sequence indices start at 1")
        f = self._memo.get(n)
        if f is None:
            f = self.generator(n)
            self._memo[n] = f
        return f

    def indices(self) -> range:
        return range(1, self.n_max + 1)

    @classmethod
    def constant(cls, f: ScalarFn, n_max: int) -> "FunctionSequence":
        return cls(generator=lambda n: f, n_max=n_max, name=f.name)


@dataclass(frozen=True)
class IntegralResult:
    """Integral value with a quadrature error bound and the evaluation count."""

    value: float
    bound: float
    evals: int = 0

    def agrees_with(self, target: float, extra_tol: float = 0.0) -> bool:
        return abs(self.value - target) <= self.bound + extra_tol


def _floor_for(value: float, mass: float) -> float:
    return BOUND_FLOOR * (1.0 + abs(value) + abs(mass))


def _clip_pieces(measure: FiniteMeasure, region: BorelSet | None,
                 support: tuple | None) -> list:
    """Density cells intersected with the region boxes and the integrand
    support. Yields (lo, hi, height) with positive volume and height."""
    if measure.density is None:
        return []
    if region is not None:
        region_boxes = list(region.boxes)
        if not region_boxes:
            return []
    else:
        region_boxes = [(measure.space.lower, measure.space.upper)]
    pieces = []
    for lo, hi, v in measure.density.cells():
        if v == 0.0:
            continue
        for blo, bhi in region_boxes:
            inter = geometry.box_intersection(lo, hi, blo, bhi)
            if inter is None:
                continue
            if support is not None:
                inter = geometry.box_intersection(inter[0], inter[1],
                                                  tuple(support[0]), tuple(support[1]))
                if inter is None:
                    continue
            if not geometry.box_is_empty(*inter):
                pieces.append((inter[0], inter[1], v))
    return pieces


def _midpoint_sum(f: ScalarFn, pieces, depth: int) -> tuple:
    """Midpoint-rule sum over all pieces at the given dyadic depth.
    Returns (value, evals, max_half) where max_half is the largest
    sup-norm subcell radius encountered."""
    terms = []
    evals = 0
    max_half = 0.0
    for lo, hi, v in pieces:
        k = 1 << depth
        widths = tuple((b - a) / k for a, b in zip(lo, hi))
        max_half = max(max_half, max(widths) / 2.0)
        vol = math.prod(widths)
        if vol == 0.0:
            continue
        for mid, _ in geometry.dyadic_midpoints(lo, hi, depth):
            terms.append(v * vol * f(mid))
            evals += 1
    return fsum(terms), evals, max_half


def integrate(f: ScalarFn, measure: FiniteMeasure, region: BorelSet | None = None,
              config: QuadratureConfig = DEFAULT_CONFIG,
              depth: int | None = None) -> IntegralResult:
    """Integral of f against the measure, optionally over a region.

    The atomic part is summed exactly; the density part uses the
    midpoint rule. See the module docstring for the bound semantics.
    """
    if region is not None and region.space != measure.space:
        raise InvalidSpecError("region and measure live on different spaces")
    d = config.depth if depth is None else depth
    atom_terms = [w * f(p) for p, w in measure.atoms
                  if region is None or region.member(p)]
    atom_part = fsum(atom_terms)
    evals = len(atom_terms)
    pieces = _clip_pieces(measure, region, f.support)
    if not pieces:
        value = atom_part
        return IntegralResult(value=value, bound=_floor_for(value, 0.0), evals=evals)
    mass = fsum(v * geometry.box_volume(lo, hi) for lo, hi, v in pieces)
    val_d, n_d, max_half = _midpoint_sum(f, pieces, d)
    evals += n_d
    value = atom_part + val_d
    if f.lipschitz is not None:
        raw = f.lipschitz * max_half * mass
    else:
        if d > 0:
            prev, n_prev, _ = _midpoint_sum(f, pieces, d - 1)
            evals += n_prev
            raw = abs(val_d - prev)
        else:
            # no coarser level to compare against; only the floor applies
            raw = 0.0
    bound = max(raw, _floor_for(value, mass))
    return IntegralResult(value=value, bound=bound, evals=evals)


def integrate_abs(f: ScalarFn, measure: FiniteMeasure, region: BorelSet | None = None,
                  config: QuadratureConfig = DEFAULT_CONFIG,
                  depth: int | None = None) -> IntegralResult:
    return integrate(abs_fn(f), measure, region=region, config=config, depth=depth)


# ---------------------------------------------------------------------------
# superlevel quantities


def _superlevel(f: ScalarFn, measure: FiniteMeasure, alpha: float,
                config: QuadratureConfig, weigh: Callable[[float], float]) -> float:
    if alpha < 0:
        raise InvalidSpecError("superlevel threshold must be >= 0")
    terms = []
    for p, w in measure.atoms:
        a = abs(f(p))
        if a > alpha:
            terms.append(w * weigh(a))
    pieces = _clip_pieces(measure, None, f.support)
    if pieces:
        threshold = config.superlevel_rel_mass * max(1.0, measure.total_mass())
        budget = config.superlevel_max_cells
        queue = list(pieces)
        used = 0
        while queue:
            lo, hi, v = queue.pop()
            used += 1
            vol = geometry.box_volume(lo, hi)
            if v * vol >= threshold and used < budget:
                for clo, chi in geometry.dyadic_cells(lo, hi, 1):
                    queue.append((clo, chi, v))
                continue
            mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
            a = abs(f(mid))
            if a > alpha:
                terms.append(v * vol * weigh(a))
    return fsum(terms)


def superlevel_integral(f: ScalarFn, measure: FiniteMeasure, alpha: float,
                        config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Approximate integral of |f| over the set where |f| > alpha."""
    return _superlevel(f, measure, alpha, config, lambda a: a)


def superlevel_measure(f: ScalarFn, measure: FiniteMeasure, alpha: float,
                       config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Approximate mass of the set where |f| > alpha."""
    return _superlevel(f, measure, alpha, config, lambda a: 1.0)


# ---------------------------------------------------------------------------
# integrability probe


@dataclass(frozen=True)
class L1Probe:
    """Diagnostic for whether the quadrature of |f| looks convergent.

    Compares successive refinement increments: a genuinely integrable
    density makes them shrink geometrically, while a nonintegrable
    singularity keeps adding mass at every depth.
    """

    converging: bool
    values: tuple
    deltas: tuple

    def __bool__(self):
        return self.converging


#: Successive quadrature increments must shrink by at least this factor.
PROBE_RATIO = 0.75


def l1_probe(f: ScalarFn, measure: FiniteMeasure,
             config: QuadratureConfig = DEFAULT_CONFIG) -> L1Probe:
    q = config.integrability_depth
    vals = []
    for d in (q, q + 1, q + 2):
        vals.append(integrate_abs(f, measure, config=config, depth=d).value)
    d1 = abs(vals[1] - vals[0])
    d2 = abs(vals[2] - vals[1])
    floor = _floor_for(vals[2], measure.total_mass())
    ok = d2 <= PROBE_RATIO * d1 + floor
    return L1Probe(converging=ok, values=tuple(vals), deltas=(d1, d2))
