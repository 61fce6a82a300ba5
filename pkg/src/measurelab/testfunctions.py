"""Families of continuous test functions used by the convergence checkers.

Two finite families stand in for the usual function classes on a box:

* a "vanishing" family of Urysohn bumps tiling the dyadic lattice of the
  space's core window at several scales, each bump equal to 1 on the
  middle half of its cell and 0 outside the cell;
* a "bounded" family consisting of the constant 1 (first, so it is the
  preferred witness), one clipped coordinate function per axis, and then
  the vanishing family.

On a box that truncates an unbounded ambient domain, the core window
marks where the bumps live; the region beyond it plays the role of a
neighborhood of infinity, which is what lets mass escape past every
bump. On discrete spaces the families are point indicators (plus the
constant for the bounded family).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry
from .errors import InvalidSpecError
from .integration import ScalarFn
from .measures import Space


@dataclass(frozen=True)
class BumpSpec:
    """A plateau box inside an outer box; the bump falls linearly (in the
    sup norm) from 1 on the plateau to 0 at the margin."""

    core_lower: tuple
    core_upper: tuple
    outer_lower: tuple
    outer_upper: tuple
    name: str | None = None

    def margin(self) -> float:
        gaps = []
        for a, b, c, d in zip(self.outer_lower, self.core_lower,
                              self.core_upper, self.outer_upper):
            if not (a <= b <= c <= d):
                raise InvalidSpecError("bump plateau must sit inside the outer box")
            gaps.append(b - a)
            gaps.append(d - c)
        gap = min(gaps)
        if gap <= 0:
            raise InvalidSpecError("bump needs a positive margin on every side")
        return gap


def urysohn(spec: BumpSpec) -> ScalarFn:
    """Continuous 0..1 function: 1 on the plateau, 0 outside the outer box."""
    gap = spec.margin()
    klo, khi = spec.core_lower, spec.core_upper

    def h(p):
        d = geometry.sup_dist_to_box(p, klo, khi)
        return min(max(1.0 - d / gap, 0.0), 1.0)

    name = spec.name or f"bump{geometry.fmt_box(klo, khi)}"
    return ScalarFn(fn=h, name=name, lipschitz=1.0 / gap,
                    support=(spec.outer_lower, spec.outer_upper))


def bump_for_cell(cell_lo, cell_hi, name=None) -> ScalarFn:
    """The standard bump of a lattice cell: plateau on the middle half."""
    klo = tuple(a + (b - a) / 4 for a, b in zip(cell_lo, cell_hi))
    khi = tuple(b - (b - a) / 4 for a, b in zip(cell_lo, cell_hi))
    spec = BumpSpec(core_lower=klo, core_upper=khi,
                    outer_lower=tuple(cell_lo), outer_upper=tuple(cell_hi),
                    name=name or f"bump{geometry.fmt_box(cell_lo, cell_hi)}")
    return urysohn(spec)


def constant_one() -> ScalarFn:
    return ScalarFn(fn=lambda p: 1.0, name="1", lipschitz=0.0)


def coordinate_clip(space: Space, axis: int) -> ScalarFn:
    """The axis coordinate, clamped to the box range (so it extends
    continuously and boundedly beyond the box)."""
    lo, hi = space.lower[axis], space.upper[axis]

    def g(p):
        return min(max(p[axis], lo), hi)

    return ScalarFn(fn=g, name=f"clip(x{axis})", lipschitz=1.0)


def point_indicator(point) -> ScalarFn:
    pt = tuple(point)

    def g(p):
        return 1.0 if tuple(p) == pt else 0.0

    return ScalarFn(fn=g, name="1{%s}" % geometry.fmt_point(pt))


@dataclass(frozen=True)
class FunctionFamily:
    """An ordered finite family of test functions. Checkers scan members
    in order, so the first failing member is the reported witness."""

    kind: str
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def names(self) -> list:
        return [f.name for f in self.members]


def _core_bumps(space: Space, levels: int) -> list:
    lo, hi = space.core
    if any(a >= b for a, b in zip(lo, hi)):
        raise InvalidSpecError("core window must have positive widths")
    out = []
    for level in range(0, levels + 1):
        for clo, chi in geometry.dyadic_cells(lo, hi, level):
            out.append(bump_for_cell(clo, chi))
    return out


def c0_family(space: Space, levels: int = 3) -> FunctionFamily:
    """Bumps at lattice levels 0..levels over the core window; on discrete
    spaces, one indicator per point."""
    if space.kind == "discrete":
        members = [point_indicator(p) for p in space.points]
    else:
        members = _core_bumps(space, levels)
    return FunctionFamily(kind="c0", members=tuple(members))


def cb_family(space: Space, levels: int = 3) -> FunctionFamily:
    """Constant first, then coordinates, then the vanishing family."""
    if space.kind == "discrete":
        members = [constant_one()] + [point_indicator(p) for p in space.points]
    else:
        members = [constant_one()]
        members += [coordinate_clip(space, i) for i in range(space.dim)]
        members += _core_bumps(space, levels)
    return FunctionFamily(kind="cb", members=tuple(members))
