"""Finite nonnegative measures on a box or a finite discrete space.

A measure is a finite list of weighted atoms plus an optional
piecewise-constant density on a rectangular grid. Test sets are finite
unions of half-open boxes with explicit per-point include/exclude
overrides, so membership is decidable for every point and mass
evaluation is additive up to float rounding (masses are accumulated
with ``math.fsum``, which returns the correctly rounded sum).

Checks indexed by sets run over a finite ring of dyadic cells plus
atom-derived sets; results are relative to that ring and reports say so.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _product
from math import fsum
from typing import Callable, Iterable, Iterator, Sequence

from . import geometry
from .errors import InvalidSpecError, SpaceMismatchError

#: Equality comparisons on masses use this tolerance, scaled by total mass.
MASS_RTOL = 1e-12


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    """A bounded box in R^d, or a finite discrete point set.

    For box spaces, ``core`` marks the compact window used when building
    families of functions that must vanish toward the edge of the domain;
    the region beyond the core plays the role of a neighborhood of
    infinity when the box truncates an unbounded ambient space. It
    defaults to the whole box, which is the right choice for genuinely
    compact domains.
    """

    kind: str
    lower: tuple = ()
    upper: tuple = ()
    core_lower: tuple | None = None
    core_upper: tuple | None = None
    grid: int = 16
    points: tuple = ()

    def __post_init__(self):
        if self.kind == "box":
            if len(self.lower) != len(self.upper) or not self.lower:
                raise InvalidSpecError("box space needs matching lower/upper corners")
            if any(a >= b for a, b in zip(self.lower, self.upper)):
                raise InvalidSpecError("box space must have positive widths")
            if (self.core_lower is None) != (self.core_upper is None):
                raise InvalidSpecError("core needs both corners")
            if self.core_lower is not None:
                if any(a > b for a, b in zip(self.core_lower, self.core_upper)):
                    raise InvalidSpecError("core corners out of order")
                if not (
                    all(a <= b for a, b in zip(self.lower, self.core_lower))
                    and all(a <= b for a, b in zip(self.core_upper, self.upper))
                ):
                    raise InvalidSpecError("core must sit inside the box")
            if self.grid < 1:
                raise InvalidSpecError("grid hint must be >= 1")
        elif self.kind == "discrete":
            if not self.points:
                raise InvalidSpecError("discrete space needs at least one point")
            if len(set(self.points)) != len(self.points):
                raise InvalidSpecError("discrete space points must be distinct")
        else:
            raise InvalidSpecError(f"unknown space kind {self.kind!r}")

    @classmethod
    def box(cls, lower, upper, core=None, grid=16) -> "Space":
        lower = tuple(float(x) for x in lower)
        upper = tuple(float(x) for x in upper)
        core_lo = core_hi = None
        if core is not None:
            core_lo = tuple(float(x) for x in core[0])
            core_hi = tuple(float(x) for x in core[1])
        return cls(kind="box", lower=lower, upper=upper,
                   core_lower=core_lo, core_upper=core_hi, grid=int(grid))

    @classmethod
    def discrete(cls, points) -> "Space":
        pts = tuple(tuple(float(x) for x in p) for p in points)
        return cls(kind="discrete", points=pts)

    @property
    def dim(self) -> int:
        if self.kind == "box":
            return len(self.lower)
        return len(self.points[0])

    @property
    def core(self) -> tuple:
        if self.kind != "box":
            raise InvalidSpecError("core is only defined for box spaces")
        if self.core_lower is None:
            return self.lower, self.upper
        return self.core_lower, self.core_upper

    def contains(self, p) -> bool:
        if self.kind == "discrete":
            return tuple(p) in self.points
        return all(a <= x <= b for x, a, b in zip(p, self.lower, self.upper))

    def to_json(self) -> dict:
        if self.kind == "discrete":
            return {"kind": "discrete", "points": [list(p) for p in self.points]}
        out = {"kind": "box", "lower": list(self.lower), "upper": list(self.upper),
               "grid": self.grid}
        if self.core_lower is not None:
            out["core"] = [list(self.core_lower), list(self.core_upper)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Space":
        kind = data.get("kind")
        if kind == "discrete":
            return cls.discrete(data["points"])
        if kind == "box":
            return cls.box(data["lower"], data["upper"], core=data.get("core"),
                           grid=data.get("grid", 16))
        raise InvalidSpecError(f"unknown space kind {kind!r}")


# ---------------------------------------------------------------------------
# sets


def _clip_boxes(space: Space, boxes) -> list:
    clipped = []
    for lo, hi in boxes:
        inter = geometry.box_intersection(tuple(lo), tuple(hi), space.lower, space.upper)
        if inter is not None:
            clipped.append(inter)
    return clipped


@dataclass(frozen=True)
class BorelSet:
    """A finite union of half-open boxes plus point overrides.

    ``include`` points are members even if outside the box part;
    ``exclude`` points are non-members even if inside. On discrete
    spaces only ``include`` is used. Canonical instances keep the box
    part disjoint, includes outside the boxes, and excludes inside.
    """

    space: Space
    boxes: tuple = ()
    include: tuple = ()
    exclude: tuple = ()
    name: str | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def make(cls, space, boxes=(), include=(), exclude=(), name=None) -> "BorelSet":
        if space.kind == "discrete":
            pts = tuple(sorted(set(tuple(p) for p in include)))
            for p in pts:
                if not space.contains(p):
                    raise InvalidSpecError(f"point {p} outside the space")
            return cls(space=space, boxes=(), include=pts, exclude=(), name=name)
        boxes = geometry.disjointify(_clip_boxes(space, boxes))
        domain_hi = space.upper
        inc, exc = [], []
        seen_inc = set(tuple(p) for p in include)
        seen_exc = set(tuple(p) for p in exclude)
        if seen_inc & seen_exc:
            raise InvalidSpecError("a point cannot be both included and excluded")
        for p in sorted(seen_inc):
            if not space.contains(p):
                raise InvalidSpecError(f"include point {p} outside the space")
            if not any(geometry.point_in_box(p, lo, hi, domain_hi) for lo, hi in boxes):
                inc.append(p)
        for p in sorted(seen_exc):
            if any(geometry.point_in_box(p, lo, hi, domain_hi) for lo, hi in boxes):
                exc.append(p)
        return cls(space=space, boxes=tuple(boxes), include=tuple(inc),
                   exclude=tuple(exc), name=name)

    @classmethod
    def from_box(cls, space, lo, hi, name=None) -> "BorelSet":
        return cls.make(space, boxes=[(tuple(lo), tuple(hi))], name=name)

    @classmethod
    def whole(cls, space, name="Omega") -> "BorelSet":
        if space.kind == "discrete":
            return cls.make(space, include=space.points, name=name)
        return cls.from_box(space, space.lower, space.upper, name=name)

    @classmethod
    def empty(cls, space, name="empty") -> "BorelSet":
        return cls.make(space, name=name)

    @classmethod
    def singleton(cls, space, p, name=None) -> "BorelSet":
        p = tuple(p)
        if name is None:
            name = "{%s}" % geometry.fmt_point(p)
        return cls.make(space, include=[p], name=name)

    @classmethod
    def from_points(cls, space, pts, name=None) -> "BorelSet":
        return cls.make(space, include=pts, name=name)

    # -- queries ------------------------------------------------------

    def member(self, p) -> bool:
        p = tuple(p)
        if self.space.kind == "discrete":
            return p in self.include
        if p in self.exclude:
            return False
        if p in self.include:
            return True
        hi_dom = self.space.upper
        return any(geometry.point_in_box(p, lo, hi, hi_dom) for lo, hi in self.boxes)

    def box_volume(self) -> float:
        return fsum(geometry.box_volume(lo, hi) for lo, hi in self.boxes)

    def is_empty(self) -> bool:
        return not self.boxes and not self.include

    # -- algebra ------------------------------------------------------

    def _check_same_space(self, other: "BorelSet"):
        if self.space != other.space:
            raise SpaceMismatchError("sets live on different spaces")

    def _fix_points(self, raw_boxes, candidates, want) -> "BorelSet":
        """Build a canonical set from raw boxes, forcing membership of the
        candidate points to agree with ``want``."""
        space = self.space
        hi_dom = space.upper
        boxes = geometry.disjointify(raw_boxes)
        inc, exc = [], []
        for p in sorted(set(candidates)):
            in_boxes = any(geometry.point_in_box(p, lo, hi, hi_dom) for lo, hi in boxes)
            w = want(p)
            if w and not in_boxes:
                inc.append(p)
            elif in_boxes and not w:
                exc.append(p)
        return BorelSet(space=space, boxes=tuple(boxes), include=tuple(inc),
                        exclude=tuple(exc), name=None)

    def _specials(self, *others) -> set:
        pts = set(self.include) | set(self.exclude)
        for o in others:
            pts |= set(o.include) | set(o.exclude)
        return pts

    def union(self, other: "BorelSet") -> "BorelSet":
        self._check_same_space(other)
        if self.space.kind == "discrete":
            return BorelSet.make(self.space, include=self.include + other.include)
        raw = list(self.boxes) + list(other.boxes)
        return self._fix_points(raw, self._specials(other),
                                lambda p: self.member(p) or other.member(p))

    def intersect(self, other: "BorelSet") -> "BorelSet":
        self._check_same_space(other)
        if self.space.kind == "discrete":
            pts = set(self.include) & set(other.include)
            return BorelSet.make(self.space, include=pts)
        raw = []
        for lo1, hi1 in self.boxes:
            for lo2, hi2 in other.boxes:
                inter = geometry.box_intersection(lo1, hi1, lo2, hi2)
                if inter is not None:
                    raw.append(inter)
        return self._fix_points(raw, self._specials(other),
                                lambda p: self.member(p) and other.member(p))

    def difference(self, other: "BorelSet") -> "BorelSet":
        self._check_same_space(other)
        if self.space.kind == "discrete":
            pts = set(self.include) - set(other.include)
            return BorelSet.make(self.space, include=pts)
        raw = geometry.subtract_boxes(self.boxes, other.boxes)
        return self._fix_points(raw, self._specials(other),
                                lambda p: self.member(p) and not other.member(p))

    def complement(self) -> "BorelSet":
        return BorelSet.whole(self.space).difference(self)

    # -- presentation / serialization ----------------------------------

    def label(self) -> str:
        if self.name:
            return self.name
        if self.space.kind == "discrete":
            return "{" + ",".join(geometry.fmt_point(p) for p in self.include) + "}"
        parts = [geometry.fmt_box(lo, hi) for lo, hi in self.boxes]
        s = "|".join(parts) if parts else "empty"
        if self.include:
            s += "+{" + ",".join(geometry.fmt_point(p) for p in self.include) + "}"
        if self.exclude:
            s += "-{" + ",".join(geometry.fmt_point(p) for p in self.exclude) + "}"
        return s

    def __str__(self):
        return self.label()

    def to_json(self) -> dict:
        out = {"boxes": [[list(lo), list(hi)] for lo, hi in self.boxes]}
        if self.include:
            out["include"] = [list(p) for p in self.include]
        if self.exclude:
            out["exclude"] = [list(p) for p in self.exclude]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, space, data: dict) -> "BorelSet":
        return cls.make(
            space,
            boxes=[(tuple(b[0]), tuple(b[1])) for b in data.get("boxes", [])],
            include=[tuple(p) for p in data.get("include", [])],
            exclude=[tuple(p) for p in data.get("exclude", [])],
            name=data.get("name"),
        )


# ---------------------------------------------------------------------------
# densities


@dataclass(frozen=True)
class GridDensity:
    """Piecewise-constant density on a rectangular grid.

    ``breakpoints`` holds one strictly increasing list per axis spanning
    the space box exactly; ``values`` lists one nonnegative height per
    cell in C order.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        for axis in self.breakpoints:
            if len(axis) < 2 or any(a >= b for a, b in zip(axis, axis[1:])):
                raise InvalidSpecError("breakpoints must be strictly increasing")
        n_cells = math.prod(len(a) - 1 for a in self.breakpoints)
        if len(self.values) != n_cells:
            raise InvalidSpecError(
                f"expected {n_cells} cell values, got {len(self.values)}")
        if any(v < 0 or not math.isfinite(v) for v in self.values):
            raise InvalidSpecError("density values must be finite and >= 0")

    @classmethod
    def uniform(cls, space: Space, value: float, cells_per_axis: int | None = None) -> "GridDensity":
        k = cells_per_axis or space.grid
        axes = []
        for a, b in zip(space.lower, space.upper):
            axes.append(tuple(a + (b - a) * j / k for j in range(k + 1)))
        n = k ** space.dim
        return cls(breakpoints=tuple(axes), values=(float(value),) * n)

    def shape(self):
        return tuple(len(a) - 1 for a in self.breakpoints)

    def cells(self) -> Iterator[tuple]:
        """Yield (lo, hi, value) for every grid cell."""
        shape = self.shape()
        for flat, idx in enumerate(_product(*(range(s) for s in shape))):
            lo = tuple(self.breakpoints[i][k] for i, k in enumerate(idx))
            hi = tuple(self.breakpoints[i][k + 1] for i, k in enumerate(idx))
            yield lo, hi, self.values[flat]

    def value_at(self, p) -> float:
        """Height of the cell containing p (top faces closed on the last cell)."""
        idx = []
        for i, x in enumerate(p):
            axis = self.breakpoints[i]
            k = bisect.bisect_right(axis, x) - 1
            if k == len(axis) - 1 and x == axis[-1]:
                k -= 1
            if k < 0 or k >= len(axis) - 1:
                return 0.0
            idx.append(k)
        shape = self.shape()
        flat = 0
        for i, k in enumerate(idx):
            flat = flat * shape[i] + k
        return self.values[flat]

    def total(self) -> float:
        return fsum(v * geometry.box_volume(lo, hi) for lo, hi, v in self.cells() if v)

    def to_json(self) -> dict:
        return {"grid": [list(a) for a in self.breakpoints], "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "GridDensity":
        return cls(breakpoints=tuple(tuple(a) for a in data["grid"]),
                   values=tuple(float(v) for v in data["values"]))


def _merge_densities(d1: GridDensity | None, d2: GridDensity | None,
                     combine: Callable[[float, float], float]) -> GridDensity | None:
    if d1 is None and d2 is None:
        return None
    if d1 is None:
        d1, d2 = d2, d1
    if d2 is None:
        axes = d1.breakpoints
        vals = []
        for lo, hi, _ in d1.cells():
            mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
            vals.append(combine(d1.value_at(mid), 0.0))
        return GridDensity(breakpoints=axes, values=tuple(vals))
    axes = tuple(tuple(sorted(set(a1) | set(a2)))
                 for a1, a2 in zip(d1.breakpoints, d2.breakpoints))
    vals = []
    for idx in _product(*(range(len(a) - 1) for a in axes)):
        lo = tuple(axes[i][k] for i, k in enumerate(idx))
        hi = tuple(axes[i][k + 1] for i, k in enumerate(idx))
        mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
        vals.append(combine(d1.value_at(mid), d2.value_at(mid)))
    return GridDensity(breakpoints=axes, values=tuple(vals))


# ---------------------------------------------------------------------------
# measures


def _normalize_atoms(atoms) -> tuple:
    merged: dict = {}
    for p, w in atoms:
        p = tuple(float(x) for x in p)
        w = float(w)
        if w < 0 or not math.isfinite(w):
            raise InvalidSpecError("atom weights must be finite and >= 0")
        merged[p] = merged.get(p, 0.0) + w
    return tuple(sorted((p, w) for p, w in merged.items() if w > 0))


@dataclass(frozen=True)
class FiniteMeasure:
    """Weighted atoms plus an optional grid density. Immutable.

    The cached total mass is computed on first use; recomputation is
    idempotent, so concurrent readers are safe.
    """

    space: Space
    atoms: tuple = ()
    density: GridDensity | None = None

    def __post_init__(self):
        for p, w in self.atoms:
            if not self.space.contains(p):
                raise InvalidSpecError(f"atom {p} outside the space")
        if self.density is not None:
            if self.space.kind != "box":
                raise InvalidSpecError("densities need a box space")
            for axis, a, b in zip(self.density.breakpoints, self.space.lower, self.space.upper):
                if axis[0] != a or axis[-1] != b:
                    raise InvalidSpecError("density grid must span the space box")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_atoms(cls, space, atoms) -> "FiniteMeasure":
        return cls(space=space, atoms=_normalize_atoms(atoms))

    @classmethod
    def dirac(cls, space, point, weight=1.0) -> "FiniteMeasure":
        return cls.from_atoms(space, [(tuple(point), weight)])

    @classmethod
    def zero(cls, space) -> "FiniteMeasure":
        return cls(space=space)

    @classmethod
    def lebesgue(cls, space, height=1.0, cells_per_axis=None) -> "FiniteMeasure":
        if height < 0:
            raise InvalidSpecError("height must be >= 0")
        return cls(space=space, density=GridDensity.uniform(space, height, cells_per_axis))

    @classmethod
    def with_density(cls, space, density: GridDensity, atoms=()) -> "FiniteMeasure":
        return cls(space=space, atoms=_normalize_atoms(atoms), density=density)

    # -- mass ----------------------------------------------------------

    @cached_property
    def _total(self) -> float:
        parts = [w for _, w in self.atoms]
        if self.density is not None:
            parts.append(self.density.total())
        return fsum(parts)

    def total_mass(self) -> float:
        return self._total

    def evaluate(self, a: BorelSet) -> float:
        """Mass of a test set. Additive over disjoint sets up to rounding."""
        if a.space != self.space:
            raise SpaceMismatchError("set and measure live on different spaces")
        terms = [w for p, w in self.atoms if a.member(p)]
        if self.density is not None:
            for lo, hi, v in self.density.cells():
                if v == 0.0:
                    continue
                for blo, bhi in a.boxes:
                    inter = geometry.box_intersection(lo, hi, blo, bhi)
                    if inter is not None:
                        terms.append(v * geometry.box_volume(*inter))
        return fsum(terms)

    # -- algebra ---------------------------------------------------------

    def scale(self, c: float) -> "FiniteMeasure":
        if c < 0 or not math.isfinite(c):
            raise InvalidSpecError("scale factor must be finite and >= 0")
        atoms = tuple((p, w * c) for p, w in self.atoms if w * c > 0)
        dens = None
        if self.density is not None:
            dens = GridDensity(breakpoints=self.density.breakpoints,
                               values=tuple(v * c for v in self.density.values))
        return FiniteMeasure(space=self.space, atoms=atoms, density=dens)

    def add(self, other: "FiniteMeasure") -> "FiniteMeasure":
        if other.space != self.space:
            raise SpaceMismatchError("measures live on different spaces")
        atoms = _normalize_atoms(list(self.atoms) + list(other.atoms))
        dens = _merge_densities(self.density, other.density, lambda a, b: a + b)
        return FiniteMeasure(space=self.space, atoms=atoms, density=dens)

    def restrict(self, a: BorelSet) -> "FiniteMeasure":
        if a.space != self.space:
            raise SpaceMismatchError("set and measure live on different spaces")
        atoms = tuple((p, w) for p, w in self.atoms if a.member(p))
        dens = None
        if self.density is not None:
            if self.space.kind != "box":
                raise InvalidSpecError("density restriction needs a box space")
            axes = list(self.density.breakpoints)
            for blo, bhi in a.boxes:
                for i in range(self.space.dim):
                    merged = set(axes[i])
                    merged.add(blo[i])
                    merged.add(bhi[i])
                    axes[i] = tuple(sorted(merged))
            axes = tuple(axes)
            vals = []
            hi_dom = self.space.upper
            for idx in _product(*(range(len(ax) - 1) for ax in axes)):
                lo = tuple(axes[i][k] for i, k in enumerate(idx))
                hi = tuple(axes[i][k + 1] for i, k in enumerate(idx))
                mid = tuple((x + y) / 2 for x, y in zip(lo, hi))
                inside = any(geometry.point_in_box(mid, q, r, hi_dom) for q, r in a.boxes)
                vals.append(self.density.value_at(mid) if inside else 0.0)
            dens = GridDensity(breakpoints=axes, values=tuple(vals))
        return FiniteMeasure(space=self.space, atoms=atoms, density=dens)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        out = {"space": self.space.to_json(),
               "atoms": [[list(p), w] for p, w in self.atoms]}
        if self.density is not None:
            out["density"] = self.density.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMeasure":
        space = Space.from_json(data["space"])
        atoms = [(tuple(p), w) for p, w in data.get("atoms", [])]
        dens = None
        if "density" in data and data["density"] is not None:
            dens = GridDensity.from_json(data["density"])
        return cls(space=space, atoms=_normalize_atoms(atoms), density=dens)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "FiniteMeasure":
        return cls.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# sequences


@dataclass
class MeasureSequence:
    """Lazily generated sequence m_1, m_2, ... up to a declared range.

    Generation is memoized; regeneration is idempotent, so the cache
    needs no locking.
    """

    space: Space
    generator: Callable[[int], FiniteMeasure]
    n_max: int
    name: str = "m_n"
    _memo: dict = field(default_factory=dict, repr=False)

    def at(self, n: int) -> FiniteMeasure:
        if n < 1:
            raise InvalidSpecError("sequence indices start at 1")
        m = self._memo.get(n)
        if m is None:
            m = self.generator(n)
            if m.space != self.space:
                raise SpaceMismatchError(f"generator returned a measure on a different space at n={n}")
            self._memo[n] = m
        return m

    def indices(self) -> range:
        return range(1, self.n_max + 1)

    @classmethod
    def constant(cls, measure: FiniteMeasure, n_max: int, name="m") -> "MeasureSequence":
        return cls(space=measure.space, generator=lambda n: measure, n_max=n_max, name=name)


# ---------------------------------------------------------------------------
# domination and rings


@dataclass(frozen=True)
class DominationResult:
    ok: bool
    witness: BorelSet | None = None
    gap: float = 0.0

    def __bool__(self):
        return self.ok


def dominates(big: FiniteMeasure, small: FiniteMeasure, ring: Sequence[BorelSet],
              rtol: float = MASS_RTOL) -> DominationResult:
    """True when small(A) <= big(A) on every ring set, up to scaled rounding."""
    if not ring:
        raise InvalidSpecError("domination needs a nonempty ring")
    scale = max(1.0, big.total_mass(), small.total_mass())
    tol = rtol * scale
    for a in ring:
        lo, hi = big.evaluate(a), small.evaluate(a)
        if hi > lo + tol:
            return DominationResult(ok=False, witness=a, gap=hi - lo)
    return DominationResult(ok=True)


def dyadic_ring(space: Space, resolution: int, atom_points: Iterable = (),
                extra: Sequence[BorelSet] = ()) -> list[BorelSet]:
    """Finite test ring: the whole space, its dyadic cells at levels
    1..resolution, atom-derived sets (singletons, the space minus an atom,
    the finest cell containing an atom minus it), plus any extras.

    The order is deterministic; witnesses are reported as the first
    violating set in this order.
    """
    sets: list[BorelSet] = [BorelSet.whole(space)]
    if space.kind == "discrete":
        pts = list(space.points)
        for p in pts:
            sets.append(BorelSet.singleton(space, p))
        if 2 ** len(pts) <= 512:
            for mask in range(1, 2 ** len(pts)):
                subset = [p for i, p in enumerate(pts) if mask >> i & 1]
                if len(subset) in (1, len(pts)):
                    continue
                sets.append(BorelSet.from_points(space, subset))
        sets.extend(extra)
        return sets

    lo, hi = space.lower, space.upper
    for level in range(1, resolution + 1):
        for i, (clo, chi) in enumerate(geometry.dyadic_cells(lo, hi, level)):
            sets.append(BorelSet.from_box(space, clo, chi,
                                          name=geometry.fmt_box(clo, chi)))
    pts = sorted({tuple(p) for p in atom_points if space.contains(tuple(p))})
    omega = sets[0]
    for p in pts:
        single = BorelSet.singleton(space, p)
        sets.append(single)
        diff = omega.difference(single)
        sets.append(BorelSet(space=space, boxes=diff.boxes, include=diff.include,
                             exclude=diff.exclude,
                             name=f"Omega-{{{geometry.fmt_point(p)}}}"))
        for clo, chi in geometry.dyadic_cells(lo, hi, resolution):
            if geometry.point_in_box(p, clo, chi, hi):
                cell = BorelSet.from_box(space, clo, chi)
                d = cell.difference(single)
                sets.append(BorelSet(space=space, boxes=d.boxes, include=d.include,
                                     exclude=d.exclude,
                                     name=f"{geometry.fmt_box(clo, chi)}-{{{geometry.fmt_point(p)}}}"))
                break
    sets.extend(extra)
    return sets


def sequence_atom_points(seq: MeasureSequence, limit: FiniteMeasure | None = None,
                         sample=(1, 2)) -> list:
    """Default atom points for ring construction: atoms of the limit and of
    a small sample of the sequence (first two terms and the last)."""
    pts = set()
    if limit is not None:
        pts.update(p for p, _ in limit.atoms)
    for n in sorted(set(list(sample) + [seq.n_max])):
        if 1 <= n <= seq.n_max:
            pts.update(p for p, _ in seq.at(n).atoms)
    return sorted(pts)
