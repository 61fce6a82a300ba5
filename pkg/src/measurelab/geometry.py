"""Axis-aligned box primitives.

Boxes are half-open products ``[lo_i, hi_i)`` with one domain-level
convention: a face that lies on the enclosing domain's upper boundary is
treated as closed, so the domain box contains every one of its points,
including the upper corner. All routines work on plain tuples of floats;
dimensions at desk scale are tiny, so no array library is involved.
"""

from __future__ import annotations

import math
from itertools import product as _product
from typing import Iterable, Iterator

Point = tuple
Box = tuple  # (lower point, upper point)


def box_is_empty(lo: Point, hi: Point) -> bool:
    return any(a >= b for a, b in zip(lo, hi))


def box_volume(lo: Point, hi: Point) -> float:
    if box_is_empty(lo, hi):
        return 0.0
    return math.prod(b - a for a, b in zip(lo, hi))


def box_intersection(lo1, hi1, lo2, hi2):
    """Intersection box, or None when empty."""
    lo = tuple(max(a, b) for a, b in zip(lo1, lo2))
    hi = tuple(min(a, b) for a, b in zip(hi1, hi2))
    if box_is_empty(lo, hi):
        return None
    return lo, hi


def point_in_box(p: Point, lo: Point, hi: Point, domain_hi: Point | None = None) -> bool:
    """Half-open membership; faces on the domain's upper boundary are closed."""
    for i, x in enumerate(p):
        if x < lo[i]:
            return False
        if x < hi[i]:
            continue
        if domain_hi is not None and hi[i] == domain_hi[i] and x == hi[i]:
            continue
        return False
    return True


def box_contains_box(outer: Box, inner: Box) -> bool:
    (olo, ohi), (ilo, ihi) = outer, inner
    return all(a <= b for a, b in zip(olo, ilo)) and all(a <= b for a, b in zip(ihi, ohi))


def sup_dist_to_box(p: Point, lo: Point, hi: Point) -> float:
    """Sup-norm distance from a point to a (closed) box."""
    return max(max(lo[i] - x, x - hi[i], 0.0) for i, x in enumerate(p))


def _grid_cells(breaks_per_axis) -> Iterator[Box]:
    for idx in _product(*(range(len(b) - 1) for b in breaks_per_axis)):
        lo = tuple(breaks_per_axis[i][k] for i, k in enumerate(idx))
        hi = tuple(breaks_per_axis[i][k + 1] for i, k in enumerate(idx))
        if not box_is_empty(lo, hi):
            yield lo, hi


def _breaks(boxes: Iterable[Box], axis: int):
    cuts = set()
    for lo, hi in boxes:
        cuts.add(lo[axis])
        cuts.add(hi[axis])
    return sorted(cuts)


def disjointify(boxes) -> list[Box]:
    """Rewrite a finite union of boxes as disjoint boxes with the same union."""
    boxes = [b for b in boxes if not box_is_empty(*b)]
    if len(boxes) <= 1:
        return boxes
    dim = len(boxes[0][0])
    axes = [_breaks(boxes, i) for i in range(dim)]
    out = []
    for lo, hi in _grid_cells(axes):
        mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
        if any(point_in_box(mid, blo, bhi) for blo, bhi in boxes):
            out.append((lo, hi))
    return out


def subtract_boxes(boxes_a, boxes_b) -> list[Box]:
    """Disjoint boxes covering (union of A) minus (union of B)."""
    boxes_a = [b for b in boxes_a if not box_is_empty(*b)]
    boxes_b = [b for b in boxes_b if not box_is_empty(*b)]
    if not boxes_a:
        return []
    if not boxes_b:
        return disjointify(boxes_a)
    dim = len(boxes_a[0][0])
    axes = [_breaks(boxes_a + boxes_b, i) for i in range(dim)]
    out = []
    for lo, hi in _grid_cells(axes):
        mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
        in_a = any(point_in_box(mid, blo, bhi) for blo, bhi in boxes_a)
        in_b = any(point_in_box(mid, blo, bhi) for blo, bhi in boxes_b)
        if in_a and not in_b:
            out.append((lo, hi))
    return out


def dyadic_cells(lo: Point, hi: Point, level: int) -> Iterator[Box]:
    """The 2^(level*d) dyadic subcells of a box.

    Cell boundaries are computed as ``a + (b-a) * j / 2^level`` so that
    boundaries at different levels coincide exactly in floating point.
    """
    k = 1 << level
    dim = len(lo)
    for idx in _product(range(k), repeat=dim):
        clo = tuple(lo[i] + (hi[i] - lo[i]) * idx[i] / k for i in range(dim))
        chi = tuple(lo[i] + (hi[i] - lo[i]) * (idx[i] + 1) / k for i in range(dim))
        yield clo, chi


def dyadic_midpoints(lo: Point, hi: Point, levels: int) -> Iterator[tuple[Point, float]]:
    """Midpoints and common volume of the dyadic subcells at a given level."""
    k = 1 << levels
    widths = [(b - a) / k for a, b in zip(lo, hi)]
    vol = math.prod(widths)
    dim = len(lo)
    for idx in _product(range(k), repeat=dim):
        mid = tuple(lo[i] + (idx[i] + 0.5) * widths[i] for i in range(dim))
        yield mid, vol


def fmt_float(x: float) -> str:
    if x == math.floor(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def fmt_point(p: Point) -> str:
    if len(p) == 1:
        return fmt_float(p[0])
    return "(" + ",".join(fmt_float(x) for x in p) + ")"


def fmt_box(lo: Point, hi: Point) -> str:
    parts = [f"[{fmt_float(a)},{fmt_float(b)})" for a, b in zip(lo, hi)]
    return "x".join(parts)
