"""Convergence checkers for sequences of finite measures.

Every checker inspects a finite range n = 1..N against a finite test
family or set ring and returns a Verdict with one of four statuses:

* SUPPORTED: the sampled errors end below tolerance and do not increase
  across the final windows;
* REFUTED: the errors plateau above tolerance (or a uniformity constant
  degenerates), with the first offending item as witness;
* INCONCLUSIVE: neither pattern is clean at this range;
* NOT_APPLICABLE: a hypothesis of the statement under test already
  failed, so its conclusion asserts nothing here.

Statuses are evidence about the sampled range, not proofs. Tolerances
are relative to the mass scale max(1, limit mass, sup sequence mass).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from math import fsum

from .errors import InvalidSpecError
from .integration import (
    FunctionSequence,
    QuadratureConfig,
    DEFAULT_CONFIG,
    ScalarFn,
    integrate,
    integrate_abs,
    neg_part,
    pos_part,
    superlevel_integral,
    superlevel_measure,
)
from .measures import FiniteMeasure, MeasureSequence
from .testfunctions import c0_family, cb_family
from . import geometry

#: Final-window means may rise by this fraction of the threshold and
#: still count as nonincreasing.
SLACK_REL = 0.01
#: A refutation requires the last window to stay at least this fraction
#: of the worst window: errors that are merely drifting down slowly stay
#: inconclusive instead.
PLATEAU_RATIO = 0.9
#: Default thresholds for uniform absolute continuity reports.
DEFAULT_EPS_GRID = (0.5, 0.25, 0.1)
#: Integral sups growing past this ratio between half and full range
#: read as unbounded.
GROWTH_RATIO = 1.5


class Status(enum.Enum):
    SUPPORTED = "SUPPORTED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"
    NOT_APPLICABLE = "NOT_APPLICABLE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TrendResult:
    """Outcome of the window-mean trend test on an error sequence."""

    status: Status
    means: tuple
    threshold: float
    final_error: float
    n: int


def assess_trend(errors, tol: float, scale: float = 1.0) -> TrendResult:
    """Classify an error sequence by its last three window means.

    Windows have width max(1, N // 8). SUPPORTED needs the final mean at
    or below tol * scale and the three means nonincreasing within a
    small slack; REFUTED needs all three above threshold with no decay
    (a plateau); everything else is INCONCLUSIVE.
    """
    errors = [float(e) for e in errors]
    n = len(errors)
    threshold = tol * scale
    if n < 3:
        return TrendResult(status=Status.INCONCLUSIVE, means=(), threshold=threshold,
                           final_error=errors[-1] if errors else math.nan, n=n)
    w = max(1, n // 8)
    m1 = fsum(errors[n - 3 * w:n - 2 * w]) / w
    m2 = fsum(errors[n - 2 * w:n - w]) / w
    m3 = fsum(errors[n - w:]) / w
    slack = SLACK_REL * threshold + 1e-15 * max(scale, 1.0)
    means = (m1, m2, m3)
    if m3 <= threshold and m3 <= m2 + slack and m2 <= m1 + slack:
        status = Status.SUPPORTED
    elif min(means) > threshold and m3 >= PLATEAU_RATIO * max(means):
        status = Status.REFUTED
    else:
        status = Status.INCONCLUSIVE
    return TrendResult(status=status, means=means, threshold=threshold,
                       final_error=errors[-1], n=n)


@dataclass(frozen=True)
class Verdict:
    """Uniform result shape for every checker."""

    status: Status
    witness: str = ""
    final_error: float = math.nan
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status is Status.SUPPORTED


def mass_scale(seq: MeasureSequence, limit: FiniteMeasure) -> float:
    tops = [1.0, limit.total_mass()]
    tops.extend(seq.at(n).total_mass() for n in seq.indices())
    return max(tops)


def combine_trends(pairs, details: dict | None = None) -> Verdict:
    """Merge named per-item trends: first refuter wins, then first
    inconclusive; all-supported reports the worst final mean."""
    details = dict(details or {})
    details["items"] = {name: t.status.value for name, t in pairs}
    for name, t in pairs:
        if t.status is Status.REFUTED:
            return Verdict(Status.REFUTED, witness=name, final_error=t.means[-1],
                           details=details)
    for name, t in pairs:
        if t.status is Status.INCONCLUSIVE:
            return Verdict(Status.INCONCLUSIVE, witness=name,
                           final_error=t.final_error, details=details)
    worst = max((t.means[-1] for _, t in pairs), default=0.0)
    return Verdict(Status.SUPPORTED, final_error=worst, details=details)


# ---------------------------------------------------------------------------
# plain convergence modes


def family_limit_check(family, seq: MeasureSequence, limit: FiniteMeasure,
                       tol: float, config: QuadratureConfig = DEFAULT_CONFIG) -> Verdict:
    """Trend of |integral of g d m_n - integral of g d m| per family member."""
    scale = mass_scale(seq, limit)
    pairs = []
    for g in family:
        target = integrate(g, limit, config=config).value
        errors = [abs(integrate(g, seq.at(n), config=config).value - target)
                  for n in seq.indices()]
        pairs.append((f"g={g.name}", assess_trend(errors, tol, scale)))
    return combine_trends(pairs, details={"family": family.kind, "members": len(family)})


def vague_check(seq, limit, tol, levels: int = 3, config=DEFAULT_CONFIG) -> Verdict:
    return family_limit_check(c0_family(seq.space, levels), seq, limit, tol, config)


def weak_check(seq, limit, tol, levels: int = 3, config=DEFAULT_CONFIG) -> Verdict:
    return family_limit_check(cb_family(seq.space, levels), seq, limit, tol, config)


def mass_check(seq, limit, tol, config=DEFAULT_CONFIG) -> Verdict:
    scale = mass_scale(seq, limit)
    target = limit.total_mass()
    errors = [abs(seq.at(n).total_mass() - target) for n in seq.indices()]
    t = assess_trend(errors, tol, scale)
    witness = "Omega" if t.status is not Status.SUPPORTED else ""
    return Verdict(t.status, witness=witness,
                   final_error=t.means[-1] if t.means else math.nan,
                   details={"target": target})


def setwise_check(seq, limit, ring, tol, config=DEFAULT_CONFIG) -> Verdict:
    """Trend of |m_n(A) - m(A)| over every ring set."""
    scale = mass_scale(seq, limit)
    pairs = []
    for a in ring:
        target = limit.evaluate(a)
        errors = [abs(seq.at(n).evaluate(a) - target) for n in seq.indices()]
        pairs.append((a.label(), assess_trend(errors, tol, scale)))
    return combine_trends(pairs, details={"ring_size": len(ring)})


def dominates_check(seq, limit, ring, config=DEFAULT_CONFIG) -> Verdict:
    """Whether every m_n is dominated by the limit measure on the ring."""
    from .measures import dominates

    for n in seq.indices():
        res = dominates(limit, seq.at(n), ring)
        if not res.ok:
            return Verdict(Status.REFUTED, witness=f"{res.witness.label()}@n={n}",
                           final_error=res.gap)
    return Verdict(Status.SUPPORTED, final_error=0.0,
                   details={"ring_size": len(ring), "n_max": seq.n_max})


# ---------------------------------------------------------------------------
# uniformity engines


@dataclass(frozen=True)
class DeltaEntry:
    """delta(eps) facts for one threshold.

    delta is the smallest limit-mass among ring sets whose checked value
    exceeds eps anywhere in the range; delta_half is the same over the
    first half. Uniformity holds when that minimum stays bounded away
    from zero as n grows, and fails when it collapses: ever smaller sets
    keep capturing more than eps."""

    eps: float
    delta: float
    delta_half: float
    status: Status
    witness: str = ""
    n_at: int = 0


@dataclass(frozen=True)
class UniformityReport:
    entries: tuple
    status: Status
    witness: str = ""
    final_error: float = math.nan

    def as_verdict(self, extra: dict | None = None) -> Verdict:
        details = dict(extra or {})
        details["entries"] = [
            {"eps": e.eps, "delta": e.delta, "delta_half": e.delta_half,
             "status": e.status.value, "witness": e.witness, "n_at": e.n_at}
            for e in self.entries
        ]
        return Verdict(self.status, witness=self.witness,
                       final_error=self.final_error, details=details)


def uniformity_report(masses, table, labels, eps_list, n_max, tol,
                      scale: float = 1.0) -> UniformityReport:
    """Shared delta(eps) engine for measures and integrals.

    masses[i] is the limit mass of ring set i; table[i][k] the checked
    quantity for that set at n = k + 1. For each eps, track over n the
    running minimum limit-mass among sets seen violating eps (the mass
    it takes to capture more than eps). That prefix minimum is
    nonincreasing; uniformity holds when it plateaus above the
    tolerance, and fails when it collapses to the tolerance floor: ever
    smaller sets keep exceeding eps, so no positive delta can serve. A
    plateau at or below tolerance is indistinguishable from collapse at
    this resolution, so the ring must resolve masses finer than
    tol * scale for refutations to be meaningful.
    """
    entries = []
    half = max(1, n_max // 2)
    cap = max(scale, 1.0)
    for eps in eps_list:
        prefix = []
        best = math.inf
        best_i = -1
        for k in range(n_max):
            for i in range(len(table)):
                if table[i][k] > eps and masses[i] < best:
                    best = masses[i]
                    best_i = i
            prefix.append(best)
        d_full = prefix[-1]
        d_half = prefix[half - 1]
        if best_i < 0:
            entries.append(DeltaEntry(eps=eps, delta=math.inf, delta_half=math.inf,
                                      status=Status.SUPPORTED))
            continue
        row = table[best_i]
        n_at = row.index(max(row)) + 1
        wit = labels[best_i]
        t = assess_trend([min(v, cap) for v in prefix], tol, scale)
        if t.status is Status.SUPPORTED:
            status = Status.REFUTED  # the needed mass collapsed to zero
        elif t.status is Status.REFUTED:
            status = Status.SUPPORTED  # it plateaued strictly above tolerance
        else:
            status = Status.INCONCLUSIVE
        entries.append(DeltaEntry(eps=eps, delta=d_full, delta_half=d_half,
                                  status=status, witness=wit, n_at=n_at))
    status = Status.SUPPORTED
    witness = ""
    for e in entries:
        if e.status is Status.REFUTED:
            status, witness = Status.REFUTED, e.witness
            break
    else:
        for e in entries:
            if e.status is Status.INCONCLUSIVE:
                status, witness = Status.INCONCLUSIVE, e.witness
                break
    finite = [e.delta for e in entries if math.isfinite(e.delta)]
    return UniformityReport(entries=tuple(entries), status=status, witness=witness,
                            final_error=min(finite) if finite else math.inf)


def uniform_abs_continuity(seq: MeasureSequence, limit: FiniteMeasure, ring,
                           tol: float = 0.02,
                           eps_list=DEFAULT_EPS_GRID) -> UniformityReport:
    """delta(eps) schedule for the measures themselves."""
    masses = [limit.evaluate(a) for a in ring]
    table = [[seq.at(n).evaluate(a) for n in seq.indices()] for a in ring]
    labels = [a.label() for a in ring]
    return uniformity_report(masses, table, labels, eps_list, seq.n_max, tol,
                             mass_scale(seq, limit))


def uac_measures_check(seq, limit, ring, tol: float = 0.02,
                       eps_list=DEFAULT_EPS_GRID,
                       config=DEFAULT_CONFIG) -> Verdict:
    return uniform_abs_continuity(seq, limit, ring, tol, eps_list).as_verdict(
        {"kind": "measures"})


def uniform_abs_continuity_integrals(fseq: FunctionSequence, seq: MeasureSequence,
                                     limit: FiniteMeasure, ring,
                                     tol: float = 0.02,
                                     eps_list=DEFAULT_EPS_GRID,
                                     config: QuadratureConfig = DEFAULT_CONFIG) -> UniformityReport:
    """delta(eps) schedule for set integrals of |f_n| against m_n."""
    masses = [limit.evaluate(a) for a in ring]
    table = []
    for a in ring:
        row = [integrate_abs(fseq.at(n), seq.at(n), region=a, config=config).value
               for n in seq.indices()]
        table.append(row)
    labels = [a.label() for a in ring]
    return uniformity_report(masses, table, labels, eps_list, seq.n_max, tol,
                             mass_scale(seq, limit))


def uac_integrals_check(fseq, seq, limit, ring, tol: float = 0.02,
                        eps_list=DEFAULT_EPS_GRID,
                        config=DEFAULT_CONFIG) -> Verdict:
    return uniform_abs_continuity_integrals(fseq, seq, limit, ring, tol, eps_list,
                                            config).as_verdict({"kind": "integrals"})


# ---------------------------------------------------------------------------
# uniform integrability


def default_alpha_grid(n_max: int) -> tuple:
    """Geometric thresholds 1, 2, 4, ... capped at n_max / 2; probing past
    the sampled range would make every tail vacuously empty."""
    alphas = []
    a = 1.0
    while a <= max(1.0, n_max / 2):
        alphas.append(a)
        a *= 2.0
    return tuple(alphas)


def uniform_integrability_check(fseq, seq, tol, alphas=None,
                                config=DEFAULT_CONFIG,
                                limit: FiniteMeasure | None = None) -> Verdict:
    """Trend of tail(alpha) = sup_n of the integral of |f_n| over
    {|f_n| > alpha}, along a geometric alpha grid."""
    if alphas is None:
        alphas = default_alpha_grid(seq.n_max)
    scale = mass_scale(seq, limit if limit is not None else seq.at(1))
    tails = []
    arg_ns = []
    for a in alphas:
        vals = [superlevel_integral(fseq.at(n), seq.at(n), a, config)
                for n in seq.indices()]
        top = max(vals)
        tails.append(top)
        arg_ns.append(vals.index(top) + 1)
    t = assess_trend(tails, tol, scale)
    witness = ""
    if t.status is not Status.SUPPORTED:
        witness = f"alpha={geometry.fmt_float(alphas[-1])}@n={arg_ns[-1]}"
    return Verdict(t.status, witness=witness,
                   final_error=tails[-1],
                   details={"alphas": list(alphas), "tails": tails})


def ui_equivalence_check(fseq, seq, limit, ring, tol,
                         eps_list=DEFAULT_EPS_GRID, alphas=None,
                         config=DEFAULT_CONFIG) -> Verdict:
    """Cross-check: the tail criterion should agree with uniform absolute
    continuity of the set integrals plus a bounded integral sup, as long
    as the masses stay bounded."""
    ui = uniform_integrability_check(fseq, seq, tol, alphas, config, limit)
    uac = uac_integrals_check(fseq, seq, limit, ring, tol, eps_list, config)
    sups = [integrate_abs(fseq.at(n), seq.at(n), config=config).value
            for n in seq.indices()]
    half = max(1, seq.n_max // 2)
    sup_full = max(sups)
    sup_half = max(sups[:half])
    scale = mass_scale(seq, limit)
    growing = sup_full > GROWTH_RATIO * sup_half + 1e-12 * scale
    details = {"ui": ui.status.value, "uac_integrals": uac.status.value,
               "sup_full": sup_full, "sup_half": sup_half, "growing": growing}
    if Status.INCONCLUSIVE in (ui.status, uac.status):
        return Verdict(Status.INCONCLUSIVE, witness="subcheck inconclusive",
                       details=details)
    left = ui.status is Status.SUPPORTED
    right = uac.status is Status.SUPPORTED and not growing
    if left == right:
        return Verdict(Status.SUPPORTED, final_error=abs(sup_full - sup_half),
                       details=details)
    return Verdict(Status.REFUTED,
                   witness=f"ui={ui.status.value} vs uac+bounded={right}",
                   details=details)


# ---------------------------------------------------------------------------
# one-sided bounds and pointwise hypotheses


def portmanteau_check(seq, limit, closed_sets, open_sets, tol,
                      config=DEFAULT_CONFIG) -> Verdict:
    """One-sided set bounds under mass convergence: overshoot on closed
    test sets and undershoot on open ones must both decay."""
    scale = mass_scale(seq, limit)
    masses = mass_check(seq, limit, tol, config)
    if masses.status is not Status.SUPPORTED:
        return Verdict(Status.NOT_APPLICABLE, witness="mass",
                       details={"mass": masses.status.value})
    pairs = []
    for a in closed_sets:
        target = limit.evaluate(a)
        errors = [max(seq.at(n).evaluate(a) - target, 0.0) for n in seq.indices()]
        pairs.append((f"closed:{a.label()}", assess_trend(errors, tol, scale)))
    for a in open_sets:
        target = limit.evaluate(a)
        errors = [max(target - seq.at(n).evaluate(a), 0.0) for n in seq.indices()]
        pairs.append((f"open:{a.label()}", assess_trend(errors, tol, scale)))
    return combine_trends(pairs)


def sample_points(space, level: int, limit: FiniteMeasure | None = None) -> list:
    """Deterministic pointwise probes: dyadic cell midpoints (or all the
    points of a discrete space) plus any atoms of the limit measure."""
    if space.kind == "discrete":
        pts = list(space.points)
    else:
        pts = [tuple((a + b) / 2 for a, b in zip(lo, hi))
               for lo, hi in geometry.dyadic_cells(space.lower, space.upper, level)]
    if limit is not None:
        known = set(pts)
        for p, _ in limit.atoms:
            if p not in known:
                pts.append(p)
    return pts


def pointwise_ae_check(fseq, f_limit: ScalarFn, limit: FiniteMeasure, tol,
                       level: int = 4, config=DEFAULT_CONFIG) -> Verdict:
    """Trend of the worst pointwise gap |f_n - f| over the probe points."""
    space = limit.space
    pts = sample_points(space, level, limit)
    f_vals = [f_limit(p) for p in pts]
    scale = max(1.0, max(abs(v) for v in f_vals))
    errors = []
    arg = []
    for n in fseq.indices():
        fn = fseq.at(n)
        gaps = [abs(fn(p) - v) for p, v in zip(pts, f_vals)]
        worst = max(gaps)
        errors.append(worst)
        arg.append(pts[gaps.index(worst)])
    t = assess_trend(errors, tol, scale)
    witness = "" if t.status is Status.SUPPORTED else geometry.fmt_point(arg[-1])
    return Verdict(t.status, witness=witness,
                   final_error=t.means[-1] if t.means else math.nan,
                   details={"points": len(pts)})


def convergence_in_measure_check(fseq, f_limit: ScalarFn, seq: MeasureSequence,
                                 eps: float, tol, config=DEFAULT_CONFIG,
                                 limit: FiniteMeasure | None = None) -> Verdict:
    """Trend of m_n({|f_n - f| > eps})."""
    if eps <= 0:
        raise InvalidSpecError("eps must be positive")
    scale = mass_scale(seq, limit if limit is not None else seq.at(1))
    vals = []
    for n in seq.indices():
        fn = fseq.at(n)
        diff = ScalarFn(fn=lambda p, fn=fn: fn(p) - f_limit(p),
                        name=f"{fn.name}-{f_limit.name}")
        vals.append(superlevel_measure(diff, seq.at(n), eps, config))
    t = assess_trend(vals, tol, scale)
    witness = "" if t.status is Status.SUPPORTED else f"eps={geometry.fmt_float(eps)}"
    return Verdict(t.status, witness=witness,
                   final_error=t.means[-1] if t.means else math.nan,
                   details={"eps": eps})


# ---------------------------------------------------------------------------
# implication checks: hypotheses first, then the conclusion


def _gate(hyps: dict) -> Verdict | None:
    """NOT_APPLICABLE on the first refuted hypothesis, INCONCLUSIVE on the
    first undecided one, None when every hypothesis is supported."""
    statuses = {name: v.status.value for name, v in hyps.items()}
    for name, v in hyps.items():
        if v.status in (Status.REFUTED, Status.NOT_APPLICABLE):
            return Verdict(Status.NOT_APPLICABLE, witness=f"hypothesis:{name}",
                           details={"hypotheses": statuses})
    for name, v in hyps.items():
        if v.status is Status.INCONCLUSIVE:
            return Verdict(Status.INCONCLUSIVE, witness=f"hypothesis:{name}",
                           details={"hypotheses": statuses})
    return None


def weak_from_uac_check(seq, limit, ring, tol, levels: int = 3,
                        eps_list=DEFAULT_EPS_GRID, config=DEFAULT_CONFIG) -> Verdict:
    """Vague convergence plus uniform absolute continuity should upgrade
    to convergence against every bounded member family."""
    hyps = {
        "vague": vague_check(seq, limit, tol, levels, config),
        "uac_measures": uac_measures_check(seq, limit, ring, tol, eps_list, config),
    }
    gated = _gate(hyps)
    if gated is not None:
        return gated
    out = weak_check(seq, limit, tol, levels, config)
    details = dict(out.details)
    details["hypotheses"] = {k: v.status.value for k, v in hyps.items()}
    return Verdict(out.status, witness=out.witness, final_error=out.final_error,
                   details=details)


def dominated_limit_check(seq, limit, ring, tol, levels: int = 3,
                          config=DEFAULT_CONFIG) -> Verdict:
    """Domination by the limit plus vague convergence should force
    setwise convergence on the ring."""
    hyps = {
        "dominated": dominates_check(seq, limit, ring, config),
        "vague": vague_check(seq, limit, tol, levels, config),
    }
    gated = _gate(hyps)
    if gated is not None:
        return gated
    out = setwise_check(seq, limit, ring, tol, config)
    details = dict(out.details)
    details["hypotheses"] = {k: v.status.value for k, v in hyps.items()}
    return Verdict(out.status, witness=out.witness, final_error=out.final_error,
                   details=details)


def _integral_conclusion(fs_n, f_lim, seq, limit, ring, tol, config) -> Verdict:
    scale = mass_scale(seq, limit)
    pairs = []
    for a in ring:
        target = integrate(f_lim, limit, region=a, config=config).value
        errors = [abs(integrate(fs_n.at(n), seq.at(n), region=a, config=config).value
                      - target) for n in seq.indices()]
        pairs.append((a.label(), assess_trend(errors, tol, scale)))
    return combine_trends(pairs, details={"ring_size": len(ring)})


def _parts_conclusion(fseq, f_lim, seq, limit, ring, tol, config) -> Verdict:
    scale = mass_scale(seq, limit)
    pairs = []
    lim_plus, lim_minus = pos_part(f_lim), neg_part(f_lim)
    for a in ring:
        tp = integrate(lim_plus, limit, region=a, config=config).value
        tm = integrate(lim_minus, limit, region=a, config=config).value
        errors = []
        for n in seq.indices():
            fn = fseq.at(n)
            ep = abs(integrate(pos_part(fn), seq.at(n), region=a, config=config).value - tp)
            em = abs(integrate(neg_part(fn), seq.at(n), region=a, config=config).value - tm)
            errors.append(max(ep, em))
        pairs.append((a.label(), assess_trend(errors, tol, scale)))
    return combine_trends(pairs, details={"ring_size": len(ring), "split": "pos/neg"})


def vitali_check(fseq, f_limit, seq, limit, ring, tol, levels: int = 3,
                 eps_list=DEFAULT_EPS_GRID, config=DEFAULT_CONFIG,
                 variant: str = "plain",
                 pointwise_level: int = 4) -> Verdict:
    """Limit interchange for set integrals.

    Hypotheses: pointwise convergence of the integrands toward a
    continuous limit, vague convergence of the measures, uniform
    absolute continuity of the measures, and of the set integrals of
    (f_n); the plain and parts variants also require it of the limit
    integrand, while the bounded variant discharges that from
    boundedness of f (a delta for eps/M serves, M past sup |f|).
    Conclusion: set integrals of f_n against m_n approach those of f
    against m on every ring set.
    """
    if variant not in ("plain", "parts", "bounded"):
        raise InvalidSpecError(f"unknown vitali variant {variant!r}")
    hyps = {
        "pointwise": pointwise_ae_check(fseq, f_limit, limit, tol,
                                        pointwise_level, config),
        "vague": vague_check(seq, limit, tol, levels, config),
        "uac_measures": uac_measures_check(seq, limit, ring, tol, eps_list, config),
        "uac_integrals_seq": uac_integrals_check(fseq, seq, limit, ring, tol,
                                                 eps_list, config),
    }
    extra: dict = {}
    if variant == "bounded":
        pts = sample_points(limit.space, pointwise_level, limit)
        bound = max(abs(f_limit(p)) for p in pts)
        extra["limit_uac"] = f"discharged(|f|<={bound:g})"
    else:
        const = FunctionSequence.constant(f_limit, seq.n_max)
        hyps["uac_integrals_limit"] = uac_integrals_check(const, seq, limit, ring,
                                                          tol, eps_list, config)
    gated = _gate(hyps)
    if gated is not None:
        return gated
    if variant == "parts":
        out = _parts_conclusion(fseq, f_limit, seq, limit, ring, tol, config)
    else:
        out = _integral_conclusion(fseq, f_limit, seq, limit, ring, tol, config)
    details = dict(out.details)
    details.update(extra)
    details["hypotheses"] = {k: v.status.value for k, v in hyps.items()}
    details["variant"] = variant
    return Verdict(out.status, witness=out.witness, final_error=out.final_error,
                   details=details)


def vitali_parts_check(fseq, f_limit, seq, limit, ring, tol, levels: int = 3,
                       eps_list=DEFAULT_EPS_GRID, config=DEFAULT_CONFIG) -> Verdict:
    return vitali_check(fseq, f_limit, seq, limit, ring, tol, levels, eps_list,
                        config, variant="parts")


def vitali_bounded_check(fseq, f_limit, seq, limit, ring, tol, levels: int = 3,
                         eps_list=DEFAULT_EPS_GRID, config=DEFAULT_CONFIG) -> Verdict:
    return vitali_check(fseq, f_limit, seq, limit, ring, tol, levels, eps_list,
                        config, variant="bounded")
