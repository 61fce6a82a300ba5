"""Execute scenario checks and collect flat result rows."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import convergence as cv
from .convergence import DEFAULT_EPS_GRID, Status, Verdict
from .integration import DEFAULT_CONFIG, FunctionSequence
from .measures import (
    BorelSet,
    FiniteMeasure,
    MeasureSequence,
    dyadic_ring,
    sequence_atom_points,
)
from .multivalued import (
    Direction,
    MultifunctionSequence,
    pettis_identity_report,
    pettis_convergence_check,
    pettis_plain_check,
    pointwise_hausdorff_check,
    scalar_integrability_report,
)
from .recipes import build_function, build_measure, build_multifunction
from .scenarios import CheckSpec, Scenario


@dataclass(frozen=True)
class Overrides:
    """Command-line adjustments applied on top of a scenario."""

    tol: float | None = None
    n_max: int | None = None
    resolution: int | None = None
    depth: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class CheckRow:
    scenario: str
    check: str
    status: str
    witness: str
    final_error: float
    n_max: int
    expect: str

    @property
    def ok(self) -> bool:
        return self.status == self.expect


class RunContext:
    """Artifacts built once per scenario run: space, measures, ring,
    integrands, bodies."""

    def __init__(self, scenario: Scenario, overrides: Overrides = Overrides()):
        self.scenario = scenario
        self.space = scenario.build_space()
        self.tol = overrides.tol if overrides.tol is not None else scenario.tol
        self.n_max = overrides.n_max if overrides.n_max is not None else scenario.n_max
        self.resolution = (overrides.resolution
                           if overrides.resolution is not None
                           else scenario.ring.get("resolution", 3))
        self.seed = overrides.seed if overrides.seed is not None else scenario.seed
        if overrides.depth is not None:
            self.config = dataclasses.replace(DEFAULT_CONFIG, depth=overrides.depth)
        else:
            self.config = DEFAULT_CONFIG
        self.eps_list = scenario.eps if scenario.eps is not None else DEFAULT_EPS_GRID
        self.alphas = scenario.alphas
        self.levels = scenario.levels
        self._cache = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def limit(self) -> FiniteMeasure:
        return self._get("limit", lambda: build_measure(
            self.scenario.measures["limit"], self.space, None))

    @property
    def seq(self) -> MeasureSequence:
        spec = self.scenario.measures["sequence"]
        return self._get("seq", lambda: MeasureSequence(
            space=self.space,
            generator=lambda n: build_measure(spec, self.space, n),
            n_max=self.n_max))

    @property
    def ring(self) -> list:
        def build():
            extras = [BorelSet.from_box(self.space, tuple(b[0]), tuple(b[1]))
                      for b in self.scenario.ring.get("extra_boxes", [])]
            atoms = sequence_atom_points(self.seq, self.limit)
            return dyadic_ring(self.space, self.resolution,
                               atom_points=atoms, extra=extras)
        return self._get("ring", build)

    @property
    def f_limit(self):
        return self._get("f_limit", lambda: build_function(
            self.scenario.functions["limit"], self.space, None))

    @property
    def fseq(self) -> FunctionSequence:
        spec = self.scenario.functions["sequence"]
        return self._get("fseq", lambda: FunctionSequence(
            generator=lambda n: build_function(spec, self.space, n),
            n_max=self.n_max))

    @property
    def mf_limit(self):
        return self._get("mf_limit", lambda: build_multifunction(
            self.scenario.bodies["limit"], self.space, None))

    @property
    def mfseq(self) -> MultifunctionSequence:
        spec = self.scenario.bodies["sequence"]
        return self._get("mfseq", lambda: MultifunctionSequence(
            generator=lambda n: build_multifunction(spec, self.space, n),
            n_max=self.n_max))

    # ------------------------------------------------------------------
    # dispatch

    def run_check(self, check: CheckSpec) -> Verdict:
        handler = getattr(self, f"_check_{check.name}", None)
        if handler is None:
            raise ValueError(f"no handler for check {check.name!r}")
        return handler(check.params)

    def _check_mass(self, params):
        return cv.mass_check(self.seq, self.limit, self.tol, self.config)

    def _check_vague(self, params):
        return cv.vague_check(self.seq, self.limit, self.tol, self.levels,
                              self.config)

    def _check_weak(self, params):
        return cv.weak_check(self.seq, self.limit, self.tol, self.levels,
                             self.config)

    def _check_setwise(self, params):
        return cv.setwise_check(self.seq, self.limit, self.ring, self.tol,
                                self.config)

    def _check_dominates(self, params):
        return cv.dominates_check(self.seq, self.limit, self.ring, self.config)

    def _check_uac_measures(self, params):
        return cv.uac_measures_check(self.seq, self.limit, self.ring, self.tol,
                                     self.eps_list, self.config)

    def _check_weak_from_uac(self, params):
        return cv.weak_from_uac_check(self.seq, self.limit, self.ring, self.tol,
                                      self.levels, self.eps_list, self.config)

    def _check_dominated_limit(self, params):
        return cv.dominated_limit_check(self.seq, self.limit, self.ring,
                                        self.tol, self.levels, self.config)

    def _check_portmanteau(self, params):
        closed = [BorelSet.from_json(self.space, s)
                  for s in params.get("closed_sets", [])]
        opened = [BorelSet.from_json(self.space, s)
                  for s in params.get("open_sets", [])]
        return cv.portmanteau_check(self.seq, self.limit, closed, opened,
                                    self.tol, self.config)

    def _check_uac_integrals(self, params):
        return cv.uac_integrals_check(self.fseq, self.seq, self.limit,
                                      self.ring, self.tol, self.eps_list,
                                      self.config)

    def _check_ui(self, params):
        return cv.uniform_integrability_check(self.fseq, self.seq, self.tol,
                                              self.alphas, self.config,
                                              self.limit)

    def _check_ui_equivalence(self, params):
        return cv.ui_equivalence_check(self.fseq, self.seq, self.limit,
                                       self.ring, self.tol, self.eps_list,
                                       self.alphas, self.config)

    def _check_pointwise(self, params):
        return cv.pointwise_ae_check(self.fseq, self.f_limit, self.limit,
                                     self.tol, params.get("level", 4),
                                     self.config)

    def _check_conv_in_measure(self, params):
        return cv.convergence_in_measure_check(self.fseq, self.f_limit,
                                               self.seq, float(params["eps"]),
                                               self.tol, self.config,
                                               self.limit)

    def _vitali(self, variant):
        return cv.vitali_check(self.fseq, self.f_limit, self.seq, self.limit,
                               self.ring, self.tol, self.levels, self.eps_list,
                               self.config, variant=variant)

    def _check_vitali(self, params):
        return self._vitali(params.get("variant", "plain"))

    def _check_vitali_parts(self, params):
        return self._vitali("parts")

    def _check_vitali_bounded(self, params):
        return self._vitali("bounded")

    def _check_scalar_integrability(self, params):
        reports = [
            ("limit", scalar_integrability_report(self.mf_limit, self.limit,
                                                  self.config)),
            (f"n={self.n_max}",
             scalar_integrability_report(self.mfseq.at(self.n_max),
                                         self.seq.at(self.n_max), self.config)),
        ]
        for tag, rep in reports:
            for e in rep.entries:
                if not e.converging:
                    return Verdict(Status.REFUTED, witness=f"{tag}:{e.direction}",
                                   final_error=e.value)
        return Verdict(Status.SUPPORTED, final_error=0.0)

    def _identity_directions(self, params):
        dim = self.mf_limit.dim
        count = int(params.get("directions", 8))
        return Direction.signed(dim) + Direction.random(dim, count, self.seed)

    def _check_pettis_identity(self, params):
        dirs = self._identity_directions(params)
        reports = [
            ("limit", pettis_identity_report(self.mf_limit, self.limit,
                                             directions=dirs,
                                             config=self.config)),
            (f"n={self.n_max}",
             pettis_identity_report(self.mfseq.at(self.n_max),
                                    self.seq.at(self.n_max), directions=dirs,
                                    config=self.config)),
        ]
        worst = 0.0
        for tag, rep in reports:
            worst = max(worst, rep.max_gap)
            for e in rep.entries:
                if not e.ok:
                    return Verdict(Status.REFUTED, witness=f"{tag}:{e.direction}",
                                   final_error=e.gap)
        return Verdict(Status.SUPPORTED, final_error=worst,
                       details={"directions": len(dirs)})

    def _check_pettis_convergence(self, params):
        return pettis_convergence_check(self.mfseq, self.mf_limit, self.seq,
                                        self.limit, self.ring, self.tol,
                                        self.levels, self.eps_list, self.config)

    def _check_pettis_plain(self, params):
        return pettis_plain_check(self.mfseq, self.mf_limit, self.seq,
                                  self.limit, self.ring, self.tol, self.config)

    def _check_pointwise_hausdorff(self, params):
        return pointwise_hausdorff_check(self.mfseq, self.mf_limit, self.limit,
                                         self.tol, params.get("level", 4),
                                         self.config)


def run_scenario(scenario: Scenario,
                 overrides: Overrides = Overrides()) -> list:
    """Run every check of one scenario; rows come back sorted by check
    name so output order never depends on evaluation order."""
    ctx = RunContext(scenario, overrides)
    rows = []
    for check in scenario.checks:
        verdict = ctx.run_check(check)
        rows.append(CheckRow(scenario=scenario.name, check=check.name,
                             status=verdict.status.value,
                             witness=verdict.witness,
                             final_error=verdict.final_error,
                             n_max=ctx.n_max, expect=check.expect))
    rows.sort(key=lambda r: r.check)
    return rows


def run_many(scenarios, overrides: Overrides = Overrides()) -> list:
    rows = []
    for scenario in scenarios:
        rows.extend(run_scenario(scenario, overrides))
    rows.sort(key=lambda r: (r.scenario, r.check))
    return rows
