"""Scenario documents: a space, a measure sequence, optional integrands
and bodies, and a list of checks with expected outcomes.

A scenario is plain JSON. ``validate`` turns a dict into a Scenario and
reports the JSON path of the first offending field. The built-in
catalog collects the standard demonstration scenarios; each doubles as
documentation of which convergence notions its data does and does not
satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .convergence import Status
from .errors import MeasureLabError, ScenarioError
from .measures import BorelSet, Space
from .recipes import build_function, build_measure, build_multifunction

SCHEMA_VERSION = 1

# checks needing scalar integrands / box bodies beyond the measures
FUNCTION_CHECKS = {
    "uac_integrals", "ui", "ui_equivalence", "pointwise", "conv_in_measure",
    "vitali", "vitali_parts", "vitali_bounded",
}
BODY_CHECKS = {
    "scalar_integrability", "pettis_identity", "pettis_convergence",
    "pettis_plain", "pointwise_hausdorff",
}
MEASURE_CHECKS = {
    "mass", "vague", "weak", "setwise", "dominates", "uac_measures",
    "weak_from_uac", "dominated_limit", "portmanteau",
}
KNOWN_CHECKS = MEASURE_CHECKS | FUNCTION_CHECKS | BODY_CHECKS

STATUS_NAMES = {s.value for s in Status}


@dataclass(frozen=True)
class CheckSpec:
    name: str
    expect: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.name, "expect": self.expect}
        if self.params:
            out["params"] = self.params
        return out


@dataclass(frozen=True)
class Scenario:
    name: str
    title: str
    space: dict
    n_max: int
    tol: float
    measures: dict
    ring: dict = field(default_factory=dict)
    functions: dict | None = None
    bodies: dict | None = None
    eps: tuple | None = None
    alphas: tuple | None = None
    levels: int = 3
    seed: int = 0
    checks: tuple = ()

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "title": self.title,
            "space": self.space,
            "n_max": self.n_max,
            "tol": self.tol,
            "measures": self.measures,
            "ring": self.ring,
            "levels": self.levels,
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.functions is not None:
            out["functions"] = self.functions
        if self.bodies is not None:
            out["bodies"] = self.bodies
        if self.eps is not None:
            out["eps"] = list(self.eps)
        if self.alphas is not None:
            out["alphas"] = list(self.alphas)
        return out

    def build_space(self) -> Space:
        return Space.from_json(self.space)


def _fail(path, message):
    raise ScenarioError(message, path=path)


def _require(data, key, kind, path):
    if key not in data:
        _fail(path, f"missing required field {key!r}")
    value = data[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            _fail(f"{path}.{key}" if path else key, "expected a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            _fail(f"{path}.{key}" if path else key, "expected an integer")
        return value
    if not isinstance(value, kind):
        _fail(f"{path}.{key}" if path else key,
              f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _probe_build(builder, spec, space, n, path):
    try:
        builder(spec, space, n)
    except MeasureLabError as exc:
        if isinstance(exc, ScenarioError):
            raise
        _fail(path, str(exc))


def validate(data: dict) -> Scenario:
    """Check a raw scenario dict and return the typed Scenario.

    Recipes are probed by actually building them at n = 1 and at the
    limit, so a bad recipe fails here with its JSON path instead of
    halfway through a run.
    """
    if not isinstance(data, dict):
        _fail("", "scenario document must be a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        _fail("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
    name = _require(data, "name", str, "")
    if not name or any(ch.isspace() for ch in name):
        _fail("name", "must be a nonempty token without spaces")
    title = str(data.get("title", name))
    space_spec = _require(data, "space", dict, "")
    try:
        space = Space.from_json(space_spec)
    except MeasureLabError as exc:
        _fail("space", str(exc))
    n_max = _require(data, "n_max", int, "")
    if n_max < 3:
        _fail("n_max", "need at least three terms to judge a trend")
    tol = _require(data, "tol", float, "")
    if tol <= 0:
        _fail("tol", "must be positive")

    measures = _require(data, "measures", dict, "")
    for side in ("sequence", "limit"):
        spec = _require(measures, side, dict, "measures")
        _probe_build(build_measure, spec, space, 1, f"measures.{side}")
        if side == "limit":
            _probe_build(build_measure, spec, space, None, "measures.limit")

    functions = data.get("functions")
    if functions is not None:
        if not isinstance(functions, dict):
            _fail("functions", "expected an object")
        for side in ("sequence", "limit"):
            spec = _require(functions, side, dict, "functions")
            _probe_build(build_function, spec, space, 1, f"functions.{side}")
            if side == "limit":
                _probe_build(build_function, spec, space, None, "functions.limit")

    bodies = data.get("bodies")
    if bodies is not None:
        if not isinstance(bodies, dict):
            _fail("bodies", "expected an object")
        for side in ("sequence", "limit"):
            spec = _require(bodies, side, dict, "bodies")
            _probe_build(build_multifunction, spec, space, 1, f"bodies.{side}")
            if side == "limit":
                _probe_build(build_multifunction, spec, space, None, "bodies.limit")

    ring = data.get("ring", {})
    if not isinstance(ring, dict):
        _fail("ring", "expected an object")
    resolution = ring.get("resolution", 3)
    if isinstance(resolution, bool) or not isinstance(resolution, int) or resolution < 0:
        _fail("ring.resolution", "expected a nonnegative integer")
    for i, box in enumerate(ring.get("extra_boxes", [])):
        try:
            BorelSet.from_box(space, tuple(box[0]), tuple(box[1]))
        except (MeasureLabError, TypeError, IndexError) as exc:
            _fail(f"ring.extra_boxes[{i}]", str(exc))

    eps = data.get("eps")
    if eps is not None:
        if (not isinstance(eps, list) or not eps
                or any(isinstance(e, bool) or not isinstance(e, (int, float)) or e <= 0
                       for e in eps)):
            _fail("eps", "expected a list of positive numbers")
        eps = tuple(float(e) for e in eps)
    alphas = data.get("alphas")
    if alphas is not None:
        if (not isinstance(alphas, list) or not alphas
                or any(isinstance(a, bool) or not isinstance(a, (int, float)) or a <= 0
                       for a in alphas)):
            _fail("alphas", "expected a list of positive numbers")
        alphas = tuple(float(a) for a in alphas)

    levels = data.get("levels", 3)
    if isinstance(levels, bool) or not isinstance(levels, int) or levels < 0:
        _fail("levels", "expected a nonnegative integer")
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        _fail("seed", "expected an integer")

    raw_checks = _require(data, "checks", list, "")
    if not raw_checks:
        _fail("checks", "at least one check is required")
    checks = []
    for i, raw in enumerate(raw_checks):
        path = f"checks[{i}]"
        if not isinstance(raw, dict):
            _fail(path, "expected an object")
        cname = raw.get("check")
        if cname not in KNOWN_CHECKS:
            _fail(f"{path}.check", f"unknown check {cname!r}")
        expect = raw.get("expect", "SUPPORTED")
        if expect not in STATUS_NAMES:
            _fail(f"{path}.expect", f"not a status: {expect!r}")
        params = raw.get("params", {})
        if not isinstance(params, dict):
            _fail(f"{path}.params", "expected an object")
        if cname in FUNCTION_CHECKS and functions is None:
            _fail(path, f"check {cname!r} needs the functions field")
        if cname in BODY_CHECKS and bodies is None:
            _fail(path, f"check {cname!r} needs the bodies field")
        if cname == "conv_in_measure":
            e = params.get("eps")
            if isinstance(e, bool) or not isinstance(e, (int, float)) or e <= 0:
                _fail(f"{path}.params.eps", "expected a positive number")
        if cname == "portmanteau":
            for kind in ("closed_sets", "open_sets"):
                sets = params.get(kind, [])
                if not isinstance(sets, list):
                    _fail(f"{path}.params.{kind}", "expected a list")
                for j, s in enumerate(sets):
                    try:
                        BorelSet.from_json(space, s)
                    except (MeasureLabError, TypeError, AttributeError) as exc:
                        _fail(f"{path}.params.{kind}[{j}]", str(exc))
        checks.append(CheckSpec(name=cname, expect=expect, params=params))

    return Scenario(name=name, title=title, space=space_spec, n_max=n_max,
                    tol=tol, measures=measures,
                    ring={"resolution": resolution,
                          "extra_boxes": ring.get("extra_boxes", [])},
                    functions=functions, bodies=bodies, eps=eps, alphas=alphas,
                    levels=levels, seed=seed, checks=tuple(checks))


# ---------------------------------------------------------------------------
# built-in catalog


def _damped_lebesgue():
    return {"kind": "lebesgue", "height": {"base": 1, "scale": -1, "decay": 1}}


def _catalog_specs() -> list:
    unit = Space.box((0.0,), (1.0,)).to_json()

    dirac_escape = {
        "schema_version": 1,
        "name": "dirac-escape",
        "title": "unit point masses drifting past every bounded window",
        "space": Space.box((0.0,), (72.0,), core=((0.0,), (8.0,))).to_json(),
        "n_max": 64,
        "tol": 1e-6,
        "measures": {
            "sequence": {"kind": "dirac", "point": [{"scale": 1, "decay": -1}]},
            "limit": {"kind": "zero"},
        },
        "ring": {"resolution": 3},
        "checks": [
            {"check": "vague", "expect": "SUPPORTED"},
            {"check": "mass", "expect": "REFUTED"},
            {"check": "weak", "expect": "REFUTED"},
            {"check": "setwise", "expect": "REFUTED"},
            {"check": "uac_measures", "expect": "REFUTED"},
            {"check": "weak_from_uac", "expect": "NOT_APPLICABLE"},
        ],
    }

    dirac_collapse = {
        "schema_version": 1,
        "name": "dirac-collapse",
        "title": "point masses sliding onto a boundary atom",
        "space": unit,
        "n_max": 8192,
        "tol": 0.02,
        "measures": {
            "sequence": {"kind": "dirac", "point": [{"scale": 1, "decay": 1}]},
            "limit": {"kind": "dirac", "point": [0.0]},
        },
        "ring": {"resolution": 3},
        "checks": [
            {"check": "mass", "expect": "SUPPORTED"},
            {"check": "vague", "expect": "SUPPORTED"},
            {"check": "weak", "expect": "SUPPORTED"},
            {"check": "setwise", "expect": "REFUTED"},
            {"check": "portmanteau", "expect": "SUPPORTED", "params": {
                "closed_sets": [
                    {"boxes": [], "include": [[0.0]], "name": "{0}"},
                    {"boxes": [[[0.0], [0.5]]], "include": [[0.5]],
                     "name": "[0,0.5]"},
                ],
                "open_sets": [
                    {"boxes": [[[0.0], [1.0]]], "exclude": [[0.0]],
                     "name": "Omega-{0}"},
                ],
            }},
        ],
    }

    dominated_density = {
        "schema_version": 1,
        "name": "dominated-density",
        "title": "uniform densities rising to their envelope",
        "space": unit,
        "n_max": 64,
        "tol": 0.05,
        "measures": {
            "sequence": _damped_lebesgue(),
            "limit": {"kind": "lebesgue"},
        },
        "functions": {
            "sequence": {"kind": "affine", "coeffs": [1.0], "offset": 0.0},
            "limit": {"kind": "affine", "coeffs": [1.0], "offset": 0.0},
        },
        "ring": {"resolution": 3},
        "checks": [
            {"check": "mass", "expect": "SUPPORTED"},
            {"check": "vague", "expect": "SUPPORTED"},
            {"check": "weak", "expect": "SUPPORTED"},
            {"check": "setwise", "expect": "SUPPORTED"},
            {"check": "uac_measures", "expect": "SUPPORTED"},
            {"check": "uac_integrals", "expect": "SUPPORTED"},
            {"check": "dominates", "expect": "SUPPORTED"},
            {"check": "weak_from_uac", "expect": "SUPPORTED"},
            {"check": "dominated_limit", "expect": "SUPPORTED"},
        ],
    }

    vitali_linear = {
        "schema_version": 1,
        "name": "vitali-linear",
        "title": "linear integrands with vanishing offsets on damped densities",
        "space": unit,
        "n_max": 64,
        "tol": 0.05,
        "measures": {
            "sequence": _damped_lebesgue(),
            "limit": {"kind": "lebesgue"},
        },
        "functions": {
            "sequence": {"kind": "affine", "coeffs": [1.0],
                         "offset": {"scale": 1, "decay": 1}},
            "limit": {"kind": "affine", "coeffs": [1.0], "offset": 0.0},
        },
        "ring": {"resolution": 4},
        "checks": [
            {"check": "mass", "expect": "SUPPORTED"},
            {"check": "pointwise", "expect": "SUPPORTED"},
            {"check": "conv_in_measure", "expect": "SUPPORTED",
             "params": {"eps": 0.1}},
            {"check": "vitali", "expect": "SUPPORTED"},
            {"check": "vitali_parts", "expect": "SUPPORTED"},
            {"check": "vitali_bounded", "expect": "SUPPORTED"},
        ],
    }

    nonuniform_spike = {
        "schema_version": 1,
        "name": "nonuniform-spike",
        "title": "tall thin spikes that keep unit integral while vanishing a.e.",
        "space": unit,
        "n_max": 64,
        "tol": 0.02,
        "measures": {
            "sequence": {"kind": "lebesgue"},
            "limit": {"kind": "lebesgue"},
        },
        "functions": {
            "sequence": {"kind": "box_indicator", "lower": [0.0],
                         "upper": [{"scale": 1, "decay": 1}],
                         "height": {"scale": 1, "decay": -1}},
            "limit": {"kind": "constant", "value": 0.0},
        },
        "ring": {
            "resolution": 4,
            "extra_boxes": [[[0.0], [1.0 / n]] for n in range(2, 65)],
        },
        "checks": [
            {"check": "pointwise", "expect": "SUPPORTED"},
            {"check": "conv_in_measure", "expect": "SUPPORTED",
             "params": {"eps": 0.5}},
            {"check": "ui", "expect": "REFUTED"},
            {"check": "uac_integrals", "expect": "REFUTED"},
            {"check": "ui_equivalence", "expect": "SUPPORTED"},
        ],
    }

    interval_vitali = {
        "schema_version": 1,
        "name": "interval-vitali",
        "title": "symmetric intervals shrinking onto their limit profile",
        "space": unit,
        "n_max": 64,
        "tol": 0.05,
        "measures": {
            "sequence": _damped_lebesgue(),
            "limit": {"kind": "lebesgue"},
        },
        "bodies": {
            "sequence": {"kind": "box_of",
                         "lower": [{"kind": "affine", "coeffs": [-1.0],
                                    "offset": {"scale": -1, "decay": 1}}],
                         "upper": [{"kind": "affine", "coeffs": [1.0],
                                    "offset": {"scale": 1, "decay": 1}}]},
            "limit": {"kind": "box_of",
                      "lower": [{"kind": "affine", "coeffs": [-1.0],
                                 "offset": 0.0}],
                      "upper": [{"kind": "affine", "coeffs": [1.0],
                                 "offset": 0.0}]},
        },
        "ring": {"resolution": 2},
        "checks": [
            {"check": "scalar_integrability", "expect": "SUPPORTED"},
            {"check": "pointwise_hausdorff", "expect": "SUPPORTED"},
            {"check": "pettis_identity", "expect": "SUPPORTED"},
            {"check": "pettis_convergence", "expect": "SUPPORTED"},
        ],
    }

    atoms = []
    for t in range(1, 9):
        atoms.append([[float(t)],
                      {"base": t / 36.0, "scale": -t / 72.0, "decay": 1}])
    discrete_pettis = {
        "schema_version": 1,
        "name": "discrete-pettis",
        "title": "weighted atoms with index-dependent masses and fixed bodies",
        "space": Space.discrete(tuple((float(t),) for t in range(1, 9))).to_json(),
        "n_max": 64,
        "tol": 0.05,
        "measures": {
            "sequence": {"kind": "atoms", "atoms": atoms},
            "limit": {"kind": "atoms",
                      "atoms": [[[float(t)], t / 36.0] for t in range(1, 9)]},
        },
        "bodies": {
            "sequence": {"kind": "box_of",
                         "lower": [{"kind": "constant", "value": 0.0}],
                         "upper": [{"kind": "affine", "coeffs": [0.125],
                                    "offset": 0.0}]},
            "limit": {"kind": "box_of",
                      "lower": [{"kind": "constant", "value": 0.0}],
                      "upper": [{"kind": "affine", "coeffs": [0.125],
                                 "offset": 0.0}]},
        },
        "ring": {"resolution": 0},
        "checks": [
            {"check": "mass", "expect": "SUPPORTED"},
            {"check": "setwise", "expect": "SUPPORTED"},
            {"check": "pettis_identity", "expect": "SUPPORTED"},
            {"check": "pettis_plain", "expect": "SUPPORTED"},
        ],
    }

    return [dirac_escape, dirac_collapse, dominated_density, vitali_linear,
            nonuniform_spike, interval_vitali, discrete_pettis]


_CATALOG_CACHE = None


def catalog() -> list:
    """The built-in scenarios, validated, in a fixed order."""
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = [validate(spec) for spec in _catalog_specs()]
    return _CATALOG_CACHE


def catalog_names() -> list:
    return [s.name for s in catalog()]


def find_scenario(name: str) -> Scenario:
    for s in catalog():
        if s.name == name:
            return s
    raise ScenarioError(f"no scenario named {name!r}; "
                        f"known: {', '.join(catalog_names())}")
