"""End-to-end acceptance checks.

Each test covers one numbered criterion and prints a single PASS or
FAIL line; run with ``pytest tests/test_acceptance.py -v -s`` to see
them. Every tolerance below is part of the claim being verified, not a
loose allowance.
"""

import math
import random
from functools import lru_cache

from measurelab.convergence import (
    Status,
    assess_trend,
    uac_integrals_check,
    ui_equivalence_check,
    uniform_abs_continuity,
    uniform_integrability_check,
)
from measurelab.integration import (
    FunctionSequence,
    QuadratureConfig,
    ScalarFn,
    integrate,
)
from measurelab.measures import (
    BorelSet,
    FiniteMeasure,
    GridDensity,
    MeasureSequence,
    Space,
    dyadic_ring,
)
from measurelab.multivalued import (
    BoxBody,
    Direction,
    Multifunction,
    MultifunctionSequence,
    pettis_identity_report,
    pettis_integral,
    pettis_plain_check,
    support_fn,
)
from measurelab.recipes import build_function
from measurelab.runner import RunContext
from measurelab.scenarios import CheckSpec, find_scenario


class Criterion:
    def __init__(self, label):
        self.label = label
        self.failures = []

    def check(self, cond, msg):
        if not cond:
            self.failures.append(msg)

    def finish(self):
        if self.failures:
            line = f"FAIL {self.label}: {self.failures[0]}"
        else:
            line = f"PASS {self.label}"
        print(line, flush=True)
        assert not self.failures, line


@lru_cache(maxsize=None)
def context(name: str) -> RunContext:
    return RunContext(find_scenario(name))


@lru_cache(maxsize=None)
def verdicts(name: str) -> dict:
    ctx = context(name)
    return {c.name: (ctx.run_check(c), c.expect)
            for c in ctx.scenario.checks}


def test_criterion_1_escaping_mass_splits_vague_from_weak():
    crit = Criterion("criterion-1 escaping point masses: vague holds, "
                     "mass and bounded families fail")
    ctx = context("dirac-escape")
    crit.check(ctx.tol == 1e-6, f"tolerance is {ctx.tol}, stated 1e-6")
    crit.check(ctx.n_max == 64, f"range is {ctx.n_max}, stated 64")
    out = verdicts("dirac-escape")
    vague, _ = out["vague"]
    crit.check(vague.status is Status.SUPPORTED,
               f"vague came back {vague.status}")
    crit.check(vague.final_error == 0.0,
               f"vague residual {vague.final_error}, expected exact zeros")
    mass, _ = out["mass"]
    crit.check(mass.status is Status.REFUTED, f"mass came back {mass.status}")
    weak, _ = out["weak"]
    crit.check(weak.status is Status.REFUTED, f"weak came back {weak.status}")
    crit.check(weak.witness == "g=1",
               f"weak witness {weak.witness!r}, expected the constant")
    crit.finish()


def test_criterion_2_domination_gives_setwise_control():
    crit = Criterion("criterion-2 dominated densities: exact ring errors "
                     "and the setwise upgrade")
    ctx = context("dominated-density")
    n = ctx.n_max
    m_n = ctx.seq.at(n)
    for a in ctx.ring:
        target = ctx.limit.evaluate(a)
        err = abs(m_n.evaluate(a) - target)
        want = target / n
        crit.check(abs(err - want) <= 1e-12,
                   f"ring error on {a.label()} is {err}, not |A|/{n}")
    out = verdicts("dominated-density")
    for name in ("dominates", "dominated_limit", "setwise", "weak_from_uac"):
        v, expect = out[name]
        crit.check(v.status.value == expect,
                   f"{name} came back {v.status}, expected {expect}")
    x_fn = ScalarFn(fn=lambda p: p[0], name="x")
    half = BorelSet.from_box(ctx.space, (0.0,), (0.5,))
    for k in range(1, n + 1):
        res = integrate(x_fn, ctx.seq.at(k), region=half, config=ctx.config)
        want = 0.125 * (1.0 - 1.0 / k)
        crit.check(abs(res.value - want) <= 1e-9,
                   f"integral over [0,0.5) at n={k} is {res.value}, "
                   f"closed form {want}")
    crit.finish()


def test_criterion_3_linear_vitali_battery():
    crit = Criterion("criterion-3 linear integrands: full hypothesis "
                     "battery and the closed-form limit")
    ctx = context("vitali-linear")
    crit.check(ctx.resolution == 4, f"ring resolution {ctx.resolution}, stated 4")
    out = verdicts("vitali-linear")
    for name, (v, expect) in out.items():
        crit.check(v.status.value == expect,
                   f"{name} came back {v.status}, expected {expect}")
    for n in range(1, ctx.n_max + 1):
        res = integrate(ctx.fseq.at(n), ctx.seq.at(n), config=ctx.config)
        want = (1.0 - 1.0 / n) * (0.5 + 1.0 / n)
        crit.check(abs(res.value - want) <= res.bound + 1e-9,
                   f"whole-space integral at n={n} is {res.value}, "
                   f"closed form {want}, bound {res.bound}")
    crit.finish()


def test_criterion_4_spike_tails_and_bounded_contrast():
    crit = Criterion("criterion-4 unit-mass spikes: tails stay at one, "
                     "bounded variant passes everything")
    ctx = context("nonuniform-spike")
    ui, _ = verdicts("nonuniform-spike")["ui"]
    crit.check(ui.status is Status.REFUTED, f"tail check came back {ui.status}")
    for alpha, tail in zip(ui.details["alphas"], ui.details["tails"]):
        crit.check(tail >= 1.0 - 1e-12,
                   f"tail at alpha={alpha} is {tail}, expected unit height")
    uac, _ = verdicts("nonuniform-spike")["uac_integrals"]
    crit.check(uac.status is Status.REFUTED,
               f"set-integral uniformity came back {uac.status}")
    for entry in uac.details["entries"]:
        crit.check(entry["eps"] < 1.0, f"eps grid strayed to {entry['eps']}")
        crit.check(entry["status"] == "REFUTED",
                   f"eps={entry['eps']} came back {entry['status']}")
        crit.check(entry["witness"] == "[0,0.015625)",
                   f"eps={entry['eps']} witness {entry['witness']!r}, "
                   "expected the 1/64 prefix")
        crit.check(entry["n_at"] == 64,
                   f"eps={entry['eps']} collapse index {entry['n_at']}, not 64")
    eq, _ = verdicts("nonuniform-spike")["ui_equivalence"]
    crit.check(eq.status is Status.SUPPORTED,
               f"equivalence on the spike came back {eq.status}")

    # same shape with unit height: everything uniform again
    spec = {"kind": "box_indicator", "lower": [0.0],
            "upper": [{"scale": 1, "decay": 1}], "height": 1.0}
    bounded = FunctionSequence(
        generator=lambda n: build_function(spec, ctx.space, n),
        n_max=ctx.n_max, name="bounded")
    ui_b = uniform_integrability_check(bounded, ctx.seq, ctx.tol,
                                       config=ctx.config, limit=ctx.limit)
    crit.check(ui_b.status is Status.SUPPORTED,
               f"bounded tail check came back {ui_b.status}")
    uac_b = uac_integrals_check(bounded, ctx.seq, ctx.limit, ctx.ring,
                                ctx.tol, config=ctx.config)
    crit.check(uac_b.status is Status.SUPPORTED,
               f"bounded set-integral uniformity came back {uac_b.status}")
    eq_b = ui_equivalence_check(bounded, ctx.seq, ctx.limit, ctx.ring, ctx.tol,
                                config=ctx.config)
    crit.check(eq_b.status is Status.SUPPORTED,
               f"bounded equivalence came back {eq_b.status}")
    crit.finish()


def test_criterion_5_symmetric_interval_set_integral():
    crit = Criterion("criterion-5 symmetric intervals: exact set integral "
                     "and the support identity")
    unit = Space.box((0.0,), (1.0,))
    leb = FiniteMeasure.lebesgue(unit)
    gamma = Multifunction(fn=lambda p: BoxBody((-p[0],), (p[0],)), dim=1)
    pet = pettis_integral(gamma, leb, depth=10)
    crit.check(abs(pet.body.lower[0] + 0.5) <= 1e-12,
               f"lower endpoint {pet.body.lower[0]}, expected -1/2")
    crit.check(abs(pet.body.upper[0] - 0.5) <= 1e-12,
               f"upper endpoint {pet.body.upper[0]}, expected 1/2")
    crit.check(pet.bound <= 1e-6, f"bound {pet.bound} above 1e-6 at depth 10")
    dirs = Direction.signed(1) + Direction.random(1, 32, seed=0)
    rep = pettis_identity_report(gamma, leb, directions=dirs, depth=10)
    crit.check(len(rep.entries) == 34, f"direction count {len(rep.entries)}")
    crit.check(rep.ok, "support identity exceeded its quadrature allowance")
    crit.check(rep.max_gap <= 1e-9, f"worst identity gap {rep.max_gap}")
    crit.finish()


def test_criterion_6_interval_vitali_support_errors():
    crit = Criterion("criterion-6 shrinking intervals: battery passes and "
                     "support errors decay monotonically")
    ctx = context("interval-vitali")
    for name, (v, expect) in verdicts("interval-vitali").items():
        crit.check(v.status.value == expect,
                   f"{name} came back {v.status}, expected {expect}")
    n_max = ctx.n_max
    for d in Direction.signed(1):
        f_lim = support_fn(ctx.mf_limit, d)
        target = integrate(f_lim, ctx.limit, config=ctx.config)
        errs = []
        for n in range(1, n_max + 1):
            res = integrate(support_fn(ctx.mfseq.at(n), d), ctx.seq.at(n),
                            config=ctx.config)
            errs.append(abs(res.value - target.value))
        allowance = 2.0 / n_max + target.bound + 1e-9
        crit.check(errs[-1] <= allowance,
                   f"support error at n={n_max} along {d.name} is "
                   f"{errs[-1]}, allowed {allowance}")
        tail = errs[3 * n_max // 4:]
        for k in range(len(tail) - 1):
            crit.check(tail[k + 1] < tail[k],
                       f"support errors along {d.name} not strictly "
                       f"decreasing near the end: {tail[k]} -> {tail[k + 1]}")
    crit.finish()


def test_criterion_7_discrete_instances_match_finite_sums():
    crit = Criterion("criterion-7 discrete spaces: one hundred seeded "
                     "instances agree exactly with finite sums")
    points = tuple((float(t),) for t in range(1, 9))
    space = Space.discrete(points)
    whole = BorelSet.whole(space)
    singletons = [BorelSet.singleton(space, p) for p in points]
    ring = [whole] + singletons
    n_max = 16
    for case in range(100):
        rng = random.Random(1000 + case)
        base = {p: rng.uniform(0.05, 0.2) for p in points}
        damp = rng.uniform(0.3, 1.0)
        lo = {p: rng.uniform(-1.0, 1.0) for p in points}
        hi = {p: lo[p] + rng.uniform(0.0, 1.0) for p in points}

        def measure_at(n, base=base, damp=damp):
            return FiniteMeasure.from_atoms(
                space, [(p, base[p] * (1.0 - damp / (2.0 * n)))
                        for p in points])

        limit = FiniteMeasure.from_atoms(space, [(p, base[p]) for p in points])
        seq = MeasureSequence(space=space, generator=measure_at, n_max=n_max)
        gamma = Multifunction(
            fn=lambda p, lo=lo, hi=hi: BoxBody((lo[p],), (hi[p],)), dim=1)

        pet = pettis_integral(gamma, limit)
        oracle_lo = math.fsum(base[p] * lo[p] for p in points)
        oracle_hi = math.fsum(base[p] * hi[p] for p in points)
        crit.check(pet.body.lower[0] == oracle_lo,
                   f"case {case}: lower endpoint {pet.body.lower[0]} != "
                   f"finite sum {oracle_lo}")
        crit.check(pet.body.upper[0] == oracle_hi,
                   f"case {case}: upper endpoint {pet.body.upper[0]} != "
                   f"finite sum {oracle_hi}")
        for p, s in zip(points, singletons):
            pp = pettis_integral(gamma, limit, region=s)
            crit.check(pp.body.lower[0] == base[p] * lo[p]
                       and pp.body.upper[0] == base[p] * hi[p],
                       f"case {case}: singleton integral at {p} off the "
                       "finite sum")
        plus = integrate(support_fn(gamma, Direction.signed(1)[0]), limit)
        crit.check(plus.value == oracle_hi,
                   f"case {case}: support route {plus.value} != box route "
                   f"{oracle_hi}")

        mfseq = MultifunctionSequence.constant(gamma, n_max)
        out = pettis_plain_check(mfseq, gamma, seq, limit, ring, tol=0.05)
        crit.check(out.status is Status.SUPPORTED,
                   f"case {case}: plain-space check came back {out.status}")
        again = pettis_plain_check(mfseq, gamma, seq, limit, ring, tol=0.05)
        crit.check(out.status == again.status and out.witness == again.witness,
                   f"case {case}: verdict changed between identical runs")
    crit.finish()


def test_criterion_8_property_sweeps():
    crit = Criterion("criterion-8 seeded property sweeps, two hundred "
                     "cases per law")
    fast = QuadratureConfig(depth=2)
    space = Space.box((0.0,), (1.0,), grid=4)
    leb = FiniteMeasure.lebesgue(space)

    rng = random.Random(7001)
    for _ in range(200):
        vals = tuple(rng.uniform(0, 4) for _ in range(4))
        atoms = [((rng.uniform(0, 1),), rng.uniform(0, 1))
                 for _ in range(rng.randint(0, 3))]
        density = GridDensity(
            breakpoints=GridDensity.uniform(space, 1.0, 4).breakpoints,
            values=vals)
        m = FiniteMeasure.with_density(space, density, atoms=atoms)
        i, j = rng.sample(range(4), 2)
        a = BorelSet.from_box(space, (i / 4.0,), ((i + 1) / 4.0,))
        b = BorelSet.from_box(space, (j / 4.0,), ((j + 1) / 4.0,))
        total = m.evaluate(a) + m.evaluate(b)
        crit.check(abs(m.evaluate(a.union(b)) - total)
                   <= 1e-12 * (1.0 + abs(total)),
                   "additivity failed on disjoint cells")

    rng = random.Random(7002)
    for _ in range(200):
        a, b, c1, c2, o1, o2 = (rng.uniform(-3, 3) for _ in range(6))
        f = ScalarFn(fn=lambda p: o1 + c1 * p[0], name="f")
        g = ScalarFn(fn=lambda p: o2 + c2 * p[0], name="g")
        combo = ScalarFn(fn=lambda p: a * f(p) + b * g(p), name="combo")
        lhs = integrate(combo, leb, config=fast).value
        rhs = (a * integrate(f, leb, config=fast).value
               + b * integrate(g, leb, config=fast).value)
        crit.check(abs(lhs - rhs) <= 1e-9 * (1.0 + abs(a) + abs(b)),
                   "integral linearity failed")

    rng = random.Random(7003)
    for _ in range(200):
        lo = [rng.uniform(-3, 3) for _ in range(2)]
        hi = [x + rng.uniform(0, 2) for x in lo]
        body = BoxBody(tuple(lo), tuple(hi))
        v = [rng.uniform(-3, 3) for _ in range(2)]
        w = [rng.uniform(-3, 3) for _ in range(2)]
        vw = [x + y for x, y in zip(v, w)]
        crit.check(body.support(vw)
                   <= body.support(v) + body.support(w) + 1e-9,
                   "support sublinearity failed")
        lam = rng.uniform(0, 3)
        scale = max(1.0, abs(body.support(v))) * max(1.0, lam)
        crit.check(abs(body.support([lam * x for x in v])
                       - lam * body.support(v)) <= 1e-9 * scale,
                   "support homogeneity failed")

    rng = random.Random(7004)
    for _ in range(200):
        o1, o2 = rng.uniform(-3, 3), rng.uniform(-3, 3)
        w1, w2 = rng.uniform(0, 2), rng.uniform(0, 2)
        pad = rng.uniform(0, 1)
        g1 = Multifunction(
            fn=lambda p: BoxBody((o1 + p[0],), (o1 + p[0] + w1,)), dim=1)
        g2 = Multifunction(
            fn=lambda p: BoxBody((o2 - p[0],), (o2 - p[0] + w2,)), dim=1)
        total = Multifunction(fn=lambda p: g1(p).add(g2(p)), dim=1)
        p1 = pettis_integral(g1, leb, config=fast).body
        p2 = pettis_integral(g2, leb, config=fast).body
        pt = pettis_integral(total, leb, config=fast).body
        expect = p1.add(p2)
        tol = 1e-9 * (1 + abs(o1) + abs(o2))
        crit.check(abs(pt.lower[0] - expect.lower[0]) <= tol
                   and abs(pt.upper[0] - expect.upper[0]) <= tol,
                   "set-integral additivity failed")
        outer = Multifunction(
            fn=lambda p: BoxBody((o1 + p[0] - pad,), (o1 + p[0] + w1 + pad,)),
            dim=1)
        po = pettis_integral(outer, leb, config=fast).body
        crit.check(po.lower[0] <= p1.lower[0] + tol
                   and p1.upper[0] <= po.upper[0] + tol,
                   "set-integral monotonicity failed")

    rng = random.Random(7005)
    ring = dyadic_ring(space, 2)
    for _ in range(200):
        count = rng.randint(6, 10)
        factors = [rng.uniform(0.2, 1.0) for _ in range(count)]
        seq = MeasureSequence(
            space=space,
            generator=lambda n, f=factors: leb.scale(f[n - 1]),
            n_max=count)
        rep = uniform_abs_continuity(seq, leb, ring, tol=0.05)
        deltas = [e.delta for e in rep.entries]
        crit.check(all(x >= y for x, y in zip(deltas, deltas[1:])),
                   "delta profile increased as eps shrank")

    rng = random.Random(7006)
    for _ in range(200):
        errors = [rng.uniform(0, 2) for _ in range(rng.randint(1, 40))]
        tol = rng.uniform(1e-6, 0.5)
        crit.check(assess_trend(errors, tol) == assess_trend(errors, tol),
                   "trend assessment not deterministic")
    crit.finish()
