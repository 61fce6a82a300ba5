"""Quadrature, superlevel, and probe behavior against independent oracles."""

from __future__ import annotations

import math

import pytest

from measurelab.errors import IntegrabilityError, InvalidSpecError
from measurelab.integration import (
    FunctionSequence,
    L1Probe,
    QuadratureConfig,
    ScalarFn,
    integrate,
    integrate_abs,
    l1_probe,
    neg_part,
    pos_part,
    superlevel_integral,
    superlevel_measure,
)
from measurelab.measures import BorelSet, FiniteMeasure, Space

UNIT = Space.box([0.0], [1.0])
LEB = FiniteMeasure.lebesgue(UNIT)


def riemann_1d(g, a: float, b: float, n: int = 4096) -> float:
    """Independent midpoint oracle on [a, b] with a fixed fine mesh."""
    h = (b - a) / n
    return math.fsum(g(a + (k + 0.5) * h) * h for k in range(n))


# -- plain integrals ---------------------------------------------------------


def test_affine_is_exact():
    f = ScalarFn(fn=lambda p: p[0], name="x")
    res = integrate(f, LEB)
    assert res.value == pytest.approx(0.5, abs=1e-14)
    assert res.bound < 1e-12
    assert res.agrees_with(0.5)


def test_affine_2d():
    sq = Space.box([0.0, 0.0], [1.0, 1.0])
    m = FiniteMeasure.lebesgue(sq)
    f = ScalarFn(fn=lambda p: 2.0 * p[0] + 3.0 * p[1] + 1.0)
    res = integrate(f, m)
    assert res.value == pytest.approx(3.5, abs=1e-13)


def test_piecewise_affine_kink_on_grid():
    f = ScalarFn(fn=lambda p: abs(p[0] - 0.5), name="|x-1/2|")
    res = integrate(f, LEB)
    assert res.value == pytest.approx(0.25, abs=1e-14)


def test_atoms_are_exact():
    m = FiniteMeasure.from_atoms(UNIT, [((0.25,), 2.0), ((0.75,), 1.0)])
    f = ScalarFn(fn=lambda p: p[0] * 10.0)
    res = integrate(f, m)
    assert res.value == pytest.approx(2.0 * 2.5 + 1.0 * 7.5, abs=1e-14)
    assert res.evals == 2


def test_region_integral_closed_form():
    half = BorelSet.from_box(UNIT, (0.0,), (0.5,))
    f = ScalarFn(fn=lambda p: p[0], name="x")
    res = integrate(f, LEB, region=half)
    assert res.value == pytest.approx(0.125, abs=1e-14)


def test_region_filters_atoms():
    m = FiniteMeasure.from_atoms(UNIT, [((0.25,), 1.0), ((0.75,), 1.0)])
    half = BorelSet.from_box(UNIT, (0.0,), (0.5,))
    f = ScalarFn(fn=lambda p: 1.0)
    assert integrate(f, m, region=half).value == 1.0


def test_support_clipping():
    f = ScalarFn(fn=lambda p: 1.0, support=((0.0,), (0.25,)))
    res = integrate(f, LEB)
    assert res.value == pytest.approx(0.25, abs=1e-14)


def test_lipschitz_bound_covers_error():
    f = ScalarFn(fn=lambda p: math.sin(3.0 * p[0]), lipschitz=3.0)
    res = integrate(f, LEB)
    exact = (1.0 - math.cos(3.0)) / 3.0
    assert abs(res.value - exact) <= res.bound
    assert res.bound <= 3.0 * (1.0 / 16 / 8 / 2) * 1.0 + 1e-12


def test_richardson_bound_nonzero_for_curved():
    f = ScalarFn(fn=lambda p: p[0] ** 2)
    res = integrate(f, LEB)
    assert res.bound > 0
    assert abs(res.value - 1.0 / 3.0) <= 10 * res.bound


def test_depth_override_tightens():
    f = ScalarFn(fn=lambda p: math.exp(p[0]))
    coarse = integrate(f, LEB, depth=1)
    fine = integrate(f, LEB, depth=6)
    exact = math.e - 1.0
    assert abs(fine.value - exact) < abs(coarse.value - exact)


def test_scaled_density():
    m = FiniteMeasure.lebesgue(UNIT, height=0.75)
    f = ScalarFn(fn=lambda p: p[0])
    assert integrate(f, m).value == pytest.approx(0.375, abs=1e-14)


def test_integrate_abs_matches_oracle():
    f = ScalarFn(fn=lambda p: p[0] - 0.3)
    res = integrate_abs(f, LEB)
    oracle = riemann_1d(lambda x: abs(x - 0.3), 0.0, 1.0)
    assert res.value == pytest.approx(oracle, abs=2e-3)
    assert res.value == pytest.approx(0.29, abs=2e-3)


def test_nan_raises_with_location():
    f = ScalarFn(fn=lambda p: float("nan"), name="bad")
    with pytest.raises(IntegrabilityError) as err:
        integrate(f, LEB)
    assert err.value.location is not None


def test_division_failure_wrapped():
    d = Space.discrete([(0.0,)])
    m = FiniteMeasure.from_atoms(d, [((0.0,), 1.0)])
    f = ScalarFn(fn=lambda p: 1.0 / p[0], name="1/t")
    with pytest.raises(IntegrabilityError):
        integrate(f, m)


# -- positive and negative parts ---------------------------------------------


def test_pos_neg_parts_against_oracle():
    f = ScalarFn(fn=lambda p: p[0] - 0.3, name="g")
    plus = integrate(pos_part(f), LEB)
    minus = integrate(neg_part(f), LEB)
    assert plus.value == pytest.approx(0.245, abs=2e-3)
    assert minus.value == pytest.approx(0.045, abs=2e-3)
    assert plus.value - minus.value == pytest.approx(0.2, abs=1e-10)
    diff = integrate(f, LEB)
    assert diff.value == pytest.approx(plus.value - minus.value, abs=4e-3)
    assert pos_part(f).name == "g+"
    assert neg_part(f).name == "g-"


# -- superlevel quantities ----------------------------------------------------


def test_superlevel_atom_strict():
    m = FiniteMeasure.from_atoms(UNIT, [((0.5,), 0.3)])
    f = ScalarFn(fn=lambda p: 10.0)
    assert superlevel_integral(f, m, 5.0) == pytest.approx(3.0, abs=1e-14)
    assert superlevel_measure(f, m, 5.0) == pytest.approx(0.3, abs=1e-14)
    # strict inequality: level alpha itself is excluded
    assert superlevel_integral(f, m, 10.0) == 0.0


def test_superlevel_dyadic_indicator_exact():
    # n * indicator of [0, 1/n) for dyadic n: tail integral is exactly 1
    for n in (2, 8, 64):
        f = ScalarFn(fn=lambda p, n=n: float(n) if p[0] < 1.0 / n else 0.0)
        got = superlevel_integral(f, LEB, n / 2.0)
        assert got == pytest.approx(1.0, abs=1e-12), n


def test_superlevel_inverse_sqrt():
    f = ScalarFn(fn=lambda p: 1.0 / math.sqrt(p[0]) if p[0] > 0 else 0.0)
    cfg = QuadratureConfig(superlevel_rel_mass=1e-4)
    # {1/sqrt(x) > 2} = [0, 1/4); integral there is 1, mass is 1/4
    assert superlevel_integral(f, LEB, 2.0, cfg) == pytest.approx(1.0, abs=0.02)
    assert superlevel_measure(f, LEB, 2.0, cfg) == pytest.approx(0.25, abs=1e-3)


def test_superlevel_alpha_zero_is_abs_integral():
    f = ScalarFn(fn=lambda p: p[0])
    got = superlevel_integral(f, LEB, 0.0)
    assert got == pytest.approx(0.5, abs=5e-3)


def test_superlevel_negative_alpha_rejected():
    f = ScalarFn(fn=lambda p: p[0])
    with pytest.raises(InvalidSpecError):
        superlevel_integral(f, LEB, -1.0)


def test_superlevel_cell_budget_terminates():
    cfg = QuadratureConfig(superlevel_rel_mass=1e-12, superlevel_max_cells=500)
    f = ScalarFn(fn=lambda p: 2.0)
    got = superlevel_integral(f, LEB, 1.0, cfg)
    assert got == pytest.approx(2.0, abs=1e-9)


# -- integrability probe -------------------------------------------------------


def test_probe_accepts_integrable_singularity():
    f = ScalarFn(fn=lambda p: 1.0 / math.sqrt(p[0]) if p[0] > 0 else 0.0,
                 name="1/sqrt")
    probe = l1_probe(f, LEB)
    assert probe.converging
    assert probe.values[-1] == pytest.approx(2.0, abs=0.1)


def test_probe_flags_nonintegrable_singularity():
    f = ScalarFn(fn=lambda p: 1.0 / p[0] if p[0] > 0 else 0.0, name="1/t")
    probe = l1_probe(f, LEB)
    assert not probe.converging
    # increments stay near log(2) instead of shrinking
    assert probe.deltas[1] == pytest.approx(math.log(2.0), abs=0.05)


def test_probe_trivial_for_smooth():
    f = ScalarFn(fn=lambda p: math.cos(p[0]))
    assert l1_probe(f, LEB).converging


# -- sequences -----------------------------------------------------------------


def test_function_sequence_memoizes():
    calls = []

    def gen(n):
        calls.append(n)
        return ScalarFn(fn=lambda p: p[0] + 1.0 / n)

    seq = FunctionSequence(generator=gen, n_max=8)
    seq.at(2); seq.at(2)
    assert calls == [2]
    assert integrate(seq.at(4), LEB).value == pytest.approx(0.75, abs=1e-13)
    with pytest.raises(InvalidSpecError):
        seq.at(0)
