"""Tests for the entropy formulas, numerical oracles, solver and sweeps."""
import logging
import math

import numpy as np
import pytest

from config import config
from engine import boundary_map as bmap
from engine import entropy_lab as lab
from engine import flexibility
from engine import maskit
from engine import markov
from engine import polygon_builder as pb
from engine.exceptions import InvalidInput, MarkovViolation, TargetOutOfRange

cfg = config['testing']

REGULAR_SIDE = math.acosh(1 + math.sqrt(3))
H2 = math.pi ** 2 / (3 * REGULAR_SIDE)


@pytest.fixture(scope='module')
def regular2():
    return pb.regular_polygon(2)


@pytest.fixture(scope='module')
def stretched():
    regular = maskit.regular_parameters()
    return maskit.polygon_for(regular.with_value('beta', 1.5 * regular.beta))


# formulas

def test_regular_genus2_entropy(regular2):
    assert lab.entropy_formula(regular2) == pytest.approx(H2, abs=1e-9)
    assert lab.entropy_formula(regular2) == pytest.approx(1.9784, abs=1e-4)


@pytest.mark.parametrize('g', [2, 3, 4, 5])
def test_regular_polygon_attains_maximum(g):
    assert lab.entropy_formula(pb.regular_polygon(g)) == pytest.approx(lab.H_max(g), abs=1e-9)


def test_H_table():
    assert lab.H_max(2) == pytest.approx(1.9784, abs=1e-4)
    assert lab.H_max(3) == pytest.approx(2.2853, abs=1e-4)
    values = [h for _, h in lab.H_max_table(50)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] < lab.H_LIMIT < 2.8
    assert lab.H_max(100_000) == pytest.approx(lab.H_LIMIT, abs=1e-4)


@pytest.mark.parametrize('poly_name', ['regular2', 'stretched'])
def test_two_forms_agree(poly_name, request):
    poly = request.getfixturevalue(poly_name)
    assert lab.entropy_from_area(poly) == pytest.approx(lab.entropy_formula(poly), abs=1e-9)


def test_stretched_polygon_is_below_maximum(stretched):
    assert lab.entropy_formula(stretched) < lab.H_max(2)


def test_entropy_below_topological_entropy_on_samples():
    for _, poly in maskit.sample_parameters(20, seed=0x5EED):
        h = lab.entropy_formula(poly)
        h_top = markov.topological_entropy(markov.build_markov(bmap.BoundaryMap(poly)))
        assert h < h_top
        assert h <= lab.H_max(2) + 1e-9
        assert h_top - h > 0.25


# Monte Carlo mass of the geometric domain

def test_nu_mass_matches_perimeter(regular2):
    mass, stderr = lab.nu_mass_quadrature(regular2, 200_000, 0x5EED, cfg=cfg)
    perimeter = pb.metrics(regular2).perimeter
    assert abs(mass - perimeter) < 3 * stderr
    assert stderr / perimeter < 0.02


def test_nu_mass_is_reproducible_across_threads(regular2):
    single = lab.nu_mass_quadrature(regular2, 50_000, 7, threads=1, cfg=cfg)
    threaded = lab.nu_mass_quadrature(regular2, 50_000, 7, threads=4, cfg=cfg)
    assert single == threaded


def test_nu_mass_stderr_scaling(regular2):
    _, small = lab.nu_mass_quadrature(regular2, 200_000, 0x5EED, cfg=cfg)
    _, large = lab.nu_mass_quadrature(regular2, 400_000, 0x5EED, cfg=cfg)
    assert large / small == pytest.approx(1 / math.sqrt(2), rel=0.2)


@pytest.mark.slow
def test_nu_mass_acceptance(regular2):
    mass, stderr = lab.nu_mass_quadrature(regular2, 10_000_000, 0x5EED, cfg=cfg)
    perimeter = 12 * REGULAR_SIDE
    assert abs(mass - perimeter) < 3 * stderr
    assert abs(mass - perimeter) / perimeter < 0.01


# strips

def test_strip_mass_is_side_length(regular2):
    for i in range(1, 13):
        assert lab.strip_mass(regular2, i, 100) == pytest.approx(REGULAR_SIDE, abs=1e-9)


@pytest.mark.parametrize('poly_name', ['regular2', 'stretched'])
def test_direct_strip_mass(poly_name, request):
    poly = request.getfixturevalue(poly_name)
    checks = lab.strip_check(poly, cfg.STRIP_GRID)
    assert len(checks) == 12
    for check in checks:
        assert abs(check.direct_mass - check.length) < 1e-3
        assert abs(check.current_mass - check.length) < 1e-9
    total = math.fsum(c.direct_mass for c in checks)
    assert total == pytest.approx(pb.metrics(poly).perimeter, abs=1e-2)


# Birkhoff averages

def test_birkhoff_regular(regular2):
    estimate, spread = lab.birkhoff_entropy(bmap.BoundaryMap(regular2), 200_000, 3, 0x5EED)
    assert estimate == pytest.approx(H2, rel=cfg.BIRKHOFF_REL_TOL)
    assert spread >= 0


def test_birkhoff_stretched(stretched):
    estimate, _ = lab.birkhoff_entropy(bmap.BoundaryMap(stretched), 200_000, 3, 0x5EED, threads=3)
    assert estimate == pytest.approx(lab.entropy_formula(stretched), rel=cfg.BIRKHOFF_REL_TOL)


@pytest.mark.slow
@pytest.mark.parametrize('poly_name', ['regular2', 'stretched'])
def test_birkhoff_acceptance(poly_name, request):
    poly = request.getfixturevalue(poly_name)
    estimate, _ = lab.birkhoff_entropy(bmap.BoundaryMap(poly), 10_000_000, 5, 0x5EED)
    assert estimate == pytest.approx(lab.entropy_formula(poly), rel=0.02)


def test_report_without_oracles(regular2):
    report = lab.build_report(regular2, cfg, oracles=False)
    assert report.formula_value == pytest.approx(H2, abs=1e-9)
    assert report.h_top >= report.h_top_lower_bound - 1e-12
    assert report.nu_mass_exact == pytest.approx(report.perimeter, abs=1e-7)
    assert report.quadrature_value is None
    assert report.to_dict()['H_of_g'] == pytest.approx(H2)


# solver

@pytest.mark.parametrize('target', [1.0, 1.5, 1.9])
def test_solver_reaches_target(target):
    params = flexibility.solve_target_entropy(target, 1e-8, cfg=cfg)
    assert params.beta > maskit.regular_parameters().beta
    assert flexibility.entropy_at(params, cfg) == pytest.approx(target, abs=1e-8)
    assert lab.entropy_formula(maskit.polygon_for(params, cfg)) == pytest.approx(target, abs=1e-8)


@pytest.mark.slow
def test_solver_reaches_low_target():
    params = flexibility.solve_target_entropy(0.5, 1e-8, cfg=cfg)
    assert flexibility.entropy_at(params, cfg) == pytest.approx(0.5, abs=1e-8)


def test_entropy_at_keeps_decreasing_for_long_beta():
    regular = maskit.regular_parameters()
    values = [flexibility.entropy_at(regular.with_value('beta', b), cfg) for b in (5.0, 10.0, 20.0, 40.0)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_solver_returns_regular_parameters_at_maximum():
    params = flexibility.solve_target_entropy(lab.H_max(2), 1e-8, cfg=cfg)
    assert params == maskit.regular_parameters()


@pytest.mark.parametrize('target', [3.0, 0.0, -1.0])
def test_solver_rejects_unreachable_targets(target):
    with pytest.raises(TargetOutOfRange):
        flexibility.solve_target_entropy(target, 1e-8, cfg=cfg)


def test_solver_is_genus_two_only():
    with pytest.raises(InvalidInput):
        flexibility.solve_target_entropy(1.0, 1e-8, g=3, cfg=cfg)


# sweeps

def test_beta_sweep_peaks_at_regular_value():
    beta_reg = maskit.regular_parameters().beta
    values = np.linspace(0.8, 3.0, 23)
    rows = flexibility.sweep('beta', values, cfg=cfg)
    assert len(rows) > 10
    peak = max(rows, key=lambda r: r.entropy)
    assert abs(peak.value - beta_reg) <= values[1] - values[0]
    assert peak.entropy == pytest.approx(H2, abs=1e-2)
    for row in rows:
        assert row.entropy * row.perimeter == pytest.approx(4 * math.pi ** 2, abs=1e-9)
        assert row.h_top == pytest.approx(rows[0].h_top, abs=1e-12)


def test_sweep_skips_rows_outside_chart(caplog):
    beta_reg = maskit.regular_parameters().beta
    with caplog.at_level(logging.WARNING, logger='engine.flexibility'):
        rows = flexibility.sweep('beta', [-1.0, beta_reg], cfg=cfg)
    assert [r.value for r in rows] == [beta_reg]
    assert 'skipping beta' in caplog.text


def test_sweep_frame_columns():
    rows = flexibility.sweep('sigma', [0.0, 0.2], cfg=cfg)
    frame = flexibility.sweep_frame(rows)
    assert list(frame.columns) == ['param', 'value', 'perimeter', 'entropy', 'h_top']
    assert len(frame) == 2


def test_sweep_lets_verification_errors_through(monkeypatch):
    def broken(bm, cfg=None):
        raise MarkovViolation('arc image is not a union of arcs')

    monkeypatch.setattr(flexibility, 'build_markov', broken)
    with pytest.raises(MarkovViolation):
        flexibility.sweep('beta', [maskit.regular_parameters().beta], cfg=cfg)
