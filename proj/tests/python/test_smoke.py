import math

import pytest

import fracvx


def test_expression_parse_and_jet():
    f = fracvx.parse("1 + t^2")
    assert f(0.5) == 1.25
    v, d1, d2 = fracvx.parse("sin(t)").jet(0.3)
    assert v == pytest.approx(math.sin(0.3), abs=1e-15)
    assert d1 == pytest.approx(math.cos(0.3), abs=1e-15)
    assert d2 == pytest.approx(-math.sin(0.3), abs=1e-15)
    with pytest.raises(fracvx.ParseError):
        fracvx.parse("t +")
    with pytest.raises(fracvx.DomainError):
        fracvx.parse("ln(t)")(0.0)


def test_exponent_validation():
    e = fracvx.make_exponent("0.5 + 0.2*t", 1.0)
    assert e.regime == "interior"
    assert e.at_zero == pytest.approx(0.5)
    assert e(1.0) == pytest.approx(0.7)
    assert e.horizon == 1.0

    touching = fracvx.make_exponent("1 - t^2/2", 1.0)
    assert touching.regime == "touches-one-at-zero"

    with pytest.raises(fracvx.RangeViolation):
        fracvx.make_exponent("1.2", 1.0)


def test_graded_mesh():
    mesh = fracvx.graded_mesh(1.0, 8, 2.0)
    assert mesh.N == 8
    assert len(mesh.nodes) == 9
    assert mesh.nodes[0] == 0.0
    assert mesh.nodes[-1] == 1.0
    assert mesh.nodes[4] == pytest.approx(0.25)


def test_forward_evaluation_matches_closed_forms():
    e = fracvx.make_exponent("0.5", 1.0)
    t = 0.81
    assert fracvx.eval_forward("abel-left", e, "1", t) == pytest.approx(
        2.0 * math.sqrt(t), abs=1e-9
    )
    assert fracvx.eval_forward("rl-left", e, "1", t) == pytest.approx(
        2.0 * math.sqrt(t) / math.sqrt(math.pi), abs=1e-9
    )
    # Same operator applied to a plain python callable.
    assert fracvx.eval_forward("abel-left", e, lambda s: 1.0, t) == pytest.approx(
        2.0 * math.sqrt(t), abs=1e-9
    )


def test_solve_abel_recovers_known_solution():
    e = fracvx.make_exponent("0.5", 1.0)
    grid = fracvx.solve_abel(e, "2 * t^0.5", N=128, r=4.0)
    err = max(abs(u - 1.0) for u in grid.u[1:])
    assert err <= 1e-4


def test_solve_abel_singular_diagnostics():
    e = fracvx.make_exponent("0.6 - 0.1*t", 1.0)
    grid = fracvx.solve_abel(e, "1 + t", N=96)
    assert math.isinf(grid.u[0])
    assert grid.weighted_u[0] > 0.0
    assert grid.alpha_at_zero == pytest.approx(0.6)
    assert grid.fitted_exponent == pytest.approx(-0.4, abs=0.1)
    fit = fracvx.fit_singularity_exponent(grid)
    assert fit.exponent_p == grid.fitted_exponent


def test_solve_fde_rejects_interior_nonzero_u0():
    e = fracvx.make_exponent("0.5", 1.0)
    with pytest.raises(fracvx.IllPosedError):
        fracvx.solve_fde(e, "1", u0=0.5, N=16)


def test_solve_fde_touching_regime():
    e = fracvx.make_exponent("1 - t^2/2", 1.0)
    grid = fracvx.solve_fde(e, lambda t: 1.0, u0=2.0, N=64)
    assert grid.u[0] == 2.0
    assert fracvx.extrapolate_to_zero(grid) == pytest.approx(2.0, abs=1e-2)
    assert grid.u[-1] > 2.0


def test_compose_residual_small_on_both_routes():
    e = fracvx.make_exponent("0.5 + 0.2*t", 1.0)
    for route in ("left", "right"):
        report = fracvx.compose_residual(e, "1 + t^2", N=32, route=route)
        assert report.max_residual < 1e-2
        assert len(report.nodes) == len(report.lhs) == len(report.rhs)


def test_verify_composition_checks_pass():
    e = fracvx.make_exponent("0.4", 1.0)
    checks = fracvx.verify_composition(e, "1 + t^2", N=32, tolerance=1e-6)
    names = {c.name for c in checks}
    assert "composition-residual-left-route" in names
    assert all(c.passed for c in checks)


def test_csv_round_trip(tmp_path):
    e = fracvx.make_exponent("0.5", 1.0)
    grid = fracvx.solve_abel(e, "2 * t^0.5", N=8, r=2.0)
    path = tmp_path / "out.csv"
    grid.write_csv(str(path))
    data = path.read_bytes()
    assert b"\r" not in data
    lines = data.decode().splitlines()
    assert lines[0] == "t,u,weighted_u,du_estimate"
    assert len(lines) == 10
