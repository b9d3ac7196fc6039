"""Mesh/belt propagation, gear ratios, cycles, and time integration."""

import math

import numpy as np
import pytest

from curvedrive.errors import (
    DisconnectedComponent,
    GeometryMismatch,
    InconsistentCycle,
    InvalidStep,
    MeshInvalid,
    NoPath,
)
from curvedrive.geometry import EUCLIDEAN, HYPERBOLOID, SPHERICAL, Circle, Point
from curvedrive.kinematics import AngleFunction, Gear, Pulley
from curvedrive.drivetrain import (
    Belt,
    DriveSpec,
    DrivetrainGraph,
    Edge,
    Mesh,
    gear_ratio,
    propagate,
    simulate,
    validate_mesh,
)
from curvedrive.oracle import belt_simulator, tooth_simulator


def hgear(s, n, center=None):
    return Gear(Circle(HYPERBOLOID, center, math.asinh(s)), teeth=n)


def hpulley(s):
    return Pulley(Circle(HYPERBOLOID, None, math.asinh(s)))


class TestValidateMesh:
    def test_hyperbolic_equal_pitch(self):
        report = validate_mesh(hgear(1.0, 10), hgear(2.0, 20))
        assert report.pitch_ok
        assert report.pitch_a == pytest.approx(2.0 * math.pi / 10.0)
        assert report.placement_residual is None

    def test_spherical_equal_pitch(self):
        g1 = Gear(Circle(SPHERICAL, None, math.pi / 6), teeth=10)
        g2 = Gear(Circle(SPHERICAL, None, math.pi / 2), teeth=20)
        assert validate_mesh(g1, g2).pitch_ok

    def test_pitch_mismatch(self):
        report = validate_mesh(hgear(1.0, 10), hgear(1.0, 11))
        assert not report.pitch_ok
        assert not report.meshable

    def test_placement_checked_when_centers_given(self):
        r1, r2 = 0.8, 0.5
        c1 = Point(HYPERBOLOID, (0.0, 0.0, 1.0))
        d = r1 + r2
        c2 = Point(HYPERBOLOID, (math.sinh(d), 0.0, math.cosh(d)))
        g1 = Gear(Circle(HYPERBOLOID, c1, r1), teeth=16)
        n2 = round(16 * math.sinh(r2) / math.sinh(r1))
        g2 = Gear(Circle(HYPERBOLOID, c2, r2), teeth=max(n2, 3))
        report = validate_mesh(g1, g2)
        assert report.placement_residual == pytest.approx(0.0, abs=1e-9)
        assert report.placement_ok

    def test_mixed_geometry(self):
        with pytest.raises(GeometryMismatch):
            validate_mesh(hgear(1.0, 10), Gear(Circle(EUCLIDEAN, None, 1.0), teeth=10))


class TestPropagate:
    def test_gear_pair_counter_rotation(self):
        g1 = Gear(Circle(EUCLIDEAN, None, 1.0), teeth=20)
        g2 = Gear(Circle(EUCLIDEAN, None, 3.0), teeth=60)
        graph = DrivetrainGraph(EUCLIDEAN, {"g1": g1, "g2": g2}, [Edge("g1", "g2", Mesh())])
        sol = propagate(graph, DriveSpec("g1", 3.0))
        # discrete tooth pushing gives the magnitude; mesh edges flip sign
        w1, w2 = tooth_simulator(20, 60, [5] * 12)
        from curvedrive.kinematics import gear_angular_velocity

        expected = gear_angular_velocity(w2, 12) / gear_angular_velocity(w1, 12) * 3.0
        assert sol.omega("g2") == pytest.approx(-expected, abs=1e-12)
        assert sol.omega("g2") == pytest.approx(-1.0, abs=1e-12)

    def test_hyperbolic_belt_transfer(self):
        graph = DrivetrainGraph(
            HYPERBOLOID,
            {"p1": hpulley(1.0), "p2": hpulley(2.0)},
            [Edge("p1", "p2", Belt())],
        )
        sol = propagate(graph, DriveSpec("p1", 2.0))
        sim = belt_simulator(
            Circle(HYPERBOLOID, None, math.asinh(1.0)),
            Circle(HYPERBOLOID, None, math.asinh(2.0)),
            AngleFunction.constant_rate(2.0),
            steps=16,
            duration=0.0016,
        )
        assert sol.omega("p2") == pytest.approx(sim.rate(0.0008), rel=1e-6)
        assert sol.omega("p2") == pytest.approx(1.0, rel=1e-12)

    def test_spherical_belt_transfer(self):
        p1 = Pulley(Circle(SPHERICAL, None, math.pi / 6))
        p2 = Pulley(Circle(SPHERICAL, None, math.pi / 2))
        graph = DrivetrainGraph(SPHERICAL, {"a": p1, "b": p2}, [Edge("a", "b", Belt())])
        assert propagate(graph, DriveSpec("a", 1.0)).omega("b") == pytest.approx(0.5, rel=1e-12)

    def test_crossed_belt_reverses(self):
        graph = DrivetrainGraph(
            EUCLIDEAN,
            {"a": Pulley(Circle(EUCLIDEAN, None, 1.0)), "b": Pulley(Circle(EUCLIDEAN, None, 2.0))},
            [Edge("a", "b", Belt(crossed=True))],
        )
        assert propagate(graph, DriveSpec("a", 4.0)).omega("b") == pytest.approx(-2.0)

    def test_mesh_law_signed(self):
        g1, g2 = hgear(1.0, 15), hgear(2.0, 30)
        graph = DrivetrainGraph(HYPERBOLOID, {"a": g1, "b": g2}, [Edge("a", "b", Mesh())])
        sol = propagate(graph, DriveSpec("a", 1.3))
        assert 15 * sol.omega("a") + 30 * sol.omega("b") == pytest.approx(0.0, abs=1e-12)

    def test_belt_law_all_t(self):
        graph = DrivetrainGraph(
            HYPERBOLOID,
            {"a": hpulley(0.7), "b": hpulley(1.9)},
            [Edge("a", "b", Belt())],
        )
        drive = DriveSpec("a", AngleFunction.polynomial([0.0, 1.0, -0.3]))
        sol = propagate(graph, drive)
        for t in np.linspace(0.0, 2.0, 9):
            lhs = 0.7 * sol.omega("a", t)
            rhs = 1.9 * sol.omega("b", t)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_mesh_between_pulleys_invalid(self):
        graph = DrivetrainGraph(
            EUCLIDEAN,
            {"a": Pulley(Circle(EUCLIDEAN, None, 1.0)), "b": Pulley(Circle(EUCLIDEAN, None, 1.0))},
            [Edge("a", "b", Mesh())],
        )
        with pytest.raises(MeshInvalid):
            propagate(graph, DriveSpec("a", 1.0))

    def test_pitch_mismatch_blocks(self):
        graph = DrivetrainGraph(
            HYPERBOLOID, {"a": hgear(1.0, 10), "b": hgear(1.0, 11)}, [Edge("a", "b", Mesh())]
        )
        with pytest.raises(MeshInvalid):
            propagate(graph, DriveSpec("a", 1.0))

    def test_disconnected(self):
        graph = DrivetrainGraph(
            EUCLIDEAN,
            {
                "a": Pulley(Circle(EUCLIDEAN, None, 1.0)),
                "b": Pulley(Circle(EUCLIDEAN, None, 1.0)),
                "c": Pulley(Circle(EUCLIDEAN, None, 1.0)),
            },
            [Edge("a", "b", Belt())],
        )
        with pytest.raises(DisconnectedComponent) as exc:
            propagate(graph, DriveSpec("a", 1.0))
        assert exc.value.unreached == ("c",)

    def test_inconsistent_three_cycle(self):
        nodes = {"a": hgear(1.0, 20), "b": hgear(2.0, 40), "c": hgear(1.5, 30)}
        graph = DrivetrainGraph(
            HYPERBOLOID,
            nodes,
            [Edge("a", "b", Mesh()), Edge("b", "c", Mesh()), Edge("c", "a", Mesh())],
        )
        with pytest.raises(InconsistentCycle):
            propagate(graph, DriveSpec("a", 1.0))

    def test_consistent_cycle_passes(self):
        # four-mesh cycle: an even number of sign flips with matched teeth
        nodes = {
            "a": hgear(1.0, 20),
            "b": hgear(2.0, 40),
            "c": hgear(1.0, 20),
            "d": hgear(2.0, 40),
        }
        edges = [
            Edge("a", "b", Mesh()),
            Edge("b", "c", Mesh()),
            Edge("c", "d", Mesh()),
            Edge("d", "a", Mesh()),
        ]
        sol = propagate(DrivetrainGraph(HYPERBOLOID, nodes, edges), DriveSpec("a", 2.0))
        assert sol.omega("c") == pytest.approx(2.0, abs=1e-12)
        assert max(c.residual for c in sol.cycle_residuals) < 1e-12

    def test_isometry_of_centers_changes_nothing(self):
        from curvedrive.geometry import Rotation, rotate

        c1 = Point(HYPERBOLOID, (0.3, 0.1, math.sqrt(1.0 + 0.09 + 0.01)))
        d = 1.4
        c2 = Point(HYPERBOLOID, (math.sinh(d), 0.0, math.cosh(d)))
        before = DrivetrainGraph(
            HYPERBOLOID,
            {"a": Gear(Circle(HYPERBOLOID, c1, 0.5), 10), "b": Gear(Circle(HYPERBOLOID, c2, 1.0), 21)},
            [Edge("a", "b", Belt())],
        )
        iso = Rotation(HYPERBOLOID, Point(HYPERBOLOID, (1.0, 1.0, math.sqrt(3.0))), 1.234)
        after = DrivetrainGraph(
            HYPERBOLOID,
            {
                "a": Gear(Circle(HYPERBOLOID, rotate(iso, c1), 0.5), 10),
                "b": Gear(Circle(HYPERBOLOID, rotate(iso, c2), 1.0), 21),
            },
            [Edge("a", "b", Belt())],
        )
        sa = propagate(before, DriveSpec("a", 1.7))
        sb = propagate(after, DriveSpec("a", 1.7))
        assert sa.ratios == sb.ratios


class TestGearRatio:
    def test_single_mesh_equal_teeth(self):
        graph = DrivetrainGraph(
            HYPERBOLOID, {"a": hgear(1.0, 12), "b": hgear(1.0, 12)}, [Edge("a", "b", Mesh())]
        )
        assert gear_ratio(graph, "a", "b") == pytest.approx(-1.0)

    def test_two_mesh_chain(self):
        nodes = {"a": hgear(1.0, 20), "b": hgear(2.0, 40), "c": hgear(1.0, 20)}
        graph = DrivetrainGraph(
            HYPERBOLOID, nodes, [Edge("a", "b", Mesh()), Edge("b", "c", Mesh())]
        )
        assert gear_ratio(graph, "a", "c") == pytest.approx(1.0)

    def test_no_path(self):
        graph = DrivetrainGraph(
            EUCLIDEAN,
            {"a": Pulley(Circle(EUCLIDEAN, None, 1.0)), "b": Pulley(Circle(EUCLIDEAN, None, 1.0))},
            [],
        )
        with pytest.raises(NoPath):
            gear_ratio(graph, "a", "b")


class TestSimulate:
    def _pair(self):
        g1 = Gear(Circle(EUCLIDEAN, None, 1.0), teeth=20)
        g2 = Gear(Circle(EUCLIDEAN, None, 2.0), teeth=40)
        return DrivetrainGraph(EUCLIDEAN, {"g1": g1, "g2": g2}, [Edge("g1", "g2", Mesh())])

    def test_constant_full_turn(self):
        res = simulate(self._pair(), DriveSpec("g1", 2.0 * math.pi), 1.0, 0.25)
        assert len(res.times) == 5
        assert res.angles["g1"][-1] == pytest.approx(2.0 * math.pi)

    def test_mesh_law_integrated(self):
        res = simulate(self._pair(), DriveSpec("g1", 1.3), 2.0, 0.1)
        lhs = 20 * res.angles["g1"] + 40 * res.angles["g2"]
        assert np.max(np.abs(lhs)) < 1e-12

    def test_time_varying_antiderivative(self):
        # drive rate cos(t) must integrate to sin(t) at 1e-9
        h = 2e-5
        ts = np.arange(0.0, 1.0 + h / 2, h)
        drive = DriveSpec("g1", AngleFunction.sampled(np.sin(ts), h))
        res = simulate(self._pair(), drive, 1.0, h)
        assert abs(res.angles["g1"][-1] - math.sin(1.0)) < 1e-9

    def test_zero_duration(self):
        res = simulate(self._pair(), DriveSpec("g1", 1.0), 0.0, 0.25)
        assert len(res.times) == 1
        assert res.angles["g1"][0] == 0.0

    def test_bad_step(self):
        with pytest.raises(InvalidStep):
            simulate(self._pair(), DriveSpec("g1", 1.0), 1.0, 0.0)


class TestDegeneration:
    def test_small_radius_limit_matches_euclidean(self):
        eps = 1e-3
        rng = np.random.default_rng(53)
        for _ in range(20):
            r1, r2 = rng.uniform(0.5, 2.0, 2)
            euclid = r1 / r2
            graph_h = DrivetrainGraph(
                HYPERBOLOID,
                {
                    "a": Pulley(Circle(HYPERBOLOID, None, eps * r1)),
                    "b": Pulley(Circle(HYPERBOLOID, None, eps * r2)),
                },
                [Edge("a", "b", Belt())],
            )
            graph_s = DrivetrainGraph(
                SPHERICAL,
                {
                    "a": Pulley(Circle(SPHERICAL, None, eps * r1)),
                    "b": Pulley(Circle(SPHERICAL, None, eps * r2)),
                },
                [Edge("a", "b", Belt())],
            )
            rh = propagate(graph_h, DriveSpec("a", 1.0)).omega("b")
            rs = propagate(graph_s, DriveSpec("a", 1.0)).omega("b")
            assert rh == pytest.approx(euclid, rel=5e-6)
            assert rs == pytest.approx(euclid, rel=5e-6)
