import numpy as np
import pytest

from maxmodset import (
    AnnulusWindow,
    Polynomial,
    detect_discontinuities,
    detect_singletons,
    global_discontinuities,
    global_max_mod_set,
    max_modulus,
    reciprocal,
    scan_circles,
    trace,
    write_csv,
)
from conftest import random_polynomial


class TestAnnulusWindow:
    def test_validation(self):
        with pytest.raises(ValueError):
            AnnulusWindow(1.0, 0.5, 10)
        with pytest.raises(ValueError):
            AnnulusWindow(0.0, 1.0, 10)
        with pytest.raises(ValueError):
            AnnulusWindow(0.5, 1.0, 1)

    def test_auto_spacing(self):
        assert AnnulusWindow(0.5, 2.0, 10).effective_spacing == "uniform"
        assert AnnulusWindow(0.001, 1.0, 10).effective_spacing == "geometric"

    def test_radii_cover_endpoints(self):
        w = AnnulusWindow(0.5, 2.0, 7)
        r = w.radii()
        assert r[0] == 0.5 and r[-1] == 2.0 and len(r) == 7


class TestTraceSimple:
    def test_z2_plus_1_two_rays(self):
        s = trace(Polynomial([1, 0, 1]), AnnulusWindow(0.5, 2.0, 100))
        assert len(s.components) == 2
        for comp in s.components:
            assert comp.censored_inner and comp.censored_outer
            assert not comp.is_singleton
        angles = sorted(abs(c.angles[0]) for c in s.components)
        assert angles[0] == pytest.approx(0.0, abs=1e-9)
        assert angles[1] == pytest.approx(np.pi, abs=1e-9)
        assert detect_discontinuities(s) == []
        assert detect_singletons(s) == []

    def test_monomial_rejected(self):
        with pytest.raises(ValueError):
            trace(Polynomial([0, 0, 1.0]), AnnulusWindow(0.5, 2.0, 10))

    def test_points_sorted_by_radius(self):
        s = trace(Polynomial([1, 0, 1]), AnnulusWindow(0.5, 2.0, 50))
        for comp in s.components:
            assert np.all(np.diff(comp.radii) >= 0)

    def test_conservation_of_maximizer_points(self):
        # every maximizer emitted at a sampled radius lands in exactly
        # one component
        p = Polynomial([1.0, 0.5, 0, 1.0])
        s = trace(p, AnnulusWindow(0.5, 2.0, 60))
        all_radii = np.concatenate([c.radii for c in s.components])
        all_angles = np.concatenate([c.angles for c in s.components])
        for r in np.unique(all_radii):
            scan = scan_circles(p, [r])[0]
            here = all_angles[all_radii == r]
            assert len(here) == len(scan.angles)
            assert len(np.unique(np.round(here, 9))) == len(here)


class TestFigureDiscontinuities:
    def test_prescribed_inner_endpoints(self, figure_p):
        s = trace(figure_p, AnnulusWindow(0.25, 4.0, 600))
        moduli = [d.modulus for d in detect_discontinuities(s)]
        for target in (0.5, 1.0, 2.0):
            assert min(abs(m - target) for m in moduli) <= 1e-3
        assert detect_singletons(s) == []

    def test_axis_component_layout(self, figure_p):
        s = trace(figure_p, AnnulusWindow(0.25, 4.0, 600))
        spans = {}
        for comp in s.components:
            if abs(comp.angles[0]) <= 1e-6:
                spans.setdefault("pos", []).append((comp.min_modulus, comp.max_modulus))
            elif abs(abs(comp.angles[0]) - np.pi) <= 1e-6:
                spans.setdefault("neg", []).append((comp.min_modulus, comp.max_modulus))
        # negative axis covers [0.25, 0.5] and [1, 2]; positive covers
        # [0.5, 1] and an arc from 2 (the latter ends where the
        # maximizers leave the axis, as the zoomed-out figure shows)
        neg = sorted(spans["neg"])
        assert neg[0][0] == pytest.approx(0.25)
        assert neg[0][1] == pytest.approx(0.5, abs=1e-3)
        assert neg[1] == pytest.approx((1.0, 2.0), abs=1e-3)
        pos = sorted(spans["pos"])
        assert pos[0] == pytest.approx((0.5, 1.0), abs=1e-3)
        assert pos[1][0] == pytest.approx(2.0, abs=1e-3)

    def test_inner_censoring(self, figure_p):
        s = trace(figure_p, AnnulusWindow(0.25, 4.0, 400))
        inner = [c for c in s.components if c.min_modulus <= 0.251]
        assert len(inner) == 1 and inner[0].censored_inner


class TestFigureSingletons:
    def test_exactly_two(self, figure_ptilde):
        s = trace(figure_ptilde, AnnulusWindow(0.25, 2.0, 600))
        singles = detect_singletons(s)
        assert len(singles) == 2
        (r1, t1), (r2, t2) = sorted(singles)
        assert r1 == pytest.approx(0.5, abs=1e-3)
        assert r2 == pytest.approx(1.0, abs=1e-3)
        assert abs(t1) <= 1e-6 and abs(t2) <= 1e-6

    def test_singletons_are_discontinuities(self, figure_ptilde):
        s = trace(figure_ptilde, AnnulusWindow(0.25, 2.0, 600))
        disc_moduli = [d.modulus for d in detect_discontinuities(s)]
        for r, _ in detect_singletons(s):
            assert min(abs(m - r) for m in disc_moduli) <= 1e-12

    def test_singleton_invariant(self, figure_ptilde):
        s = trace(figure_ptilde, AnnulusWindow(0.25, 2.0, 400))
        for comp in s.components:
            if comp.is_singleton:
                assert len(comp.radii) == 1
                assert not comp.censored_inner and not comp.censored_outer


class TestReciprocalDuality:
    def test_traced_maximizers_map_through_inversion(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            p = random_polynomial(rng, 6, real=True)
            q = reciprocal(p)
            s = trace(q, AnnulusWindow(0.5, 2.0, 60))
            for comp in s.components:
                for r, th, v in zip(comp.radii[::7], comp.angles[::7], comp.values[::7]):
                    r_p = 1.0 / r
                    v_p = v * r_p**p.degree
                    m = max_modulus(p, r_p)
                    assert v_p >= m * (1 - 1e-8)


class TestGlobalDiscontinuities:
    def test_z2_plus_1_empty(self):
        assert global_discontinuities(Polynomial([1, 0, 1]), steps=400) == []

    def test_figure_p_contains_targets(self, figure_p):
        discs = global_discontinuities(figure_p, steps=700)
        moduli = [d.modulus for d in discs]
        for target in (0.5, 1.0, 2.0):
            assert min(abs(m - target) for m in moduli) <= 1e-2
        assert len(moduli) < 40

    def test_count_stable_under_refinement(self):
        rng = np.random.default_rng(3)
        p = random_polynomial(rng, 5, real=True)
        n1 = len(global_discontinuities(p, steps=600))
        n2 = len(global_discontinuities(p, steps=1200))
        assert n1 == n2

    def test_ptilde_singletons_survive_merge(self, figure_ptilde):
        discs = global_discontinuities(figure_ptilde, steps=700)
        moduli = [d.modulus for d in discs]
        assert min(abs(m - 0.5) for m in moduli) <= 1e-3
        assert min(abs(m - 1.0) for m in moduli) <= 1e-3


class TestCsv:
    def test_header_and_determinism(self, tmp_path):
        p = Polynomial([1, 0, 1])
        s = trace(p, AnnulusWindow(0.5, 2.0, 30))
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(s, f1)
        write_csv(s, f2)
        b1, b2 = f1.read_bytes(), f2.read_bytes()
        assert b1 == b2
        lines = b1.decode().splitlines()
        assert lines[0] == (
            "component_id,r,theta,x,y,modulus_value,"
            "censored_inner,censored_outer,is_singleton"
        )
        assert len(lines) == 1 + sum(len(c.radii) for c in s.components)

    def test_round_trip_values(self, tmp_path):
        import csv as csvmod

        p = Polynomial([1.0, 0.5, 1.0])
        s = trace(p, AnnulusWindow(0.5, 2.0, 25))
        path = tmp_path / "t.csv"
        write_csv(s, path)
        with open(path) as fh:
            rows = list(csvmod.DictReader(fh))
        comp0 = s.components[0]
        first = [row for row in rows if row["component_id"] == "0"]
        assert float(first[0]["r"]) == comp0.radii[0]
        assert float(first[0]["theta"]) == comp0.angles[0]
        x = float(first[0]["x"])
        assert x == pytest.approx(comp0.radii[0] * np.cos(comp0.angles[0]))
