import numpy as np
import pytest

from maxmodset import (
    Certificate,
    ConstructionKind,
    ConstructionSpec,
    Polynomial,
    SignClass,
    alternating_odd_product,
    build,
    certify_a,
    default_annulus,
    evaluate,
    expected_maximizer_side,
    nonpositive_odd_product,
    trichotomy_check,
)


class TestDefaultAnnulus:
    def test_figure_targets(self):
        assert default_annulus([0.5, 1, 2]) == (0.25, 4.0)

    def test_single_target(self):
        assert default_annulus([1.0]) == (0.5, 2.0)

    def test_two_targets(self):
        assert default_annulus([0.5, 1.0]) == (0.25, 2.0)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            default_annulus([])


class TestCertifyA:
    def test_zero_odd_part_floor(self):
        cert = certify_a(Polynomial([0.0]), 0.5, 2.0)
        assert cert.K_bound == 0.0
        assert cert.beta1_bound == 0.0 and cert.beta2_bound == 0.0
        assert cert.a_cert == 1.0

    def test_margin_over_thresholds(self):
        cert = certify_a(alternating_odd_product([0.5, 1, 2]), 0.25, 4.0)
        base = max(cert.a_first, cert.a_station, cert.a_concave)
        assert cert.a_cert == pytest.approx(2.0 * base)
        assert cert.a_cert > cert.a_first
        assert cert.a_cert > cert.a_station
        assert cert.a_cert > cert.a_concave
        assert cert.alpha == pytest.approx(1 - np.cos(np.pi / 4))

    def test_k_bound_dominates_outer_circle(self):
        p_hat = alternating_odd_product([0.5, 1, 2])
        cert = certify_a(p_hat, 0.25, 4.0)
        th = np.linspace(-np.pi, np.pi, 2000)
        vals = np.abs(evaluate(p_hat, 4.0 * np.exp(1j * th)))
        assert vals.max() <= cert.K_bound * (1 + 1e-12)

    def test_validation(self):
        p_hat = alternating_odd_product([1.0])
        with pytest.raises(ValueError):
            certify_a(p_hat, 2.0, 0.5)
        with pytest.raises(ValueError):
            certify_a(p_hat, 0.5, 2.0, theta0=np.pi / 3)
        with pytest.raises(ValueError):
            certify_a(Polynomial([1j, 0, 1.0]), 0.5, 2.0)

    def test_certified_trichotomy_end_to_end(self):
        p_hat = alternating_odd_product([1.0])
        R, Rp = default_annulus([1.0])
        cert = certify_a(p_hat, R, Rp)
        for scale in (1.0, 10.0):
            a = scale * cert.a_cert
            coeffs = np.zeros(len(p_hat.coeffs))
            coeffs[0] += a
            coeffs[2] += a
            p = Polynomial(coeffs + p_hat.coeffs.real)
            radii = np.linspace(R, Rp, 160)
            report = trichotomy_check(p, p_hat, radii)
            assert report.ok, report.failures[:3]
            assert report.max_angle_err <= 1e-6


class TestBuild:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_degree_bookkeeping(self, n):
        targets = tuple(0.5 + k for k in range(n))
        p1, _ = build(ConstructionSpec(targets, ConstructionKind.DISCONTINUITIES))
        assert p1.degree == 2 * n + 1
        p2, _ = build(ConstructionSpec(targets, ConstructionKind.SINGLETONS))
        assert p2.degree == 4 * n + 1

    def test_certificate_attached(self):
        p, cert = build(ConstructionSpec((0.5, 1.0), ConstructionKind.DISCONTINUITIES))
        assert isinstance(cert, Certificate)
        assert cert.R == 0.25 and cert.R_prime == 2.0
        assert p.coeffs[0].real == pytest.approx(cert.a_cert)
        assert p.coeffs[2].real == pytest.approx(cert.a_cert + 0.25 * 1.0, rel=1)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            ConstructionSpec((1.0, 1.0), ConstructionKind.DISCONTINUITIES)
        with pytest.raises(ValueError):
            ConstructionSpec((-1.0,), ConstructionKind.SINGLETONS)
        with pytest.raises(ValueError):
            ConstructionSpec((1.0,), ConstructionKind.SINGLETONS, theta0=1.0)


class TestExpectedMaximizerSide:
    def test_alternating_signs(self):
        p_hat = alternating_odd_product([0.5, 1, 2])
        assert expected_maximizer_side(p_hat, 0.75) is SignClass.POSITIVE_AXIS
        assert expected_maximizer_side(p_hat, 0.3) is SignClass.NEGATIVE_AXIS

    def test_squared_always_negative(self):
        p_hat = nonpositive_odd_product([0.5, 1.0])
        assert expected_maximizer_side(p_hat, 0.7) is SignClass.NEGATIVE_AXIS

    def test_constructed_zero_gives_both(self):
        for p_hat in (alternating_odd_product([0.5, 1, 2]),
                      nonpositive_odd_product([0.5, 1.0])):
            assert expected_maximizer_side(p_hat, 1.0) is SignClass.BOTH

    def test_rejects_non_odd(self):
        with pytest.raises(ValueError):
            expected_maximizer_side(Polynomial([1.0, 0, 1.0]), 1.0)
        with pytest.raises(ValueError):
            expected_maximizer_side(Polynomial([0, 1j]), 1.0)


class TestTrichotomyCheck:
    def test_detects_wrong_sign(self):
        p_hat = alternating_odd_product([1.0])
        R, Rp = default_annulus([1.0])
        cert = certify_a(p_hat, R, Rp)
        coeffs = np.zeros(len(p_hat.coeffs))
        coeffs[0] += cert.a_cert
        coeffs[2] += cert.a_cert
        p = Polynomial(coeffs + p_hat.coeffs.real)
        flipped = Polynomial(-p_hat.coeffs)
        report = trichotomy_check(p, flipped, np.linspace(R, Rp, 40))
        assert not report.ok

    def test_first_claim_margin(self):
        # with the certified parameter the axis beats every angle in
        # [theta0, pi/2] outright, at every radius in the annulus
        p_hat = nonpositive_odd_product([0.5, 1.0])
        R, Rp = default_annulus([0.5, 1.0])
        cert = certify_a(p_hat, R, Rp)
        coeffs = np.zeros(len(p_hat.coeffs))
        coeffs[0] += cert.a_cert
        coeffs[2] += cert.a_cert
        p = Polynomial(coeffs + p_hat.coeffs.real)
        th = np.concatenate([np.linspace(cert.theta0, np.pi / 2, 50),
                             -np.linspace(cert.theta0, np.pi / 2, 50)])
        for r in np.linspace(R, Rp, 25):
            axis = abs(evaluate(p, complex(r)))
            off = np.abs(evaluate(p, r * np.exp(1j * th)))
            assert np.all(axis - off > 0)
