import pytest

from maxmodset.verify import (
    run_all,
    suite_argmax_oracle,
    suite_axis_trichotomy,
    suite_profile_identity,
    suite_refinement_stability,
    suite_reciprocal_duality,
)


def test_each_suite_passes_at_default_seed():
    for suite in (
        suite_profile_identity,
        suite_argmax_oracle,
        suite_axis_trichotomy,
        suite_reciprocal_duality,
        suite_refinement_stability,
    ):
        res = suite(0)
        assert res.passed, f"{res.name}: {res.detail}"


@pytest.mark.parametrize("seed", range(10))
def test_seed_independence(seed):
    for res in run_all(seed=seed):
        assert res.passed, f"seed {seed}, {res.name}: {res.detail}"


def test_corrupted_tolerance_fails():
    results = run_all(seed=0, corrupt_tolerance=True)
    assert any(not r.passed for r in results)
    # only the deliberately corrupted suite fails
    failing = [r.name for r in results if not r.passed]
    assert failing == ["profile-identity"]
