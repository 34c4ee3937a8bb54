import numpy as np
import pytest

from multicentric import ConfigError, Disc, DomainSpec, FactorDomain, MonicPolynomial
from multicentric.verification import CHECKS, point_bound, run_suite


def unit_domain():
    f = FactorDomain.from_discs([Disc(0, 1)])
    return DomainSpec(f, f)


@pytest.mark.parametrize("roots1, roots2", [([0, 1], [-1, 1j, 1]), ([2j], [0.5, -0.5])])
def test_suite_passes(roots1, roots2):
    results = run_suite(MonicPolynomial.from_roots(roots1), MonicPolynomial.from_roots(roots2),
                        unit_domain(), seed=11)
    assert [r.name for r in results] == list(CHECKS)
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_same_seed_same_errors():
    p1, p2 = MonicPolynomial.from_roots([0, 1]), MonicPolynomial.from_roots([1, 2])
    a = run_suite(p1, p2, unit_domain(), seed=5)
    b = run_suite(p1, p2, unit_domain(), seed=5)
    assert [r.max_error for r in a] == [r.max_error for r in b]


def test_injection_and_overrides():
    p1, p2 = MonicPolynomial.from_roots([0, 1]), MonicPolynomial.from_roots([1, 2])
    results = run_suite(p1, p2, unit_domain(), inject="homomorphism",
                        tolerances={"commutativity": 1e-3})
    by_name = {r.name: r for r in results}
    assert not by_name["homomorphism"].passed
    assert by_name["commutativity"].tolerance == 1e-3
    assert sum(not r.passed for r in results) == 1
    with pytest.raises(ConfigError):
        run_suite(p1, p2, unit_domain(), inject="missing")


def test_point_bound_at_origin():
    p1, p2 = MonicPolynomial.from_roots([0, 1]), MonicPolynomial.from_roots([1, 2, 3])
    assert point_bound(p1, p2, 0, 0) == 1
    assert point_bound(p1, p2, 1, 1) > 1
    assert np.isfinite(point_bound(p1, p2, 10, 10j))
