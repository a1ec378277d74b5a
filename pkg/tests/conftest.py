import itertools
from math import gcd

import pytest

from thomae import CurveSpec


def curve_battery(max_n, max_points, min_points=3):
    """Every curve with 2 <= n <= max_n and an exponent multiset of the
    allowed size: exponents prime to n, summing to 0 mod n."""
    out = []
    for n in range(2, max_n + 1):
        coprime = [a for a in range(1, n) if gcd(a, n) == 1]
        for npts in range(min_points, max_points + 1):
            for combo in itertools.combinations_with_replacement(coprime, npts):
                if sum(combo) % n == 0:
                    out.append(CurveSpec.from_alphas(n, list(combo)))
    return out


@pytest.fixture(scope="session")
def small_battery():
    return curve_battery(6, 4)


@pytest.fixture(scope="session")
def full_battery():
    return curve_battery(8, 5)
