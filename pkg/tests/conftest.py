import os
import random
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rationals(lo=-40, hi=40, max_den=9):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def generic_points(rng, sizes, c=Fraction(1)):
    """Random per-color rationals with no resonant differences."""
    from bsk.kinematics import BetheCollection
    while True:
        pts = tuple(tuple(Fraction(rng.randint(-400, 400), rng.randint(1, 9)) for _ in range(r))
                    for r in sizes)
        try:
            if BetheCollection.of(pts, c).is_generic():
                return pts
        except ValueError:  # repeated point
            continue


def generic_pair(rng, sizes, c=Fraction(1)):
    both = generic_points(rng, [2 * r for r in sizes], c)
    return (tuple(p[: len(p) // 2] for p in both), tuple(p[len(p) // 2:] for p in both))


def seeded(seed):
    return random.Random(seed)
