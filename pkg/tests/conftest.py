import random

import pytest
from gmpy2 import mpq


@pytest.fixture
def rng():
    return random.Random(1234)


def rand_mpq(rng, num_max=50, den_max=50, allow_zero=True):
    p = rng.randint(-num_max, num_max)
    if not allow_zero and p == 0:
        p = 1
    return mpq(p, rng.randint(1, den_max))


def rand_terms(rng, nvars, nterms, max_expo=4, num_max=50):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_expo) for _ in range(nvars))
        terms[e] = rand_mpq(rng, num_max=num_max)
    return {e: c for e, c in terms.items() if c}
