import random

import pytest

from ipsforge import gf
from ipsforge.mvpoly import Poly


@pytest.fixture(scope="session")
def f2():
    return gf.field_spec(2, 1)


@pytest.fixture(scope="session")
def f3():
    return gf.field_spec(3, 1)


@pytest.fixture(scope="session")
def f4():
    return gf.field_spec(2, 2)


@pytest.fixture(scope="session")
def f9():
    return gf.field_spec(3, 2)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def rand_poly(n, fld, rng, nterms=6, maxdeg=3):
    t = Poly.zero(n, fld)
    for _ in range(nterms):
        e = tuple(rng.randrange(maxdeg + 1) for _ in range(n))
        t = t + Poly.monomial(n, fld, e, fld.sample(rng))
    return t
