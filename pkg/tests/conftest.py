import random

import pytest

from hochwerk import catalog
from hochwerk.algebra import change_basis as alg_change_basis
from hochwerk.bimodule import Bimodule, change_basis, direct_sum, dual, pullback
from hochwerk.linalg import RatMatrix, rank


def random_invertible(n, rng, spread=2):
    while True:
        rows = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        m = RatMatrix.from_rows(rows, n)
        if rank(m) == n:
            return m


def characters(alg):
    """Algebra maps alg -> Q as lists of values on the basis, for the small catalog."""
    name = alg.name
    if name == "Q":
        return [[1]]
    if name and name.startswith("Q^"):
        n = alg.dim
        return [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    if name == "UT2":
        return [[1, 0, 0], [0, 0, 1]]
    if name and name.startswith("Q[x]"):
        return [[1] + [0] * (alg.dim - 1)]
    return []


def char_bimodule(alg, left, right):
    """1-dimensional bimodule with a v b = chi_left(a) chi_right(b) v."""
    lm = [RatMatrix.from_rows([[c]], 1) for c in left]
    rm = [RatMatrix.from_rows([[c]], 1) for c in right]
    return Bimodule(alg, alg, 1, lm, rm)


BASE_ALGEBRAS = [
    catalog.ground_field,
    lambda: catalog.diagonal(2),
    lambda: catalog.diagonal(3),
    catalog.dual_numbers,
    lambda: catalog.truncated_polynomial(3),
    lambda: catalog.upper_triangular(2),
]


def random_pair(rng, max_alg=3, max_mod=4):
    """A random valid (algebra, bimodule) pair, disguised by random changes of basis."""
    while True:
        alg = rng.choice(BASE_ALGEBRAS)()
        if alg.dim <= max_alg:
            break
    chars = characters(alg)
    pieces = []
    budget = max_mod
    while budget > 0:
        options = []
        if alg.dim <= budget:
            options += ["regular", "dual"]
        if chars:
            options.append("char")
        if not options:
            break
        kind = rng.choice(options)
        if kind == "regular":
            pieces.append(Bimodule.regular(alg))
        elif kind == "dual":
            pieces.append(dual(Bimodule.regular(alg)))
        else:
            pieces.append(char_bimodule(alg, rng.choice(chars), rng.choice(chars)))
        budget -= pieces[-1].dim
        if rng.random() < 0.5:
            break
    x = direct_sum(*pieces)
    p = random_invertible(alg.dim, rng)
    new = alg_change_basis(alg, p)
    x = pullback(x, new, p, new, p)
    x = change_basis(x, random_invertible(x.dim, rng))
    return new, x


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def t3():
    return catalog.upper_triangular(2)
